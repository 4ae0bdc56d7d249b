#pragma once

#include <stdexcept>
#include <string>

namespace poldm {

// A Hermitian factorization failed because the matrix is (numerically) singular.
struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& message) : std::runtime_error(message) {}
};

// The mainlobe steering columns are linearly dependent, so the equality
// constraints cannot be enforced independently.
struct DegenerateConstraintError : std::runtime_error {
    explicit DegenerateConstraintError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace poldm
