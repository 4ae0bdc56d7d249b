#pragma once

#include <vector>

#include <Eigen/Dense>

#include "poldm/design_spec.hpp"
#include "poldm/modulation.hpp"

namespace poldm {

// Stacked steering vectors, one column per (direction, polarisation) sample.
// Columns run over all directions under pol1, then all directions under pol2,
// matching the TargetSet entry order.
struct SteeringMatrices {
    Eigen::MatrixXcd mainlobe;  // 2N x 2r
    Eigen::MatrixXcd sidelobe;  // 2N x 2(R - r)
};

SteeringMatrices assemble_matrices(const DesignSpec& spec);

// G = S_sl * S_sl^H + diagonal_loading * I. Hermitian positive semidefinite;
// positive definite when loading > 0 or the sidelobe columns span all rows.
Eigen::MatrixXcd gram(const Eigen::MatrixXcd& sidelobe, double diagonal_loading = 0.0);

// Shared per-design factorizations; const methods are safe to call from
// multiple threads.
class BankSolver {
public:
    BankSolver(SteeringMatrices matrices, double diagonal_loading);

    // Closed-form equality-constrained least-squares weights for one target
    // set: minimizes the sidelobe response mismatch subject to exact mainlobe
    // responses, via two Hermitian solves instead of explicit inverses.
    Eigen::VectorXcd solve(const TargetSet& targets) const;

    const SteeringMatrices& matrices() const { return matrices_; }
    double diagonal_loading() const { return diagonal_loading_; }

private:
    SteeringMatrices matrices_;
    double diagonal_loading_;
    Eigen::LLT<Eigen::MatrixXcd> gram_llt_;          // factor of G
    Eigen::MatrixXcd gram_inv_mainlobe_;             // G^-1 * S_ml
    Eigen::LLT<Eigen::MatrixXcd> constraint_llt_;    // factor of S_ml^H * G^-1 * S_ml
};

// One-shot wrapper around BankSolver for a single target set.
Eigen::VectorXcd solve_weights(const SteeringMatrices& matrices, const TargetSet& targets,
                               double diagonal_loading = 0.0);

// The bank of order^2 weight vectors, indexed by composite symbol, plus the
// achieved sidelobe residual norm for each.
struct WeightSet {
    std::vector<Eigen::VectorXcd> weights;
    std::vector<double> objective_values;
};

// Builds targets and solves weights for every composite symbol. The parallel
// variant distributes symbols across OpenMP threads and produces bit-identical
// results to the serial reference.
WeightSet synthesize_bank(const DesignSpec& spec);
WeightSet synthesize_bank_serial(const DesignSpec& spec);

// Diagnostics -----------------------------------------------------------------

// max_k |w^H s_ml_k - target_k|
double constraint_residual(const Eigen::VectorXcd& weights, const SteeringMatrices& matrices,
                           const TargetSet& targets);

// ||p_sl - w^H S_sl||_2
double sidelobe_objective(const Eigen::VectorXcd& weights, const SteeringMatrices& matrices,
                          const TargetSet& targets);

// Norm of the objective gradient projected onto the constraint null space;
// near zero exactly when the weights are stationary for the constrained problem.
double projected_gradient_norm(const Eigen::VectorXcd& weights, const SteeringMatrices& matrices,
                               const TargetSet& targets, double diagonal_loading = 0.0);

// Largest constraint residual across all symbols of a bank.
double max_constraint_residual(const WeightSet& bank, const DesignSpec& spec);

}  // namespace poldm
