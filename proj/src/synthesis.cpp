#include "poldm/synthesis.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "poldm/errors.hpp"

namespace poldm {

namespace {

// Below this reciprocal-condition estimate a factorization is treated as
// numerically singular rather than merely ill-conditioned.
constexpr double kRcondFloor = 1e-13;

std::string loading_hint(const Eigen::MatrixXcd& g) {
    const double trace = g.real().trace();
    if (trace > 0.0)
        return "; retry with diagonal_loading around " +
               std::to_string(1e-10 * trace / static_cast<double>(g.rows()));
    return "; retry with positive diagonal_loading";
}

void check_target_sizes(const SteeringMatrices& matrices, const TargetSet& targets) {
    if (targets.mainlobe.size() != matrices.mainlobe.cols() ||
        targets.sidelobe.size() != matrices.sidelobe.cols())
        throw std::invalid_argument("target vector lengths do not match steering matrix columns");
}

}  // namespace

SteeringMatrices assemble_matrices(const DesignSpec& spec) {
    spec.validate();

    const auto rows = static_cast<Eigen::Index>(spec.weight_length());
    const auto mainlobe_count = static_cast<Eigen::Index>(spec.mainlobe_dirs.size());
    const auto sidelobe_count = static_cast<Eigen::Index>(spec.sidelobe_dirs.size());

    SteeringMatrices matrices;
    matrices.mainlobe.resize(rows, 2 * mainlobe_count);
    matrices.sidelobe.resize(rows, 2 * sidelobe_count);

    const PolarisationState pols[2] = {spec.pol1, spec.pol2};
    for (int channel = 0; channel < 2; ++channel) {
        for (Eigen::Index d = 0; d < mainlobe_count; ++d)
            matrices.mainlobe.col(channel * mainlobe_count + d) =
                full_steering(spec.geometry, spec.mainlobe_dirs[static_cast<std::size_t>(d)],
                              pols[channel]);
        for (Eigen::Index d = 0; d < sidelobe_count; ++d)
            matrices.sidelobe.col(channel * sidelobe_count + d) =
                full_steering(spec.geometry, spec.sidelobe_dirs[static_cast<std::size_t>(d)],
                              pols[channel]);
    }
    return matrices;
}

Eigen::MatrixXcd gram(const Eigen::MatrixXcd& sidelobe, double diagonal_loading) {
    Eigen::MatrixXcd g = sidelobe * sidelobe.adjoint();
    // Rounding can leave the product slightly non-Hermitian.
    g = 0.5 * (g + g.adjoint()).eval();
    if (diagonal_loading != 0.0)
        g.diagonal().array() += diagonal_loading;
    return g;
}

BankSolver::BankSolver(SteeringMatrices matrices, double diagonal_loading)
    : matrices_(std::move(matrices)), diagonal_loading_(diagonal_loading) {
    if (matrices_.mainlobe.cols() == 0)
        throw std::invalid_argument("mainlobe grid must not be empty");
    if (matrices_.mainlobe.rows() != matrices_.sidelobe.rows())
        throw std::invalid_argument("steering matrices disagree on weight length");

    const Eigen::MatrixXcd g = gram(matrices_.sidelobe, diagonal_loading_);
    gram_llt_.compute(g);
    if (gram_llt_.info() != Eigen::Success || !(gram_llt_.rcond() > kRcondFloor))
        throw SingularMatrixError(
            "Cholesky factorization of the sidelobe gram matrix failed; the sidelobe "
            "steering columns do not span the weight space" + loading_hint(g));

    gram_inv_mainlobe_ = gram_llt_.solve(matrices_.mainlobe);
    Eigen::MatrixXcd constraint = matrices_.mainlobe.adjoint() * gram_inv_mainlobe_;
    constraint = 0.5 * (constraint + constraint.adjoint()).eval();
    constraint_llt_.compute(constraint);
    if (constraint_llt_.info() != Eigen::Success || !(constraint_llt_.rcond() > kRcondFloor))
        throw DegenerateConstraintError(
            "Cholesky factorization of the reduced mainlobe matrix failed; the mainlobe "
            "steering columns are linearly dependent");
}

Eigen::VectorXcd BankSolver::solve(const TargetSet& targets) const {
    check_target_sizes(matrices_, targets);

    // w = G^-1 (S_sl p_sl^H - S_ml lambda) with lambda chosen so that the
    // mainlobe constraints hold exactly.
    const Eigen::VectorXcd sidelobe_rhs = matrices_.sidelobe * targets.sidelobe.conjugate();
    const Eigen::VectorXcd unconstrained = gram_llt_.solve(sidelobe_rhs);
    const Eigen::VectorXcd gap =
        matrices_.mainlobe.adjoint() * unconstrained - targets.mainlobe.conjugate();
    const Eigen::VectorXcd multipliers = constraint_llt_.solve(gap);
    return unconstrained - gram_inv_mainlobe_ * multipliers;
}

Eigen::VectorXcd solve_weights(const SteeringMatrices& matrices, const TargetSet& targets,
                               double diagonal_loading) {
    return BankSolver(matrices, diagonal_loading).solve(targets);
}

namespace {

WeightSet synthesize_bank_impl(const DesignSpec& spec, bool parallel) {
    spec.validate();
    const BankSolver solver(assemble_matrices(spec), spec.diagonal_loading);
    const int count = spec.symbol_count();

    WeightSet bank;
    bank.weights.resize(static_cast<std::size_t>(count));
    bank.objective_values.resize(static_cast<std::size_t>(count));

    enum class FailureKind { none, singular, degenerate, other };
    std::vector<FailureKind> kinds(static_cast<std::size_t>(count), FailureKind::none);
    std::vector<std::string> messages(static_cast<std::size_t>(count));
    std::atomic<bool> failed{false};

    const auto solve_one = [&](int m) {
        const auto index = static_cast<std::size_t>(m);
        try {
            const TargetSet targets =
                build_targets(SymbolIndex::from_flat(m, spec.modulation_order), spec, spec.seed);
            bank.weights[index] = solver.solve(targets);
            bank.objective_values[index] =
                sidelobe_objective(bank.weights[index], solver.matrices(), targets);
        } catch (const SingularMatrixError& e) {
            kinds[index] = FailureKind::singular;
            messages[index] = e.what();
            failed = true;
        } catch (const DegenerateConstraintError& e) {
            kinds[index] = FailureKind::degenerate;
            messages[index] = e.what();
            failed = true;
        } catch (const std::exception& e) {
            kinds[index] = FailureKind::other;
            messages[index] = e.what();
            failed = true;
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int m = 0; m < count; ++m)
            solve_one(m);
    } else {
        for (int m = 0; m < count; ++m)
            solve_one(m);
    }

    if (failed.load()) {
        for (int m = 0; m < count; ++m) {
            const auto index = static_cast<std::size_t>(m);
            if (kinds[index] == FailureKind::none)
                continue;
            const std::string annotated = "symbol " + std::to_string(m) + ": " + messages[index];
            switch (kinds[index]) {
            case FailureKind::singular:
                throw SingularMatrixError(annotated);
            case FailureKind::degenerate:
                throw DegenerateConstraintError(annotated);
            default:
                throw std::runtime_error(annotated);
            }
        }
    }
    return bank;
}

}  // namespace

WeightSet synthesize_bank(const DesignSpec& spec) {
    return synthesize_bank_impl(spec, true);
}

WeightSet synthesize_bank_serial(const DesignSpec& spec) {
    return synthesize_bank_impl(spec, false);
}

double constraint_residual(const Eigen::VectorXcd& weights, const SteeringMatrices& matrices,
                           const TargetSet& targets) {
    check_target_sizes(matrices, targets);
    if (weights.size() != matrices.mainlobe.rows())
        throw std::invalid_argument("weight vector length does not match steering matrices");
    const Eigen::VectorXcd residual =
        matrices.mainlobe.adjoint() * weights - targets.mainlobe.conjugate();
    return residual.size() == 0 ? 0.0 : residual.cwiseAbs().maxCoeff();
}

double sidelobe_objective(const Eigen::VectorXcd& weights, const SteeringMatrices& matrices,
                          const TargetSet& targets) {
    check_target_sizes(matrices, targets);
    if (weights.size() != matrices.sidelobe.rows())
        throw std::invalid_argument("weight vector length does not match steering matrices");
    return (targets.sidelobe.conjugate() - matrices.sidelobe.adjoint() * weights).norm();
}

double projected_gradient_norm(const Eigen::VectorXcd& weights, const SteeringMatrices& matrices,
                               const TargetSet& targets, double diagonal_loading) {
    check_target_sizes(matrices, targets);
    const Eigen::VectorXcd gradient =
        2.0 * (matrices.sidelobe *
                   (matrices.sidelobe.adjoint() * weights - targets.sidelobe.conjugate()) +
               diagonal_loading * weights);

    // Orthonormal basis of the mainlobe column span; the constraint null space
    // is its orthogonal complement.
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(matrices.mainlobe);
    const Eigen::MatrixXcd span =
        qr.householderQ() *
        Eigen::MatrixXcd::Identity(matrices.mainlobe.rows(), matrices.mainlobe.cols());
    return (gradient - span * (span.adjoint() * gradient)).norm();
}

double max_constraint_residual(const WeightSet& bank, const DesignSpec& spec) {
    spec.validate();
    if (bank.weights.size() != static_cast<std::size_t>(spec.symbol_count()))
        throw std::invalid_argument("weight bank size does not match the modulation order");

    const SteeringMatrices matrices = assemble_matrices(spec);
    double worst = 0.0;
    for (std::size_t m = 0; m < bank.weights.size(); ++m) {
        const TargetSet targets = build_targets(
            SymbolIndex::from_flat(static_cast<int>(m), spec.modulation_order), spec, spec.seed);
        worst = std::max(worst, constraint_residual(bank.weights[m], matrices, targets));
    }
    return worst;
}

}  // namespace poldm
