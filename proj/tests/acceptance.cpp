// Acceptance gate: runs the end-to-end checks the library must satisfy and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "poldm/demo.hpp"
#include "poldm/evaluation.hpp"
#include "poldm/modulation.hpp"
#include "poldm/steering.hpp"
#include "poldm/synthesis.hpp"
#include "support/oracle.hpp"
#include "support/test_util.hpp"

using namespace poldm;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", index, name, detail.c_str());
    if (!pass)
        ++g_failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double wrap180(double deg) {
    double wrapped = std::fmod(deg + 180.0, 360.0);
    if (wrapped < 0.0)
        wrapped += 360.0;
    return wrapped - 180.0;
}

std::string format(const char* spec, ...) {
    char buffer[512];
    va_list args;
    va_start(args, spec);
    std::vsnprintf(buffer, sizeof(buffer), spec, args);
    va_end(args);
    return buffer;
}

// ---------------------------------------------------------------------------

void criterion_1_and_2(const DesignSpec& spec, const WeightSet& bank, double bank_seconds) {
    const auto points = constellation_at(bank, spec, spec.mainlobe_dirs.front());
    double max_mag_err = 0.0;
    double max_phase_err_deg = 0.0;
    double min_composite_db = 1e300;
    double max_composite_db = -1e300;
    for (int m = 0; m < spec.symbol_count(); ++m) {
        const SymbolIndex symbol = SymbolIndex::from_flat(m, spec.modulation_order);
        const auto& pair = points[static_cast<std::size_t>(m)];
        const int grid[2] = {symbol.s1, symbol.s2};
        double power = 0.0;
        for (int channel = 0; channel < 2; ++channel) {
            const cdouble p = pair[static_cast<std::size_t>(channel)];
            max_mag_err = std::max(max_mag_err, std::abs(std::abs(p) - 1.0));
            const double expected = constellation_phase_deg(grid[channel], spec.modulation_order);
            const double err =
                std::abs(wrap180(std::arg(p) * 180.0 / M_PI - expected));
            max_phase_err_deg = std::max(max_phase_err_deg, err);
            power += std::norm(p);
        }
        const double composite_db = 10.0 * std::log10(power);
        min_composite_db = std::min(min_composite_db, composite_db);
        max_composite_db = std::max(max_composite_db, composite_db);
    }

    const bool pass = max_mag_err < 1e-6 && max_phase_err_deg < 1e-4 &&
                      std::abs(min_composite_db - 3.0103) < 0.001 &&
                      std::abs(max_composite_db - 3.0103) < 0.001 && bank_seconds < 5.0;
    report(1, "mainlobe constellation on the 19-element showcase", pass,
           format("max |mag-1| = %.2e, max phase err = %.2e deg, composite %.5f..%.5f dB, "
                  "bank solved in %.2f s",
                  max_mag_err, max_phase_err_deg, min_composite_db, max_composite_db,
                  bank_seconds));

    const double residual = max_constraint_residual(bank, spec);
    report(2, "constraint residual across all 16 symbols", residual < 1e-8,
           format("max |w^H s - target| = %.3e (limit 1e-8)", residual));
}

void criterion_3_and_4(const DesignSpec& demo_spec, const WeightSet& demo_bank) {
    std::mt19937_64 rng(0xACCE57);
    double max_rel_err = 0.0;
    double max_kkt = 0.0;
    const auto start = Clock::now();
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        const auto instance = poldm::testing::make_random_instance(rng);
        const Eigen::VectorXcd closed = solve_weights(instance.matrices, instance.targets, 0.0);
        const Eigen::VectorXcd oracle =
            poldm::testing::constraint_elimination_solve(instance.matrices, instance.targets);
        const double scale = std::max(oracle.norm(), 1e-30);
        max_rel_err = std::max(max_rel_err, (closed - oracle).norm() / scale);
        max_kkt = std::max(max_kkt, projected_gradient_norm(closed, instance.matrices,
                                                            instance.targets, 0.0));
    }
    const double elapsed = seconds_since(start);
    report(3, "closed-form solver matches the constraint-elimination oracle",
           max_rel_err < 1e-8 && elapsed < 10.0,
           format("%d random instances, max relative error = %.2e, %.2f s", trials, max_rel_err,
                  elapsed));

    const SteeringMatrices matrices = assemble_matrices(demo_spec);
    for (int m = 0; m < demo_spec.symbol_count(); ++m) {
        const SymbolIndex symbol = SymbolIndex::from_flat(m, demo_spec.modulation_order);
        const TargetSet targets = build_targets(symbol, demo_spec, demo_spec.seed);
        max_kkt = std::max(
            max_kkt, projected_gradient_norm(demo_bank.weights[static_cast<std::size_t>(m)],
                                             matrices, targets, demo_spec.diagonal_loading));
    }
    report(4, "projected objective gradient vanishes at the solution", max_kkt < 1e-7,
           format("max projected gradient norm = %.2e over %d instances + 16 showcase symbols",
                  max_kkt, trials));
}

void criterion_5() {
    std::mt19937_64 rng(5);
    auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    const ArrayGeometry geometry = ArrayGeometry::uniform(8, 0.5);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Direction dir{uniform(0.0, 180.0), uniform(0.0, 360.0)};
        const PolarisationState pol{uniform(0.0, 90.0), uniform(-180.0, 179.999)};

        const Eigen::VectorXcd spatial = spatial_steering(geometry, dir);
        for (Eigen::Index n = 0; n < spatial.size(); ++n)
            worst = std::max(worst, std::abs(std::abs(spatial(n)) - 1.0));

        const PolarisationComponents p = polarisation_vector(dir, pol);
        const double gamma = deg2rad(pol.gamma_deg);
        const double theta = deg2rad(dir.theta_deg);
        const double identity = std::cos(gamma) * std::cos(gamma) +
                                std::cos(theta) * std::cos(theta) * std::sin(gamma) *
                                    std::sin(gamma);
        worst = std::max(worst, std::abs(std::norm(p.x) + std::norm(p.y) - identity));

        const PolarisationComponents h = polarisation_vector(dir, PolarisationState{0.0, 0.0});
        const PolarisationComponents v = polarisation_vector(dir, PolarisationState{90.0, 0.0});
        worst = std::max(worst, std::abs(std::conj(h.x) * v.x + std::conj(h.y) * v.y));
    }
    report(5, "steering identities over 1000 random draws", worst < 1e-12,
           format("worst deviation = %.2e (limit 1e-12)", worst));
}

void criterion_6() {
    const auto dir = poldm::testing::make_temp_dir("acceptance_demo");
    run_demo(dir / "a");
    run_demo(dir / "b");

    const char* names[] = {"bank.json",         "pattern_00_00.csv", "pattern_00_01.csv",
                           "pattern_00_11.csv", "pattern_00_10.csv", "config.json",
                           "summary.txt"};
    bool identical = true;
    for (const char* name : names) {
        if (poldm::testing::read_file(dir / "a" / name) !=
            poldm::testing::read_file(dir / "b" / name)) {
            identical = false;
        }
    }

    // Golden comparison: value-level agreement with the committed CSV.
    const std::filesystem::path golden = std::filesystem::path(POLDM_GOLDEN_DIR) /
                                         "demo_symbol_00_00.csv";
    const auto golden_lines = poldm::testing::read_lines(golden);
    const auto fresh_lines = poldm::testing::read_lines(dir / "a" / "pattern_00_00.csv");
    bool golden_ok = !golden_lines.empty() && golden_lines.size() == fresh_lines.size() &&
                     golden_lines.front() == fresh_lines.front();
    double max_delta = 0.0;
    if (golden_ok) {
        for (std::size_t i = 1; i < golden_lines.size(); ++i) {
            std::istringstream ga(golden_lines[i]);
            std::istringstream fa(fresh_lines[i]);
            std::string gf, ff;
            int field = 0;
            while (std::getline(ga, gf, ',') && std::getline(fa, ff, ',')) {
                const double delta = std::abs(std::stod(gf) - std::stod(ff));
                if (field == 1 || field == 2) {  // symbol and channel match exactly
                    if (delta != 0.0)
                        golden_ok = false;
                } else {
                    max_delta = std::max(max_delta, delta);
                }
                ++field;
            }
            if (field != 6)
                golden_ok = false;
        }
        if (max_delta > 1e-6)
            golden_ok = false;
    }

    report(6, "demo outputs are byte-reproducible and match the golden pattern",
           identical && golden_ok,
           format("repeat run identical = %s, golden max |delta| = %.2e over %zu rows",
                  identical ? "yes" : "no", max_delta,
                  golden_lines.empty() ? 0 : golden_lines.size() - 1));
}

void criterion_7(const DesignSpec& spec, const WeightSet& bank) {
    const double grid[4] = {45.0, 135.0, -45.0, -135.0};

    // Mainlobe phases sit exactly on the grid.
    double mainlobe_err = 0.0;
    const auto mainlobe_points = constellation_at(bank, spec, spec.mainlobe_dirs.front());
    for (int m = 0; m < spec.symbol_count(); ++m) {
        for (int channel = 0; channel < 2; ++channel) {
            const double phase =
                std::arg(mainlobe_points[static_cast<std::size_t>(m)]
                                        [static_cast<std::size_t>(channel)]) *
                180.0 / M_PI;
            double best = 1e300;
            for (double g : grid)
                best = std::min(best, std::abs(wrap180(phase - g)));
            mainlobe_err = std::max(mainlobe_err, best);
        }
    }

    // At every sidelobe direction, each channel's 16 phases must leave the
    // grid: at least one phase further than 0.1 degrees from every grid point.
    int on_grid_directions = 0;
    for (const Direction& dir : spec.sidelobe_dirs) {
        const auto points = constellation_at(bank, spec, dir);
        for (int channel = 0; channel < 2; ++channel) {
            bool any_off_grid = false;
            for (int m = 0; m < spec.symbol_count(); ++m) {
                const double phase =
                    std::arg(points[static_cast<std::size_t>(m)]
                                   [static_cast<std::size_t>(channel)]) *
                    180.0 / M_PI;
                double best = 1e300;
                for (double g : grid)
                    best = std::min(best, std::abs(wrap180(phase - g)));
                if (best > 0.1) {
                    any_off_grid = true;
                    break;
                }
            }
            if (!any_off_grid)
                ++on_grid_directions;
        }
    }

    report(7, "sidelobe phases leave the constellation grid",
           mainlobe_err < 1e-4 && on_grid_directions == 0,
           format("mainlobe max grid distance = %.2e deg, grid-locked sidelobe channels = %d "
                  "of %zu",
                  mainlobe_err, on_grid_directions, 2 * spec.sidelobe_dirs.size()));
}

}  // namespace

int main() {
    std::printf("acceptance checks, %d criteria\n", 7);
    try {
        const DesignSpec spec = demo_design_spec();
        const auto start = Clock::now();
        const WeightSet bank = synthesize_bank(spec);
        const double bank_seconds = seconds_since(start);

        criterion_1_and_2(spec, bank, bank_seconds);
        criterion_3_and_4(spec, bank);
        criterion_5();
        criterion_6();
        criterion_7(spec, bank);
    } catch (const std::exception& e) {
        std::printf("[FAIL] unhandled exception: %s\n", e.what());
        return 1;
    }
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
