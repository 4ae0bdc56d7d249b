#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "poldm/demo.hpp"
#include "poldm/evaluation.hpp"
#include "poldm/modulation.hpp"

using namespace poldm;

namespace {

const WeightSet& demo_bank() {
    static WeightSet bank = synthesize_bank(demo_design_spec());
    return bank;
}

double wrap180(double deg) {
    double wrapped = std::fmod(deg + 180.0, 360.0);
    if (wrapped < 0.0) wrapped += 360.0;
    return wrapped - 180.0;
}

}  // namespace

TEST_CASE("plot angle folds onto the two azimuth cuts") {
    Direction rear = plot_angle_to_direction(-30.0);
    CHECK(rear.theta_deg == doctest::Approx(30.0));
    CHECK(rear.phi_deg == doctest::Approx(270.0));
    Direction front = plot_angle_to_direction(30.0);
    CHECK(front.theta_deg == doctest::Approx(30.0));
    CHECK(front.phi_deg == doctest::Approx(90.0));
    Direction broadside = plot_angle_to_direction(0.0);
    CHECK(broadside.theta_deg == doctest::Approx(0.0));
    CHECK(broadside.phi_deg == doctest::Approx(90.0));
    CHECK_THROWS_AS(plot_angle_to_direction(-90.5), std::invalid_argument);
    CHECK_THROWS_AS(plot_angle_to_direction(90.5), std::invalid_argument);
}

TEST_CASE("response is the conjugated inner product with the steering vector") {
    ArrayGeometry geometry = ArrayGeometry::uniform(4, 0.5);
    Direction dir{25.0, 90.0};
    PolarisationState pol{30.0, 45.0};
    Eigen::VectorXcd s = full_steering(geometry, dir, pol);

    // Matched weights recover the squared norm, real and positive.
    cdouble matched = response(s, geometry, dir, pol);
    CHECK(std::abs(matched - cdouble{s.squaredNorm(), 0.0}) < 1e-12);

    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(8);
    CHECK(std::abs(response(zero, geometry, dir, pol)) == 0.0);

    // Scaling the weights by alpha scales the response by conj(alpha).
    cdouble alpha{0.3, -1.2};
    cdouble scaled = response((alpha * s).eval(), geometry, dir, pol);
    CHECK(std::abs(scaled - std::conj(alpha) * matched) < 1e-10);

    Eigen::VectorXcd short_vector = Eigen::VectorXcd::Zero(7);
    CHECK_THROWS_AS(response(short_vector, geometry, dir, pol), std::invalid_argument);
}

TEST_CASE("pattern sweep covers the full cut inclusively") {
    DesignSpec spec = demo_design_spec();
    const Eigen::VectorXcd& w = demo_bank().weights[0];
    auto sweep = pattern_sweep(w, spec, 1.0);
    REQUIRE(sweep.size() == 181);
    CHECK(sweep.front().plot_angle_deg == doctest::Approx(-90.0));
    CHECK(sweep.back().plot_angle_deg == doctest::Approx(90.0));

    auto coarse = pattern_sweep(w, spec, 0.5);
    CHECK(coarse.size() == 361);

    for (const auto& sample : sweep) {
        double p1 = std::norm(sample.responses[0]);
        double p2 = std::norm(sample.responses[1]);
        CHECK(sample.composite_db ==
              doctest::Approx(10.0 * std::log10(p1 + p2)).epsilon(1e-9));
        CHECK(sample.magnitudes_db[0] ==
              doctest::Approx(20.0 * std::log10(std::abs(sample.responses[0]))).epsilon(1e-9));
    }
}

TEST_CASE("demo pattern pins the mainlobe to the constellation point") {
    DesignSpec spec = demo_design_spec();
    const Eigen::VectorXcd& w = demo_bank().weights[0];  // symbol 00,00
    auto sweep = pattern_sweep(w, spec, 1.0);
    const PatternSample& boresight = sweep[90];
    REQUIRE(boresight.plot_angle_deg == doctest::Approx(0.0));
    CHECK(std::abs(boresight.responses[0] - std::polar(1.0, deg2rad(45.0))) < 1e-8);
    CHECK(std::abs(boresight.responses[1] - std::polar(1.0, deg2rad(45.0))) < 1e-8);
    CHECK(boresight.magnitudes_db[0] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(boresight.magnitudes_db[1] == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(boresight.composite_db == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-6));
    CHECK(boresight.phases_deg[0] == doctest::Approx(45.0).epsilon(1e-6));
    CHECK(boresight.phases_deg[1] == doctest::Approx(45.0).epsilon(1e-6));
}

TEST_CASE("boresight phases for the mixed symbol pair") {
    DesignSpec spec = demo_design_spec();
    int composite = SymbolIndex::from_pair(0, 3, 4).composite;  // labels 00,10
    auto sweep = pattern_sweep(demo_bank().weights[static_cast<std::size_t>(composite)], spec, 1.0);
    const PatternSample& boresight = sweep[90];
    CHECK(std::abs(boresight.phases_deg[0] - 45.0) < 1e-4);
    CHECK(std::abs(boresight.phases_deg[1] - (-135.0)) < 1e-4);
}

TEST_CASE("constellation at the mainlobe reproduces the full symbol grid") {
    DesignSpec spec = demo_design_spec();
    auto points = constellation_at(demo_bank(), spec, spec.mainlobe_dirs[0]);
    REQUIRE(points.size() == 16);
    for (int m = 0; m < 16; ++m) {
        SymbolIndex symbol = SymbolIndex::from_flat(m, 4);
        for (int channel = 0; channel < 2; ++channel) {
            cdouble p = points[static_cast<std::size_t>(m)][static_cast<std::size_t>(channel)];
            int point = (channel == 0) ? symbol.s1 : symbol.s2;
            CHECK(std::abs(std::abs(p) - 1.0) < 1e-6);
            double phase_err =
                wrap180(std::arg(p) * 180.0 / M_PI - constellation_phase_deg(point, 4));
            CHECK(std::abs(phase_err) < 1e-4);
        }
    }
}

TEST_CASE("constellation at a sidelobe stays near the scrambled magnitude") {
    DesignSpec spec = demo_design_spec();
    auto points = constellation_at(demo_bank(), spec, spec.sidelobe_dirs[10]);
    for (const auto& pair : points) {
        CHECK(std::abs(pair[0]) < 0.5);
        CHECK(std::abs(pair[1]) < 0.5);
    }
}

TEST_CASE("scrambling report separates mainlobe order from sidelobe dispersion") {
    DesignSpec spec = demo_design_spec();
    auto report = scrambling_report(demo_bank(), spec);
    REQUIRE(report.size() == spec.mainlobe_dirs.size() + spec.sidelobe_dirs.size());

    // Mainlobe first: the sixteen QPSK points cancel to a zero resultant.
    CHECK(report[0].mainlobe);
    CHECK(report[0].resultant_length[0] < 1e-8);
    CHECK(report[0].resultant_length[1] < 1e-8);
    CHECK(report[0].max_magnitude[0] == doctest::Approx(1.0).epsilon(1e-6));

    double max_resultant = 0.0;
    for (std::size_t i = 1; i < report.size(); ++i) {
        CHECK_FALSE(report[i].mainlobe);
        max_resultant = std::max(max_resultant,
                                 std::max(report[i].resultant_length[0],
                                          report[i].resultant_length[1]));
    }
    // Scrambled phases never concentrate: resultants stay well below 1.
    CHECK(max_resultant < 0.9);
}

TEST_CASE("scrambling report is deterministic") {
    DesignSpec spec = demo_design_spec();
    auto a = scrambling_report(demo_bank(), spec);
    auto b = scrambling_report(demo_bank(), spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].resultant_length == b[i].resultant_length);
        CHECK(a[i].circular_std_deg == b[i].circular_std_deg);
        CHECK(a[i].max_magnitude == b[i].max_magnitude);
    }
}

TEST_CASE("pattern csv layout") {
    DesignSpec spec = demo_design_spec();
    auto sweep0 = pattern_sweep(demo_bank().weights[0], spec, 30.0);
    auto sweep1 = pattern_sweep(demo_bank().weights[1], spec, 30.0);
    REQUIRE(sweep0.size() == 7);

    std::ostringstream out;
    write_pattern_csv(out, {1, 0}, {sweep1, sweep0});
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "plot_angle_deg,symbol,channel,mag_db,phase_deg,composite_db");

    std::vector<std::string> rows;
    while (std::getline(in, line)) rows.push_back(line);
    REQUIRE(rows.size() == 7 * 2 * 2);

    // Sorted by angle, then symbol (despite the swapped input), then channel.
    CHECK(rows[0].rfind("-90.000000,0,1,", 0) == 0);
    CHECK(rows[1].rfind("-90.000000,0,2,", 0) == 0);
    CHECK(rows[2].rfind("-90.000000,1,1,", 0) == 0);
    CHECK(rows[3].rfind("-90.000000,1,2,", 0) == 0);
    CHECK(rows[4].rfind("-60.000000,0,1,", 0) == 0);
    CHECK(rows.back().rfind("90.000000,1,2,", 0) == 0);

    // Six comma-separated fields per row.
    for (const auto& row : rows) {
        CHECK(std::count(row.begin(), row.end(), ',') == 5);
    }

    auto mismatched = pattern_sweep(demo_bank().weights[2], spec, 45.0);
    std::ostringstream sink;
    CHECK_THROWS_AS(write_pattern_csv(sink, {0, 2}, {sweep0, mismatched}),
                    std::invalid_argument);
    CHECK_THROWS_AS(write_pattern_csv(sink, {0}, {sweep0, sweep1}), std::invalid_argument);
}
