#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <json.hpp>

#include "poldm/design_spec.hpp"
#include "poldm/modulation.hpp"
#include "poldm/synthesis.hpp"

namespace poldm {

// Seed used by the built-in demo so its outputs are reproducible.
inline constexpr std::uint64_t kDemoSeed = 42;

// Built-in showcase design: 19-element half-wavelength ULA (9-wavelength
// aperture), horizontal/vertical polarisation pair, QPSK on both channels,
// mainlobe at theta 0 on the phi = 90 cut, sidelobe grid theta 5..90 degrees
// on both phi cuts in 1-degree steps, sidelobe magnitude 0.1.
DesignSpec demo_design_spec();

// The same design as a configuration document.
nlohmann::json demo_config_json();

// The four composite symbols whose patterns the demo materializes.
std::vector<SymbolIndex> demo_symbols();

struct DemoResult {
    DesignSpec design;
    WeightSet bank;
    double max_constraint_residual = 0.0;
    std::filesystem::path config_path;
    std::filesystem::path bank_path;
    std::vector<std::filesystem::path> csv_paths;
    std::filesystem::path summary_path;
};

// Writes config, weight bank, one pattern CSV per showcased symbol and a
// text summary into out_dir. Repeated runs produce byte-identical files.
DemoResult run_demo(const std::filesystem::path& out_dir);

}  // namespace poldm
