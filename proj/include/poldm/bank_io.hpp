#pragma once

#include <filesystem>

#include "poldm/design_spec.hpp"
#include "poldm/synthesis.hpp"

namespace poldm {

// Writes the weight bank together with an echo of its design to a JSON
// document. Numbers are printed with 17 significant digits so that a
// save/load round trip reproduces every double bit for bit.
void save_weight_bank(const std::filesystem::path& path, const WeightSet& bank,
                      const DesignSpec& design);

struct LoadedBank {
    WeightSet bank;
    DesignSpec design;
};

LoadedBank load_weight_bank(const std::filesystem::path& path);

}  // namespace poldm
