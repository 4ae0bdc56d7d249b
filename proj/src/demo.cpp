#include "poldm/demo.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "poldm/config.hpp"
#include "poldm/bank_io.hpp"
#include "poldm/evaluation.hpp"

namespace poldm {

namespace {

std::string format(const char* spec, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), spec, value);
    return buffer;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out)
        throw std::runtime_error("failed while writing '" + path.string() + "'");
}

}  // namespace

nlohmann::json demo_config_json() {
    return nlohmann::json{
        {"array", {{"spacing_wavelengths", 0.5}, {"aperture_wavelengths", 9.0}}},
        {"polarisations",
         {{"s1", {{"gamma_deg", 0.0}, {"eta_deg", 0.0}}},
          {"s2", {{"gamma_deg", 90.0}, {"eta_deg", 0.0}}}}},
        {"mainlobe", nlohmann::json::array({{{"theta_deg", 0.0}, {"phi_deg", 90.0}}})},
        {"sidelobe",
         nlohmann::json::array(
             {{{"phi_deg", 90.0},
               {"theta_start_deg", 5.0},
               {"theta_stop_deg", 90.0},
               {"theta_step_deg", 1.0}},
              {{"phi_deg", -90.0},
               {"theta_start_deg", 5.0},
               {"theta_stop_deg", 90.0},
               {"theta_step_deg", 1.0}}})},
        {"modulation", {{"order", 4}, {"constellation_magnitude", 1.0}}},
        {"sidelobe_magnitude", 0.1},
        {"seed", kDemoSeed},
        {"sweep_step_deg", 1.0},
    };
}

DesignSpec demo_design_spec() {
    return parse_run_config(demo_config_json()).design;
}

std::vector<SymbolIndex> demo_symbols() {
    std::vector<SymbolIndex> symbols;
    for (int s2 = 0; s2 < 4; ++s2)
        symbols.push_back(SymbolIndex::from_pair(0, s2, 4));
    return symbols;
}

DemoResult run_demo(const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    DemoResult result;
    result.design = demo_design_spec();

    result.config_path = out_dir / "config.json";
    write_text_file(result.config_path, demo_config_json().dump(2) + "\n");

    result.bank = synthesize_bank(result.design);
    result.max_constraint_residual = max_constraint_residual(result.bank, result.design);

    result.bank_path = out_dir / "bank.json";
    save_weight_bank(result.bank_path, result.bank, result.design);

    for (const SymbolIndex& symbol : demo_symbols()) {
        const auto sweep = pattern_sweep(
            result.bank.weights[static_cast<std::size_t>(symbol.composite)], result.design, 1.0);
        const std::filesystem::path csv_path =
            out_dir / ("pattern_" + qpsk_symbol_label(symbol.s1) + "_" +
                       qpsk_symbol_label(symbol.s2) + ".csv");
        std::ofstream csv(csv_path);
        if (!csv)
            throw std::runtime_error("cannot open '" + csv_path.string() + "' for writing");
        write_pattern_csv(csv, {symbol.composite}, {sweep});
        result.csv_paths.push_back(csv_path);
    }

    // Summary ------------------------------------------------------------
    const auto mainlobe_cols = 2 * result.design.mainlobe_dirs.size();
    const auto sidelobe_cols = 2 * result.design.sidelobe_dirs.size();
    std::string text;
    text += "poldm demo\n";
    text += "==========\n";
    text += "elements:            " + std::to_string(result.design.elements()) + "\n";
    text += "weight length:       " + std::to_string(result.design.weight_length()) + "\n";
    text += "composite symbols:   " + std::to_string(result.design.symbol_count()) + "\n";
    text += "mainlobe matrix:     " + std::to_string(result.design.weight_length()) + " x " +
            std::to_string(mainlobe_cols) + "\n";
    text += "sidelobe matrix:     " + std::to_string(result.design.weight_length()) + " x " +
            std::to_string(sidelobe_cols) + "\n";
    text += "seed:                " + std::to_string(result.design.seed) + "\n";
    text += "max constraint residual: " +
            format("%.3e", result.max_constraint_residual) + "\n\n";

    text += "symbol  label  objective  s1_phase_deg  s2_phase_deg\n";
    const auto mainlobe_points =
        constellation_at(result.bank, result.design, result.design.mainlobe_dirs.front());
    for (int m = 0; m < result.design.symbol_count(); ++m) {
        const SymbolIndex symbol = SymbolIndex::from_flat(m, result.design.modulation_order);
        const auto& pair = mainlobe_points[static_cast<std::size_t>(m)];
        char line[128];
        std::snprintf(line, sizeof(line), "%-7d %s,%s  %9.6f  %12.6f  %12.6f\n", m,
                      qpsk_symbol_label(symbol.s1).c_str(), qpsk_symbol_label(symbol.s2).c_str(),
                      result.bank.objective_values[static_cast<std::size_t>(m)],
                      std::arg(pair[0]) * 180.0 / std::numbers::pi,
                      std::arg(pair[1]) * 180.0 / std::numbers::pi);
        text += line;
    }

    const auto report = scrambling_report(result.bank, result.design);
    double min_std[2] = {std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()};
    double max_side_mag[2] = {0.0, 0.0};
    for (const DirectionPhaseStats& stats : report) {
        if (stats.mainlobe)
            continue;
        for (int channel = 0; channel < 2; ++channel) {
            min_std[channel] = std::min(min_std[channel], stats.circular_std_deg[channel]);
            max_side_mag[channel] = std::max(max_side_mag[channel], stats.max_magnitude[channel]);
        }
    }
    text += "\nscrambling over sidelobe directions:\n";
    for (int channel = 0; channel < 2; ++channel)
        text += "  channel " + std::to_string(channel + 1) + ": min circular std " +
                format("%.2f", min_std[channel]) + " deg, max magnitude " +
                format("%.6f", max_side_mag[channel]) + "\n";

    result.summary_path = out_dir / "summary.txt";
    write_text_file(result.summary_path, text);
    return result;
}

}  // namespace poldm
