#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poldm/bank_io.hpp"
#include "poldm/config.hpp"
#include "poldm/demo.hpp"
#include "poldm/evaluation.hpp"
#include "poldm/modulation.hpp"
#include "poldm/synthesis.hpp"

namespace {

constexpr double kResidualLimit = 1e-8;

std::string symbol_label(const poldm::SymbolIndex& symbol, int order) {
    if (order != 4)
        return std::to_string(symbol.composite);
    return poldm::qpsk_symbol_label(symbol.s1) + "," + poldm::qpsk_symbol_label(symbol.s2);
}

int parse_symbol_token(const std::string& token, int order) {
    if (token.find(',') != std::string::npos) {
        if (order != 4)
            throw std::invalid_argument("bit-label symbol selection requires modulation order 4");
        const auto comma = token.find(',');
        const poldm::SymbolIndex symbol = poldm::SymbolIndex::from_pair(
            poldm::qpsk_symbol_index(token.substr(0, comma)),
            poldm::qpsk_symbol_index(token.substr(comma + 1)), order);
        return symbol.composite;
    }
    std::size_t consumed = 0;
    int value = 0;
    try {
        value = std::stoi(token, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid symbol '" + token + "'");
    }
    if (consumed != token.size() || value < 0 || value >= order * order)
        throw std::invalid_argument("symbol '" + token + "' out of range for order " +
                                    std::to_string(order));
    return value;
}

int report_residual(double residual) {
    std::printf("max constraint residual: %.3e\n", residual);
    if (residual < kResidualLimit)
        return 0;
    std::fprintf(stderr, "error: constraint residual exceeds %.0e\n", kResidualLimit);
    return 1;
}

int cmd_synthesize(const std::string& config_path, const std::string& out_path,
                   const std::optional<std::uint64_t>& seed) {
    poldm::RunConfig config = poldm::load_run_config(config_path);
    if (seed)
        config.design.seed = *seed;

    const poldm::WeightSet bank = poldm::synthesize_bank(config.design);
    for (int m = 0; m < config.design.symbol_count(); ++m) {
        const auto symbol = poldm::SymbolIndex::from_flat(m, config.design.modulation_order);
        std::printf("symbol %2d (%s): objective %.6f\n", m,
                    symbol_label(symbol, config.design.modulation_order).c_str(),
                    bank.objective_values[static_cast<std::size_t>(m)]);
    }

    poldm::save_weight_bank(out_path, bank, config.design);
    std::printf("wrote %s (%d weight vectors of length %zu)\n", out_path.c_str(),
                config.design.symbol_count(), config.design.weight_length());
    return report_residual(poldm::max_constraint_residual(bank, config.design));
}

int cmd_evaluate(const std::string& bank_path, const std::string& config_path, double step_deg,
                 const std::string& out_path, const std::vector<std::string>& symbol_tokens) {
    const poldm::RunConfig config = poldm::load_run_config(config_path);
    const poldm::LoadedBank loaded = poldm::load_weight_bank(bank_path);

    if (loaded.design.geometry.positions != config.design.geometry.positions)
        throw std::runtime_error("bank/config mismatch: array geometries differ");
    if (loaded.design.modulation_order != config.design.modulation_order)
        throw std::runtime_error("bank/config mismatch: modulation orders differ");

    const int order = config.design.modulation_order;
    std::vector<int> symbols;
    if (symbol_tokens.empty()) {
        for (int m = 0; m < order * order; ++m)
            symbols.push_back(m);
    } else {
        for (const std::string& token : symbol_tokens)
            symbols.push_back(parse_symbol_token(token, order));
    }

    if (step_deg <= 0.0)
        step_deg = config.sweep_step_deg;

    std::vector<std::vector<poldm::PatternSample>> sweeps;
    sweeps.reserve(symbols.size());
    for (int m : symbols)
        sweeps.push_back(poldm::pattern_sweep(loaded.bank.weights[static_cast<std::size_t>(m)],
                                              config.design, step_deg));

    std::ofstream out(out_path);
    if (!out)
        throw std::runtime_error("cannot open '" + out_path + "' for writing");
    poldm::write_pattern_csv(out, symbols, sweeps);
    std::printf("wrote %s (%zu symbols, %zu angles)\n", out_path.c_str(), symbols.size(),
                sweeps.front().size());

    return report_residual(poldm::max_constraint_residual(loaded.bank, loaded.design));
}

int cmd_demo(const std::string& out_dir) {
    const poldm::DemoResult result = poldm::run_demo(out_dir);
    std::printf("wrote %s\n", result.config_path.c_str());
    std::printf("wrote %s\n", result.bank_path.c_str());
    for (const auto& path : result.csv_paths)
        std::printf("wrote %s\n", path.c_str());
    std::printf("wrote %s\n", result.summary_path.c_str());
    return report_residual(result.max_constraint_residual);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-polarisation directional modulation weight design for "
                 "crossed-dipole linear arrays"};
    app.require_subcommand(1);

    std::string config_path;
    std::string bank_path;
    std::string out_path;
    std::vector<std::string> symbol_tokens;
    double step_deg = 0.0;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t seed_value = 0;

    CLI::App* synthesize = app.add_subcommand(
        "synthesize", "Solve the weight bank for a configuration and write it as JSON");
    synthesize->add_option("--config", config_path, "Configuration file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    synthesize->add_option("--out", out_path, "Output weight bank path")->required();
    CLI::Option* seed_opt =
        synthesize->add_option("--seed", seed_value, "Override the configured seed");

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Sweep beam patterns from a weight bank and write them as CSV");
    evaluate->add_option("--bank", bank_path, "Weight bank file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate->add_option("--config", config_path, "Configuration file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate->add_option("--step", step_deg, "Sweep step in degrees (default from config)");
    evaluate->add_option("--out", out_path, "Output CSV path")->required();
    evaluate->add_option("--symbols", symbol_tokens,
                         "Symbols to evaluate: composite indices or QPSK label pairs "
                         "like 00,11 (default: all)");

    CLI::App* demo = app.add_subcommand(
        "demo", "Run the built-in 19-element showcase design end to end");
    demo->add_option("--out", out_path, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synthesize->parsed()) {
            if (*seed_opt)
                seed_override = seed_value;
            return cmd_synthesize(config_path, out_path, seed_override);
        }
        if (evaluate->parsed())
            return cmd_evaluate(bank_path, config_path, step_deg, out_path, symbol_tokens);
        if (demo->parsed())
            return cmd_demo(out_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
