#include "poldm/bank_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace poldm {

namespace {

constexpr const char* kFormatTag = "poldm-bank-v1";

std::string fmt(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_direction(std::ostream& out, const Direction& dir) {
    out << "{\"theta_deg\": " << fmt(dir.theta_deg) << ", \"phi_deg\": " << fmt(dir.phi_deg)
        << "}";
}

void write_polarisation(std::ostream& out, const PolarisationState& pol) {
    out << "{\"gamma_deg\": " << fmt(pol.gamma_deg) << ", \"eta_deg\": " << fmt(pol.eta_deg)
        << "}";
}

void write_directions(std::ostream& out, const std::vector<Direction>& dirs,
                      const std::string& item_indent, const std::string& close_indent) {
    out << "[";
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        out << (i == 0 ? "\n" : ",\n") << item_indent;
        write_direction(out, dirs[i]);
    }
    if (!dirs.empty())
        out << "\n" << close_indent;
    out << "]";
}

Direction read_direction(const nlohmann::json& node) {
    return {node.at("theta_deg").get<double>(), node.at("phi_deg").get<double>()};
}

PolarisationState read_polarisation(const nlohmann::json& node) {
    return {node.at("gamma_deg").get<double>(), node.at("eta_deg").get<double>()};
}

}  // namespace

void save_weight_bank(const std::filesystem::path& path, const WeightSet& bank,
                      const DesignSpec& design) {
    if (bank.weights.size() != bank.objective_values.size())
        throw std::invalid_argument("weight bank has mismatched objective values");

    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");

    out << "{\n";
    out << "  \"format\": \"" << kFormatTag << "\",\n";
    out << "  \"seed\": " << design.seed << ",\n";

    out << "  \"design\": {\n";
    out << "    \"positions\": [";
    for (std::size_t i = 0; i < design.geometry.positions.size(); ++i)
        out << (i == 0 ? "" : ", ") << fmt(design.geometry.positions[i]);
    out << "],\n";
    out << "    \"pol1\": ";
    write_polarisation(out, design.pol1);
    out << ",\n    \"pol2\": ";
    write_polarisation(out, design.pol2);
    out << ",\n    \"mainlobe\": ";
    write_directions(out, design.mainlobe_dirs, "      ", "    ");
    out << ",\n    \"sidelobe\": ";
    write_directions(out, design.sidelobe_dirs, "      ", "    ");
    out << ",\n";
    out << "    \"constellation_magnitude\": " << fmt(design.constellation_magnitude) << ",\n";
    out << "    \"sidelobe_magnitude\": " << fmt(design.sidelobe_magnitude) << ",\n";
    out << "    \"modulation_order\": " << design.modulation_order << ",\n";
    out << "    \"diagonal_loading\": " << fmt(design.diagonal_loading) << "\n";
    out << "  },\n";

    out << "  \"weights\": [";
    for (std::size_t m = 0; m < bank.weights.size(); ++m) {
        out << (m == 0 ? "\n" : ",\n") << "    [";
        const Eigen::VectorXcd& w = bank.weights[m];
        for (Eigen::Index i = 0; i < w.size(); ++i)
            out << (i == 0 ? "" : ", ") << "[" << fmt(w(i).real()) << ", " << fmt(w(i).imag())
                << "]";
        out << "]";
    }
    out << "\n  ],\n";

    out << "  \"objective_values\": [";
    for (std::size_t m = 0; m < bank.objective_values.size(); ++m)
        out << (m == 0 ? "" : ", ") << fmt(bank.objective_values[m]);
    out << "]\n";
    out << "}\n";

    if (!out)
        throw std::runtime_error("failed while writing '" + path.string() + "'");
}

LoadedBank load_weight_bank(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("'" + path.string() + "' is not valid JSON: " + e.what());
    }

    try {
        if (doc.at("format").get<std::string>() != kFormatTag)
            throw std::runtime_error("unsupported bank format tag");

        LoadedBank loaded;
        const nlohmann::json& design = doc.at("design");
        loaded.design.geometry.positions = design.at("positions").get<std::vector<double>>();
        loaded.design.pol1 = read_polarisation(design.at("pol1"));
        loaded.design.pol2 = read_polarisation(design.at("pol2"));
        for (const auto& node : design.at("mainlobe"))
            loaded.design.mainlobe_dirs.push_back(read_direction(node));
        for (const auto& node : design.at("sidelobe"))
            loaded.design.sidelobe_dirs.push_back(read_direction(node));
        loaded.design.constellation_magnitude =
            design.at("constellation_magnitude").get<double>();
        loaded.design.sidelobe_magnitude = design.at("sidelobe_magnitude").get<double>();
        loaded.design.modulation_order = design.at("modulation_order").get<int>();
        loaded.design.diagonal_loading = design.at("diagonal_loading").get<double>();
        loaded.design.seed = doc.at("seed").get<std::uint64_t>();
        loaded.design.validate();

        const nlohmann::json& weights = doc.at("weights");
        loaded.bank.weights.reserve(weights.size());
        for (const auto& vector_node : weights) {
            Eigen::VectorXcd w(vector_node.size());
            Eigen::Index i = 0;
            for (const auto& pair : vector_node) {
                if (!pair.is_array() || pair.size() != 2)
                    throw std::runtime_error("weight entries must be [re, im] pairs");
                w(i++) = cdouble(pair.at(0).get<double>(), pair.at(1).get<double>());
            }
            loaded.bank.weights.push_back(std::move(w));
        }
        loaded.bank.objective_values =
            doc.at("objective_values").get<std::vector<double>>();

        if (loaded.bank.weights.size() != loaded.bank.objective_values.size())
            throw std::runtime_error("weights and objective_values disagree in length");
        return loaded;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("'" + path.string() + "' is not a valid weight bank: " +
                                 e.what());
    }
}

}  // namespace poldm
