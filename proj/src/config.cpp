#include "poldm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <vector>

namespace poldm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError("config error at " + path + ": " + message);
}

void require_keys(const json& node, const std::string& path,
                  const std::set<std::string>& required, const std::set<std::string>& optional) {
    if (!node.is_object())
        fail(path, "expected an object");
    for (const std::string& key : required)
        if (!node.contains(key))
            fail(path, "missing required field '" + key + "'");
    for (const auto& [key, value] : node.items())
        if (!required.contains(key) && !optional.contains(key))
            fail(path + "/" + key, "unknown field");
}

double get_number(const json& node, const std::string& path, const std::string& key) {
    if (!node.contains(key))
        fail(path, "missing required field '" + key + "'");
    const json& value = node.at(key);
    if (!value.is_number())
        fail(path + "/" + key, "expected a number");
    return value.get<double>();
}

double get_number_or(const json& node, const std::string& path, const std::string& key,
                     double fallback) {
    return node.contains(key) ? get_number(node, path, key) : fallback;
}

ArrayGeometry parse_array(const json& node, const std::string& path) {
    if (node.contains("positions")) {
        require_keys(node, path, {"positions"}, {});
        const json& positions = node.at("positions");
        if (!positions.is_array() || positions.empty())
            fail(path + "/positions", "expected a non-empty array of numbers");
        ArrayGeometry geometry;
        geometry.positions = positions.get<std::vector<double>>();
        try {
            geometry.validate();
        } catch (const std::invalid_argument& e) {
            fail(path + "/positions", e.what());
        }
        return geometry;
    }

    require_keys(node, path, {"spacing_wavelengths"}, {"elements", "aperture_wavelengths"});
    const double spacing = get_number(node, path, "spacing_wavelengths");
    if (!(spacing > 0.0))
        fail(path + "/spacing_wavelengths", "must be positive");

    std::size_t elements = 0;
    if (node.contains("elements")) {
        // Explicit element count wins over a derived one.
        const double raw = get_number(node, path, "elements");
        if (!(raw >= 1.0) || raw != std::floor(raw))
            fail(path + "/elements", "must be a positive integer");
        elements = static_cast<std::size_t>(raw);
    } else if (node.contains("aperture_wavelengths")) {
        const double aperture = get_number(node, path, "aperture_wavelengths");
        if (!(aperture > 0.0))
            fail(path + "/aperture_wavelengths", "must be positive");
        const double ratio = aperture / spacing;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
            fail(path + "/aperture_wavelengths",
                 "aperture must be an integer multiple of the spacing");
        elements = static_cast<std::size_t>(std::llround(ratio)) + 1;
    } else {
        fail(path, "needs either 'elements', 'aperture_wavelengths' or 'positions'");
    }
    return ArrayGeometry::uniform(elements, spacing);
}

PolarisationState parse_polarisation(const json& node, const std::string& path) {
    require_keys(node, path, {"gamma_deg", "eta_deg"}, {});
    try {
        return {get_number(node, path, "gamma_deg"), get_number(node, path, "eta_deg")};
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

std::vector<Direction> parse_directions(const json& node, const std::string& path) {
    if (!node.is_array())
        fail(path, "expected an array of direction entries");

    std::vector<Direction> dirs;
    std::size_t i = 0;
    for (const json& entry : node) {
        const std::string entry_path = path + "/" + std::to_string(i++);
        try {
            if (entry.contains("theta_start_deg")) {
                require_keys(entry, entry_path,
                             {"theta_start_deg", "theta_stop_deg", "phi_deg"},
                             {"theta_step_deg"});
                const double start = get_number(entry, entry_path, "theta_start_deg");
                const double stop = get_number(entry, entry_path, "theta_stop_deg");
                const double step = get_number_or(entry, entry_path, "theta_step_deg", 1.0);
                const double phi = get_number(entry, entry_path, "phi_deg");
                if (!(step > 0.0))
                    fail(entry_path + "/theta_step_deg", "must be positive");
                if (stop < start)
                    fail(entry_path + "/theta_stop_deg", "must not be below theta_start_deg");
                const auto count =
                    static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
                for (long k = 0; k < count; ++k)
                    dirs.emplace_back(start + static_cast<double>(k) * step, phi);
            } else {
                require_keys(entry, entry_path, {"theta_deg", "phi_deg"}, {});
                dirs.emplace_back(get_number(entry, entry_path, "theta_deg"),
                                  get_number(entry, entry_path, "phi_deg"));
            }
        } catch (const std::invalid_argument& e) {
            fail(entry_path, e.what());
        }
    }
    return dirs;
}

}  // namespace

RunConfig parse_run_config(const json& document) {
    require_keys(document, "/",
                 {"array", "polarisations", "mainlobe", "sidelobe", "modulation",
                  "sidelobe_magnitude", "seed"},
                 {"diagonal_loading", "sweep_step_deg"});

    RunConfig config;
    config.document = document;
    config.design.geometry = parse_array(document.at("array"), "/array");

    const json& pols = document.at("polarisations");
    require_keys(pols, "/polarisations", {"s1", "s2"}, {});
    config.design.pol1 = parse_polarisation(pols.at("s1"), "/polarisations/s1");
    config.design.pol2 = parse_polarisation(pols.at("s2"), "/polarisations/s2");

    config.design.mainlobe_dirs = parse_directions(document.at("mainlobe"), "/mainlobe");
    config.design.sidelobe_dirs = parse_directions(document.at("sidelobe"), "/sidelobe");

    const json& modulation = document.at("modulation");
    require_keys(modulation, "/modulation", {"order"}, {"constellation_magnitude"});
    const double order = get_number(modulation, "/modulation", "order");
    if (order < 2.0 || order != std::floor(order))
        fail("/modulation/order", "must be an integer of at least 2");
    config.design.modulation_order = static_cast<int>(order);
    config.design.constellation_magnitude =
        get_number_or(modulation, "/modulation", "constellation_magnitude", 1.0);

    config.design.sidelobe_magnitude = get_number(document, "/", "sidelobe_magnitude");
    if (!document.at("seed").is_number_unsigned())
        fail("/seed", "expected an unsigned integer");
    config.design.seed = document.at("seed").get<std::uint64_t>();
    config.design.diagonal_loading = get_number_or(document, "/", "diagonal_loading", 0.0);

    config.sweep_step_deg = get_number_or(document, "/", "sweep_step_deg", 1.0);
    if (!(config.sweep_step_deg > 0.0))
        fail("/sweep_step_deg", "must be positive");

    try {
        config.design.validate();
    } catch (const std::invalid_argument& e) {
        fail("/", e.what());
    }
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config '" + path.string() + "' for reading");
    json document;
    try {
        document = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    try {
        return parse_run_config(document);
    } catch (const ConfigError& e) {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    }
}

json emit_run_config(const RunConfig& config) {
    return config.document;
}

}  // namespace poldm
