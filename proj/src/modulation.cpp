#include "poldm/modulation.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace poldm {

namespace {

constexpr std::array<std::string_view, 4> kQpskLabels = {"00", "01", "11", "10"};
constexpr std::array<double, 4> kQpskPhasesDeg = {45.0, 135.0, -45.0, -135.0};

}  // namespace

SymbolIndex SymbolIndex::from_flat(int composite, int order) {
    if (order < 2)
        throw std::invalid_argument("modulation order must be at least 2");
    if (composite < 0 || composite >= order * order)
        throw std::invalid_argument("composite symbol " + std::to_string(composite) +
                                    " out of range for order " + std::to_string(order));
    return {composite, composite / order, composite % order};
}

SymbolIndex SymbolIndex::from_pair(int s1, int s2, int order) {
    if (order < 2)
        throw std::invalid_argument("modulation order must be at least 2");
    if (s1 < 0 || s1 >= order || s2 < 0 || s2 >= order)
        throw std::invalid_argument("constituent symbol out of range for order " +
                                    std::to_string(order));
    return {s1 * order + s2, s1, s2};
}

int qpsk_symbol_index(std::string_view bits) {
    for (std::size_t k = 0; k < kQpskLabels.size(); ++k)
        if (bits == kQpskLabels[k])
            return static_cast<int>(k);
    throw std::invalid_argument("invalid QPSK bit label '" + std::string(bits) +
                                "'; expected one of 00, 01, 11, 10");
}

std::string qpsk_symbol_label(int symbol) {
    if (symbol < 0 || symbol >= static_cast<int>(kQpskLabels.size()))
        throw std::invalid_argument("QPSK symbol index must lie in [0, 3]");
    return std::string(kQpskLabels[static_cast<std::size_t>(symbol)]);
}

double qpsk_phase_deg(std::string_view bits) {
    return kQpskPhasesDeg[static_cast<std::size_t>(qpsk_symbol_index(bits))];
}

double constellation_phase_deg(int symbol, int order) {
    if (order < 2)
        throw std::invalid_argument("modulation order must be at least 2");
    if (symbol < 0 || symbol >= order)
        throw std::invalid_argument("constituent symbol out of range for order " +
                                    std::to_string(order));
    if (order == 4)
        return kQpskPhasesDeg[static_cast<std::size_t>(symbol)];
    return wrap_degrees_180(360.0 * symbol / order + 180.0 / order);
}

std::vector<SymbolIndex> enumerate_symbols(int order) {
    if (order < 2)
        throw std::invalid_argument("modulation order must be at least 2");
    std::vector<SymbolIndex> symbols;
    symbols.reserve(static_cast<std::size_t>(order) * static_cast<std::size_t>(order));
    for (int s1 = 0; s1 < order; ++s1)
        for (int s2 = 0; s2 < order; ++s2)
            symbols.push_back({s1 * order + s2, s1, s2});
    return symbols;
}

namespace detail {

std::uint64_t splitmix64(std::uint64_t value) {
    value += 0x9e3779b97f4a7c15ULL;
    value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
    value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
    return value ^ (value >> 31);
}

double sidelobe_phase(std::uint64_t seed, std::uint64_t symbol, std::uint64_t direction,
                      std::uint64_t channel) {
    std::uint64_t hash = splitmix64(seed);
    hash = splitmix64(hash ^ (symbol + 0x0101010101010101ULL));
    hash = splitmix64(hash ^ (direction + 0x0202020202020202ULL));
    hash = splitmix64(hash ^ (channel + 0x0303030303030303ULL));
    // 53 high bits give a double in [0, 1).
    const double unit = static_cast<double>(hash >> 11) * 0x1.0p-53;
    return unit * 2.0 * std::numbers::pi;
}

}  // namespace detail

TargetSet build_targets(const SymbolIndex& symbol, const DesignSpec& spec, std::uint64_t seed) {
    if (spec.mainlobe_dirs.empty())
        throw std::invalid_argument("mainlobe grid must not be empty");
    if (symbol.composite != symbol.s1 * spec.modulation_order + symbol.s2 ||
        symbol.s1 < 0 || symbol.s1 >= spec.modulation_order ||
        symbol.s2 < 0 || symbol.s2 >= spec.modulation_order)
        throw std::invalid_argument("symbol index inconsistent with modulation order");

    const auto mainlobe_count = static_cast<Eigen::Index>(spec.mainlobe_dirs.size());
    const auto sidelobe_count = static_cast<Eigen::Index>(spec.sidelobe_dirs.size());

    TargetSet targets;
    targets.seed = seed;
    targets.mainlobe.resize(2 * mainlobe_count);
    targets.sidelobe.resize(2 * sidelobe_count);

    const std::array<double, 2> channel_phase_deg = {
        constellation_phase_deg(symbol.s1, spec.modulation_order),
        constellation_phase_deg(symbol.s2, spec.modulation_order),
    };
    for (int channel = 0; channel < 2; ++channel) {
        const cdouble point =
            std::polar(spec.constellation_magnitude, deg2rad(channel_phase_deg[channel]));
        targets.mainlobe.segment(channel * mainlobe_count, mainlobe_count).setConstant(point);
    }

    for (int channel = 0; channel < 2; ++channel)
        for (Eigen::Index d = 0; d < sidelobe_count; ++d) {
            const double phase = detail::sidelobe_phase(
                seed, static_cast<std::uint64_t>(symbol.composite),
                static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(channel));
            targets.sidelobe(channel * sidelobe_count + d) =
                std::polar(spec.sidelobe_magnitude, phase);
        }

    return targets;
}

}  // namespace poldm
