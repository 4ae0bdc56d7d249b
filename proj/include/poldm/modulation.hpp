#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "poldm/design_spec.hpp"

namespace poldm {

// One composite symbol: the pair of constituent symbols carried by the two
// polarisation channels, flattened row-major as composite = s1 * order + s2.
struct SymbolIndex {
    int composite = 0;
    int s1 = 0;
    int s2 = 0;

    static SymbolIndex from_flat(int composite, int order);
    static SymbolIndex from_pair(int s1, int s2, int order);
};

// Desired responses for one composite symbol. Both vectors follow the
// steering-matrix column order: all directions under the first polarisation,
// then all directions under the second.
struct TargetSet {
    Eigen::VectorXcd mainlobe;  // length 2r
    Eigen::VectorXcd sidelobe;  // length 2(R - r)
    std::uint64_t seed = 0;
};

// Gray-coded QPSK lookup: "00" -> 45, "01" -> 135, "11" -> -45, "10" -> -135.
double qpsk_phase_deg(std::string_view bits);

// Position of a QPSK bit label in the constellation table above.
int qpsk_symbol_index(std::string_view bits);

// Bit label of constellation position `symbol` (order 4 only).
std::string qpsk_symbol_label(int symbol);

// Constellation phase of constituent symbol k. Order 4 uses the Gray-coded
// QPSK lookup; other orders place symbols at 360*k/order + 180/order degrees.
double constellation_phase_deg(int symbol, int order);

// All order^2 composite symbols in row-major (s1, s2) order.
std::vector<SymbolIndex> enumerate_symbols(int order);

// Desired-response targets for one composite symbol: constellation points
// replicated across the mainlobe grid, and fixed-magnitude sidelobe entries
// whose phases are drawn per (seed, symbol, direction, channel) so the result
// does not depend on evaluation order.
TargetSet build_targets(const SymbolIndex& symbol, const DesignSpec& spec, std::uint64_t seed);

namespace detail {

std::uint64_t splitmix64(std::uint64_t value);

// Uniform phase in [0, 2*pi), decorrelated across all four key components.
double sidelobe_phase(std::uint64_t seed, std::uint64_t symbol, std::uint64_t direction,
                      std::uint64_t channel);

}  // namespace detail

}  // namespace poldm
