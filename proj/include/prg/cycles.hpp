#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prg/group.hpp"

namespace prg {

struct ColoredCycle {
    std::vector<int> cycle;  // 0-based, anchored at its smallest element; singleton for length one
    std::vector<int64_t> colors;  // z_{i_j}, aligned with cycle
    int length = 0;
    int64_t color = 0;       // Δ of the cycle, mod r
    int64_t s = 0;           // Σ j·z_{i_j} mod gcd(a, l, r)
    int64_t s_modulus = 1;
};

struct CycleData {
    std::vector<ColoredCycle> cycles;
    int64_t d_p = 1;
    int64_t s_p = 0;
    // Modulus that actually separates classes: 1 when g has a fixed point of color 0
    // (conjugating by a color on that point shifts Δ freely), d_p otherwise.
    int64_t d_eff = 1;
    int64_t s_eff = 0;
};

// Colored cycle decomposition of a lift in G(r,p,n); the q of P is ignored.
// Fixed points of color 0 are not colored cycles.
CycleData decompose(const GroupParams& P, const Element& g);

// Reassemble the cycles into an element of G(r,1,1,n).
Element reassemble(const GroupParams& P, const CycleData& d);

// Multiset of (length, color) over all π-cycles, fixed points included.
std::vector<std::pair<int, int64_t>> cycle_type(const GroupParams& P, const Element& g);

bool conjugate_in_Grn(const GroupParams& P, const Element& g, const Element& h);
bool conjugate_in_Grpn(const GroupParams& P, const Element& g, const Element& h);
bool conjugate_in_quotient(const GroupParams& P, const Element& g, const Element& h);

struct ClassInfo {
    Element rep;
    uint64_t size = 0;
    int64_t s_p = 0, d_p = 1;
};

// Classes in order of their minimal element index.
std::vector<ClassInfo> conjugacy_classes(const GroupParams& P);

} // namespace prg
