#pragma once

#include <cstdint>

namespace prg {

struct Caps {
    uint64_t enumeration = 200000;
    uint64_t table = 20000;
    uint64_t table_classes = 2000;
    uint64_t gim = 5000;
    uint64_t aut = 500;
};

// Process-wide caps. Initialized once from PROJREF_ORDER_CAP (enumeration cap);
// mutate only before spawning worker threads.
Caps& caps();

} // namespace prg
