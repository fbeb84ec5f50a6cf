#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "prg/group.hpp"

namespace prg {

// A finite group given by dense indices 0..N-1 with 0 the identity.
struct FiniteGroup {
    uint32_t N = 1;
    std::function<uint32_t(uint32_t, uint32_t)> mul;
    std::vector<uint32_t> inv;
    std::vector<uint32_t> gens;
};

// G(r,p,q,n) with materialized elements; element i has index i.
struct EnumeratedGroup {
    GroupParams P;
    std::vector<Element> elems;

    uint32_t size() const { return uint32_t(elems.size()); }
    uint32_t index(const Element& e) const { return uint32_t(index_of(P, e)); }
    uint32_t mul(uint32_t a, uint32_t b) const { return index(multiply(P, elems[a], elems[b])); }
    FiniteGroup as_finite_group() const;
};

EnumeratedGroup enumerate_group(const GroupParams& P);

// Group from an explicit multiplication table (row-major, N×N).
FiniteGroup from_table(std::vector<uint32_t> table, uint32_t N, std::vector<uint32_t> gens);

// Symmetric group S_m, or a subgroup given by generating permutations, as a FiniteGroup.
// Elements are indexed by Lehmer rank inside S_m, then compacted.
struct PermGroup {
    int m = 0;
    std::vector<std::vector<uint8_t>> elems;
    FiniteGroup fg;
};
PermGroup perm_group(int m, const std::vector<std::vector<uint8_t>>& gens);

struct ClassStructure {
    std::vector<uint32_t> cls;       // element -> class id
    std::vector<uint32_t> reps;      // minimal index in class
    std::vector<uint64_t> sizes;
    std::vector<uint32_t> inv_class; // class of x^{-1}
    uint32_t count() const { return uint32_t(reps.size()); }
};

// Conjugacy classes by orbit closure under the generators; class 0 is the identity,
// classes ordered by minimal element index.
ClassStructure compute_classes(const FiniteGroup& G);

// Subgroup generated by `gens` as a sorted index list.
std::vector<uint32_t> generated_subgroup(const FiniteGroup& G, const std::vector<uint32_t>& gens);
bool is_subgroup(const FiniteGroup& G, const std::vector<uint32_t>& H);

// Normal closure of the commutators of a generating set of H, inside H (sorted index list).
std::vector<uint32_t> derived_subgroup(const FiniteGroup& G, const std::vector<uint32_t>& H);

// Extends gens[i] -> imgs[i] along every Cayley-graph edge of A. Returns the full map when it is
// consistent (hence a homomorphism A -> B), else an empty vector.
std::vector<uint32_t> extend_homomorphism(const FiniteGroup& A, const std::vector<uint32_t>& gens,
                                          const FiniteGroup& B, const std::vector<uint32_t>& imgs);

// A short generating set found by greedy random search (deterministic for a seed).
std::vector<uint32_t> small_generating_set(const FiniteGroup& G, uint64_t seed = 1);

std::vector<uint32_t> element_orders(const FiniteGroup& G);

} // namespace prg
