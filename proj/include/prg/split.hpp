#pragma once

#include <cstdint>
#include <vector>

#include "prg/group.hpp"

namespace prg {

using Partition = std::vector<int>;  // nonincreasing parts

// (λ_0, ..., λ_{r-1}) with Σ|λ_i| = n; indexes Irr(G(r,n)).
struct PartitionTuple {
    std::vector<Partition> parts;
    int64_t weight() const;  // Σ i |λ_i|
};

// Tuples indexing Irr(G(r,1,q,n)): those with q | Σ i|λ_i|.
std::vector<PartitionTuple> irr_partition_index(int r, int q, int n);

// Some divisor d > 1 of p has λ_i = λ_{i + r/d} for all i.
bool is_split(const PartitionTuple& t, int p);

// Split representations exist in G(r,p,q,n):
//  - by the closed-form parameter criterion;
bool has_split_representations(const GroupParams& P);
//  - by the partition-tuple index of the ambient G(r,1,q,n);
bool has_split_by_tuples(const GroupParams& P);
//  - by restriction multiplicities: Σ_χ <Res χ, Res χ>_H = p · k_H(G~), so a split exists iff
//    p · k_H(G~) > k(G~), with G~ = G(r,1,q,n) and k_H the number of G~-classes inside H.
struct AmbientClassCounts {
    uint64_t k = 0;    // classes of G(r,1,q,n)
    uint64_t k_H = 0;  // those contained in G(r,p,q,n)
};
AmbientClassCounts ambient_class_counts(const GroupParams& P);
bool has_split_by_restriction(const GroupParams& P);

// Cycle types of G(r,n): multisets of (length, color).
std::vector<std::vector<std::pair<int, int>>> cycle_types(int r, int n);

} // namespace prg
