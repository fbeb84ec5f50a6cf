#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace prg {

constexpr int kMaxRank = 12;

// G(r,p,q,n) = G(r,p,n)/C_q where C_q is generated by c^{r/q}.
struct GroupParams {
    int r = 1, p = 1, q = 1, n = 1;
    int d0 = 1;          // gcd(p,q,n)
    uint64_t order = 1;  // r^n n! / (pq)

    bool operator==(const GroupParams&) const = default;
    std::string str() const;  // "r,p,q,n"
};

GroupParams make_group(int r, int p, int q, int n);
bool is_valid_tuple(int r, int p, int q, int n);
GroupParams parse_group(const std::string& s);
inline GroupParams with_p(const GroupParams& P, int p) { return make_group(P.r, p, P.q, P.n); }

// Colored permutation (π, x): the monomial matrix whose column i holds ζ^{x_i} in row π(i).
// Product: (π,x)(σ,y) = (πσ, z) with z_i = x_{σ(i)} + y_i.
struct Element {
    uint8_t n = 0;
    std::array<uint8_t, kMaxRank> perm{};  // 0-based images
    std::array<int32_t, kMaxRank> col{};   // residues mod r

    bool operator==(const Element& o) const;
    bool operator<(const Element& o) const;
};

struct ElementHash {
    size_t operator()(const Element& e) const;
};

// Arithmetic. All results are canonical: colors in [0,r) with col[0] < r/q.
void canonicalize(const GroupParams& P, Element& e);
Element identity(const GroupParams& P);
Element multiply(const GroupParams& P, const Element& a, const Element& b);
Element inverse(const GroupParams& P, const Element& a);
Element power(const GroupParams& P, const Element& a, int64_t k);
uint64_t element_order(const GroupParams& P, const Element& a);
Element tau(const GroupParams& P, const Element& a);
Element conjugate(const GroupParams& P, const Element& h, const Element& g);  // h g h^-1

// Δ reduced mod gcd(r, n r/q); delta_lift is the integer sum of canonical colors.
int64_t delta_modulus(const GroupParams& P);
int64_t delta(const GroupParams& P, const Element& a);
int64_t delta_lift(const Element& a);
std::vector<int> proj(const Element& a);

bool is_member(const GroupParams& P, const Element& a);
bool is_identity_perm(const Element& a);

// Builders. Input colors are reduced and the result canonicalized; membership is not checked.
Element make_element(const GroupParams& P, const std::vector<int>& perm0, const std::vector<int64_t>& colors);
Element diag(const GroupParams& P, const std::vector<int64_t>& colors);
Element perm_element(const GroupParams& P, const std::vector<int>& perm0);

// Standard generators. gen_simple(P,i) = s_i for 1 ≤ i < n; gen_s = (1, e1-e2);
// gen_t_pow(P,k) = (1, k e1); gen_c(P,k) = c^k.
Element gen_simple(const GroupParams& P, int i);
Element gen_s(const GroupParams& P);
Element gen_t_pow(const GroupParams& P, int64_t k);
Element gen_c(const GroupParams& P, int64_t k);
// s_1..s_{n-1}, s, t^p with identities dropped.
std::vector<Element> standard_generators(const GroupParams& P);

// Reinterpret an element under other parameters with the same r and n.
Element reparam(const GroupParams& to, const Element& e);

// Text syntax "(p1 ... pn | c1 ... cn)", permutation 1-based.
Element parse_element(const GroupParams& P, const std::string& s);
std::string format_element(const GroupParams& P, const Element& e);

// Dense indexing of G(r,p,q,n): index = rank(π)·(r^n/pq) + color slot. Identity has index 0.
uint64_t color_slots(const GroupParams& P);
uint64_t index_of(const GroupParams& P, const Element& e);
Element element_at(const GroupParams& P, uint64_t idx);

uint64_t lehmer_rank(const uint8_t* perm, int n);
void lehmer_unrank(uint64_t rank, int n, uint8_t* perm);

// Visits every element in index order; throws CapExceeded above the enumeration cap.
void for_each_element(const GroupParams& P, const std::function<void(uint64_t, const Element&)>& f);
std::vector<Element> enumerate(const GroupParams& P);

std::vector<Element> subgroup_N(const GroupParams& P);
std::vector<Element> subgroup_C(const GroupParams& P);
uint64_t center_scalar_order(const GroupParams& P);  // (r/pq)·gcd(p,n), n != 2 or generic

} // namespace prg
