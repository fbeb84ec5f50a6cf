#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prg/group.hpp"

namespace prg {

// G(r,p,q,n) against G(r,p2,q2,n) with pq = p2 q2.
struct IsoQuery {
    int r = 1, n = 1;
    int p = 1, q = 1, p2 = 1, q2 = 1;
    GroupParams left() const { return make_group(r, p, q, n); }
    GroupParams right() const { return make_group(r, p2, q2, n); }
};

// Throws ParamMismatch unless r and n agree and pq = p2 q2.
IsoQuery make_iso_query(const GroupParams& a, const GroupParams& b);

// rn/pq = eta * delta, delta supported on the primes whose multiplicity in p and p2 differs.
struct SpecialPrimes {
    std::vector<int64_t> primes;
    int64_t eta = 1, delta = 1;
};
SpecialPrimes special_primes(const IsoQuery& Q);

bool gcd_criterion(const IsoQuery& Q);  // gcd(p,n) = gcd(p2,n) and gcd(q,n) = gcd(q2,n)

struct IsoVerdict {
    bool isomorphic = false;
    std::string branch;  // rule that decided: "gcd-criterion" or, for n = 2 only, "rank2-parity"
    std::string reason;
};
IsoVerdict isomorphic(const IsoQuery& Q);
bool is_self_dual(const GroupParams& P);

// Smallest nonnegative x meeting the per-prime congruences; NoSolution if the gcd criterion fails.
int64_t crt_solve(const IsoQuery& Q);
bool crt_conditions_hold(const IsoQuery& Q, int64_t x);
// The derived divisibility (part 1) and non-vanishing (part 2) conditions.
bool system_conditions_hold(const IsoQuery& Q, int64_t x);
// Moduli of the per-prime congruences; x only matters modulo their product.
int64_t crt_modulus(const IsoQuery& Q);

struct IsoMap {
    GroupParams from, to;
    std::function<Element(const Element&)> apply;
    std::string kind;  // "identity", "crt", "coprime-shear", "coprime-reduced", "chain", "inverse", "search"
    int64_t x = 0;     // CRT integer, when used
    int64_t d = 0;     // shear parameter r/p', when used
    int64_t eta = 1, delta = 1;
};

// g -> g·c^{Δ(g) x / p}. PreconditionFailed unless the gcd criterion holds.
IsoMap explicit_isomorphism(const IsoQuery& Q);
// G(r,p,1,2) -> G(r,1,p,2) when p or r/p is odd.
IsoMap rank2_coprime_map(int r, int p);
// Any explicit isomorphism when isomorphic(Q) holds; PreconditionFailed otherwise.
IsoMap find_isomorphism(const IsoQuery& Q);

IsoMap compose(const IsoMap& first, const IsoMap& second);
// Inverse by tabulating the map (enumeration cap applies).
IsoMap invert(const IsoMap& m);

struct MapCheck {
    bool homomorphism = false;
    bool bijective = false;
    bool exhaustive = false;  // false: random samples only, bijectivity not checked
};
// Exhaustive over generator edges up to the enumeration cap, sampled beyond it.
MapCheck verify_map(const IsoMap& m, uint64_t samples = 20000);

struct InvariantValue {
    uint64_t value = 0;
    bool from_formula = false;
};
InvariantValue center_order(const GroupParams& P);
InvariantValue abelianization_order(const GroupParams& P);
uint64_t center_order_brute(const GroupParams& P);
uint64_t abelianization_order_brute(const GroupParams& P);

struct Invariants {
    uint64_t center = 0, abelianization = 0;
    std::vector<std::pair<int64_t, uint64_t>> power_images;  // (e, |{g^e}|) for e | 2r·lcm(1..n)
};
Invariants compute_invariants(const GroupParams& P);
// Name of the first differing invariant, if any.
std::optional<std::string> invariant_mismatch(const GroupParams& a, const GroupParams& b);

// Generator-image backtracking; capped at order 500.
std::optional<IsoMap> brute_isomorphism(const GroupParams& a, const GroupParams& b);

// G = G(r,δp,q,n) × C_δ: well-definedness, orders and trivial intersection.
struct DecCheck {
    bool well_defined = false;
    bool orders_match = false;
    bool trivial_intersection = false;
    bool ok() const { return well_defined && orders_match && trivial_intersection; }
};
DecCheck check_decomposition(const IsoQuery& Q);

struct Certificate {
    IsoVerdict verdict;
    bool certified = false;  // explicit map verified, or an invariant differs
    std::string evidence;
    std::optional<IsoMap> map;
};
Certificate certify(const IsoQuery& Q);

} // namespace prg
