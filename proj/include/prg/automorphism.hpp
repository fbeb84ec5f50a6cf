#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prg/group.hpp"

namespace prg {

struct AutSpec {
    enum class Kind { Alpha, Phi4, Ad, Tau, Composition, Table };
    Kind kind = Kind::Alpha;
    GroupParams G;
    int64_t j = 1, k = 0;
    int64_t z = 0;                   // z = c^z, with c^{2z} = 1
    Element g;                       // Ad(g), g ∈ G(r,1,q,n)
    std::vector<AutSpec> parts;      // parts[0] ∘ parts[1] ∘ ...
    std::shared_ptr<const std::vector<uint32_t>> table;  // images by dense index

    std::string describe() const;
};

// c^m is a legal z: c^m ∈ G(r,p,q,n) and c^{2m} = 1.
bool is_valid_z(const GroupParams& G, int64_t m);
// Exponents m in [0, r/q) with c^m a legal z.
std::vector<int64_t> z_choices(const GroupParams& G);
bool alpha_valid(const GroupParams& G, int64_t j, int64_t k);

AutSpec make_alpha(const GroupParams& G, int64_t j, int64_t k, int64_t z = 0);
bool phi4_defined(int r, int p, int q);
AutSpec make_phi4(int r, int p, int q);
AutSpec make_ad(const GroupParams& G, const Element& g);  // g given in G(r,1,q,n)
AutSpec make_tau(const GroupParams& G);
AutSpec make_table(const GroupParams& G, std::vector<uint32_t> images);

Element apply(const AutSpec& a, const Element& x);
AutSpec compose(const AutSpec& a, const AutSpec& b);  // a ∘ b

std::vector<Element> generator_images(const AutSpec& a);
bool same_on_generators(const AutSpec& a, const AutSpec& b);
std::vector<uint32_t> tabulate_aut(const AutSpec& a);  // enumeration cap applies

struct AutCheck {
    bool homomorphism = false;
    bool bijective = false;
};
// Exhaustive over generator edges of the Cayley graph.
AutCheck verify_automorphism(const AutSpec& a);

bool is_class_preserving(const AutSpec& a);
// h ∈ G with Ad(h) = a on generators.
std::optional<Element> find_inner(const AutSpec& a);
inline bool is_inner(const AutSpec& a) { return find_inner(a).has_value(); }
// g ∈ G(r,1,q,n) with Ad(g) = a on generators.
std::optional<Element> find_ambient_inner(const AutSpec& a);

// The power-of-two congruence r ≡ p ≡ q ≡ n ≡ 2^i (mod 2^{i+1}), i > 0.
bool two_adic_pattern(const GroupParams& G);

// Ad(t^a): hypothesis (Ad(t^a)(π) ~ π for all π ∈ S_n) and which branch gives h.
struct AdPowerVerdict {
    bool hypothesis = false;       // checked by conjugacy on all of S_n
    bool congruence = false;       // a + (n+1)nkr/2q ≡ 0 mod gcd(p,n) for some admissible k
    int branch = 0;                // 1: h ∈ G(r,p,q,n); 2: h ∈ G(r,p/2,q,n) with the 2-adic pattern; 0: neither
    bool witness_verified = false; // Ad(t^a c^j) equals Ad(t^a) and t^a c^j lies in the claimed group
    int64_t j = 0;
};
AdPowerVerdict ad_power_condition(const GroupParams& G, int64_t a);

// The twelve tuples where N is not characteristic.
bool diagonal_exception(const GroupParams& G);
struct CharacteristicResult {
    bool characteristic = false;
    bool brute_force = false;  // false: criterion only (order above the Aut-search cap)
};
CharacteristicResult is_diagonal_characteristic(const GroupParams& G);

// ν = Ad(g) ∘ φ ∘ α_{j,k,z}.
struct AutReport {
    bool is_inner = false;
    bool is_class_preserving = false;
    bool decomposed = false;
    Element g;
    bool phi = false;
    int64_t j = 1, k = 0, z = 0;
};
AutReport decompose_automorphism(const AutSpec& nu);
AutSpec recompose(const GroupParams& G, const AutReport& rep);

// Automorphisms found by generator-image search, one or more per outer class
// (the first generator's image is restricted to class representatives).
std::vector<AutSpec> automorphisms_mod_inner(const GroupParams& G, bool require_N_invariant = false);

// Class-preserving automorphisms that are not inner, modulo inner automorphisms.
// Returns the first one found, if any.
std::optional<AutSpec> find_class_preserving_outer(const GroupParams& G);

} // namespace prg
