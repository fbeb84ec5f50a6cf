#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prg/automorphism.hpp"
#include "prg/finite_group.hpp"
#include "prg/group.hpp"

namespace prg {

// ν = Ad(g) ∘ τ, or Ad(g) alone when with_tau is false; g ∈ G(r,1,q,n), g.n == 0 means g = 1.
struct NuChoice {
    Element g;
    bool with_tau = true;
    std::string str(const GroupParams& G) const;
};
NuChoice nu_tau();
NuChoice nu_ad_t(const GroupParams& G, int64_t i, bool with_tau = true);  // g = t^i
AutSpec nu_spec(const GroupParams& G, const NuChoice& nu);
bool is_involutive(const GroupParams& G, const NuChoice& nu);

struct TwistedClass {
    uint32_t rep = 0;                  // minimal index in the class
    std::vector<uint32_t> members;     // sorted indices
    std::vector<uint32_t> centralizer; // sorted indices of C_{G,ν}(rep)
};

struct TwistedData {
    std::shared_ptr<const EnumeratedGroup> E;
    NuChoice nu;
    std::vector<uint32_t> nu_table;    // ν on dense indices
    std::vector<uint32_t> involutions; // I_{G,ν}, sorted
    std::vector<TwistedClass> classes;
    const GroupParams& params() const { return E->P; }
};

// Exact sets; enumeration cap applies.
std::vector<Element> twisted_involutions(const GroupParams& G, const NuChoice& nu = nu_tau());
TwistedData twisted_classes(const GroupParams& G, const NuChoice& nu = nu_tau());

enum class Parity { Symmetric, Antisymmetric };
// Parity of the matrix lifts; NotAnAbsoluteInvolution unless ω τ(ω) = 1.
Parity classify_absolute(const GroupParams& G, const Element& w);
// Closed-form criterion.
bool has_antisymmetric(const GroupParams& G);
// Scan over all absolute involutions.
bool has_antisymmetric_brute(const GroupParams& G);
// The witness (1,2)(3,4)... with colors (a, a+r/2, 0, r/2, ...) when the criterion allows one.
std::optional<Element> antisymmetric_witness(const GroupParams& G);

// A linear character of a subgroup, given on generators as ζ_den^{num}.
struct ModelEntry {
    Element rep;
    std::vector<Element> gens;
    std::vector<int64_t> num;
    int64_t den = 1;
};
struct ModelDatum {
    GroupParams G;
    NuChoice nu;
    std::vector<ModelEntry> entries;
};
struct ModelCheck {
    bool ok = false;
    std::vector<int64_t> multiplicities;  // per irreducible of G
};
// BadModelShape when the entries do not cover each twisted class exactly once, a subgroup is not
// the twisted centralizer of its representative, or the values do not define a linear character.
ModelCheck verify_model(const ModelDatum& data);

// The model of G(r,1,1,n), r odd, from stabilizers of the block matrices J_{2i} ⊕ I.
ModelDatum apr_model(int r, int n);
// Explicit rank-2 models of G(r,2,q,2), q even: case 1 needs r/2 odd, case 2 r/2 even and r/q odd,
// case 3 r/q even.
ModelDatum rank2_known_model(int r, int q, int which);

enum class GimStatus { Yes, No, UnknownOpen };
std::string to_string(GimStatus s);

struct GimResult {
    GimStatus status = GimStatus::UnknownOpen;
    std::string source;  // "theorem", "brute-force" or "both"
    std::string branch;
    std::vector<std::string> notes;
    std::optional<ModelDatum> witness;
    std::vector<NuChoice> tried;
};

// The ν to try. τ alone unless n ≥ 3 and class-preserving outer automorphisms or the six
// exceptional tuples allow others; then (and always with `all`) every involutive Ad(g)∘α,
// g ∈ G(r,1,q,n), α ∈ {1,τ}, one per conjugacy class under G(r,1,q,n).
std::vector<NuChoice> nu_candidates(const GroupParams& G, bool all = false);
// Exhaustive over one linear character per twisted centralizer. Cap: caps().gim.
GimResult gim_search(const GroupParams& G, bool all_nu = false);
GimResult gim_search_with(const GroupParams& G, const std::vector<NuChoice>& nus);

// Parameter-only classification with conjecture annotations.
GimResult classify(const GroupParams& G);

// Parameter condition equivalent to: no split representations and no antisymmetric involutions.
bool no_split_no_antisymmetric_condition(const GroupParams& G);
bool conjecture_exception(const GroupParams& G);
// Either conjectural condition: the one above, or self-dual with gcd(p,n) ≤ 2.
bool conjecture_predicts_gim(const GroupParams& G);

// Descent of a model of L = G(r,p,1,n) to L/N with N = <c^{r/m}> of order m, for ν = τ.
enum class CondState { Holds, NotApplicable, Fails, Unknown };
std::string to_string(CondState s);
struct DescentCheck {
    CondState cond_i = CondState::Unknown;
    bool cond_ii = false;        // every ω with ωN a twisted involution is one
    bool cond_ii_coset = false;  // every such coset contains a twisted involution
    uint64_t checked = 0;        // elements examined
};
DescentCheck quotient_descent_check(int r, int p, int n, int m);

} // namespace prg
