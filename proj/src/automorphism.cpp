#include "prg/automorphism.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "prg/config.hpp"
#include "prg/cycles.hpp"
#include "prg/errors.hpp"
#include "prg/finite_group.hpp"
#include "prg/numtheory.hpp"

namespace prg {

namespace {

GroupParams ambient(const GroupParams& G) { return make_group(G.r, 1, G.q, G.n); }

int inversions(const Element& e)
{
    int inv = 0;
    for (int i = 0; i < e.n; ++i)
        for (int j = i + 1; j < e.n; ++j)
            inv += e.perm[i] > e.perm[j];
    return inv;
}

Element apply_alpha(const AutSpec& a, const Element& x)
{
    const GroupParams& G = a.G;
    const int64_t shift = (delta_lift(x) / G.d0) * a.k + (inversions(x) & 1 ? a.z : 0);
    Element y = x;
    for (int i = 0; i < G.n; ++i)
        y.col[i] = int32_t(nt::mod(a.j * x.col[i] + shift, G.r));
    canonicalize(G, y);
    return y;
}

// φ on permutations is computed in G(r,1,q,4), where t_i and the scalar factor live.
Element phi_simple(const GroupParams& A, int i)
{
    const int r = A.r;
    std::vector<int64_t> cols(4, 0);
    cols[(i + 1) % 4] = r / 2;  // t_{i+2}, 1-based i
    Element t = diag(A, cols);
    return multiply(A, t, gen_simple(A, i));
}

Element apply_phi4(const AutSpec& a, const Element& x)
{
    const GroupParams& G = a.G;
    const GroupParams A = ambient(G);
    const bool scalar = (G.r / G.p) % 2 == 1;
    // Word for the permutation part: right-multiply by descents until the identity.
    Element cur = perm_element(A, std::vector<int>(x.perm.begin(), x.perm.begin() + G.n));
    std::vector<int> word;
    while (!is_identity_perm(cur)) {
        const int before = inversions(cur);
        for (int i = 1; i < G.n; ++i) {
            Element nxt = multiply(A, cur, gen_simple(A, i));
            if (inversions(nxt) < before) {
                cur = nxt;
                word.push_back(i);
                break;
            }
        }
    }
    // cur·s_{w1}···s_{wm} = 1, so σ = s_{wm}···s_{w1}.
    Element img = identity(A);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        Element f = phi_simple(A, *it);
        if (scalar)
            f = multiply(A, f, gen_c(A, G.r / (2 * G.q)));
        img = multiply(A, img, f);
    }
    // x = σ·(1,x) with σ = (π,0).
    Element sig = perm_element(A, std::vector<int>(x.perm.begin(), x.perm.begin() + G.n));
    Element d = multiply(A, inverse(A, sig), reparam(A, x));
    Element y = multiply(A, img, d);
    return reparam(G, y);
}

void check_same(const GroupParams& a, const GroupParams& b)
{
    if (!(a == b))
        throw ParamMismatch("automorphisms of different groups: " + a.str() + " vs " + b.str());
}

// g in H (ambient or G itself) with g·from[i]·g^-1 = to[i] for all i. Candidates are filtered
// by the permutation parts first, then only the color slots of matching permutations are tried.
std::optional<Element> find_conjugator(const GroupParams& H, const GroupParams& G, const std::vector<Element>& from,
                                       const std::vector<Element>& to)
{
    const int n = G.n;
    std::vector<Element> fromH, toH;
    for (size_t i = 0; i < from.size(); ++i) {
        fromH.push_back(reparam(H, from[i]));
        toH.push_back(reparam(H, to[i]));
    }
    const uint64_t slots = color_slots(H);
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        Element ps = perm_element(H, sigma);
        bool ok = true;
        for (size_t i = 0; i < fromH.size() && ok; ++i) {
            Element c = conjugate(H, ps, fromH[i]);
            ok = std::equal(c.perm.begin(), c.perm.begin() + n, toH[i].perm.begin());
        }
        if (!ok)
            continue;
        uint8_t pm[kMaxRank];
        for (int i = 0; i < n; ++i)
            pm[i] = uint8_t(sigma[i]);
        const uint64_t base = lehmer_rank(pm, n) * slots;
        for (uint64_t s = 0; s < slots; ++s) {
            Element h = element_at(H, base + s);
            bool all = true;
            for (size_t i = 0; i < fromH.size() && all; ++i)
                all = conjugate(H, h, fromH[i]) == toH[i];
            if (all)
                return h;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return std::nullopt;
}

std::vector<std::vector<int>> partitions_of(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxp) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(left, maxp); k >= 1; --k) {
            cur.push_back(k);
            rec(left - k, k);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

// A permutation of the given cycle type, with each cycle (a, a+1, ..., b) inverted.
std::vector<int> perm_of_type(const std::vector<int>& type)
{
    std::vector<int> perm;
    int start = 0;
    for (int len : type) {
        for (int i = 0; i < len; ++i)
            perm.push_back(start + (i + len - 1) % len);
        start += len;
    }
    return perm;
}

} // namespace

std::string AutSpec::describe() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::Alpha: os << "alpha(j=" << j << ",k=" << k << ",z=c^" << z << ")"; break;
    case Kind::Phi4: os << "phi4"; break;
    case Kind::Ad: os << "Ad" << format_element(ambient(G), g); break;
    case Kind::Tau: os << "tau"; break;
    case Kind::Table: os << "table"; break;
    case Kind::Composition:
        for (size_t i = 0; i < parts.size(); ++i)
            os << (i ? " o " : "") << parts[i].describe();
        break;
    }
    return os.str();
}

bool is_valid_z(const GroupParams& G, int64_t m)
{
    const int64_t rq = G.r / G.q;
    return nt::mod(int64_t(G.n) * m, G.p) == 0 && nt::mod(2 * m, rq) == 0;
}

std::vector<int64_t> z_choices(const GroupParams& G)
{
    std::vector<int64_t> out;
    for (int64_t m = 0; m < G.r / G.q; ++m)
        if (is_valid_z(G, m))
            out.push_back(m);
    return out;
}

bool alpha_valid(const GroupParams& G, int64_t j, int64_t k)
{
    const int64_t rn_pq = int64_t(G.r) * G.n / (int64_t(G.p) * G.q);
    return nt::gcd(nt::mod(j, G.r), G.r) == 1 &&
           nt::gcd(std::abs(int64_t(G.n) * k / G.d0 + j), rn_pq, G.r / G.q) == 1;
}

AutSpec make_alpha(const GroupParams& G, int64_t j, int64_t k, int64_t z)
{
    if (G.n < 3)
        throw InvalidParameters("alpha requires n >= 3");
    if (nt::gcd(nt::mod(j, G.r), G.r) != 1)
        throw InvalidParameters("gcd(j, r) = " + std::to_string(nt::gcd(nt::mod(j, G.r), G.r)) + " != 1");
    const int64_t rn_pq = int64_t(G.r) * G.n / (int64_t(G.p) * G.q);
    const int64_t g2 = nt::gcd(std::abs(int64_t(G.n) * k / G.d0 + j), rn_pq, G.r / G.q);
    if (g2 != 1)
        throw InvalidParameters("gcd(nk/d0 + j, rn/pq, r/q) = " + std::to_string(g2) + " != 1");
    if (!is_valid_z(G, z))
        throw InvalidParameters("z = c^" + std::to_string(z) + " is not an element of order at most 2 in C");
    AutSpec a;
    a.kind = AutSpec::Kind::Alpha;
    a.G = G;
    a.j = nt::mod(j, G.r);
    a.k = k;
    a.z = nt::mod(z, G.r / G.q);
    return a;
}

bool phi4_defined(int r, int p, int q)
{
    if (!is_valid_tuple(r, p, q, 4) || q % 2)
        return false;
    if ((r / p) % 2 == 1)
        return (r / q) % 2 == 0 && ((4 * r) % (p * q) == 0) && ((4 * r) / (p * q)) % 2 == 1;
    return true;
}

AutSpec make_phi4(int r, int p, int q)
{
    if (!is_valid_tuple(r, p, q, 4))
        throw PreconditionFailed("G(" + std::to_string(r) + "," + std::to_string(p) + "," + std::to_string(q) +
                                 ",4) is not a valid group");
    if (q % 2)
        throw PreconditionFailed("q must be even");
    if ((r / p) % 2 == 1) {
        if ((r / q) % 2)
            throw PreconditionFailed("r/p is odd but r/q is odd");
        if ((4 * r) % (p * q) || ((4 * r) / (p * q)) % 2 == 0)
            throw PreconditionFailed("r/p is odd but 4r/pq is not an odd integer");
    }
    AutSpec a;
    a.kind = AutSpec::Kind::Phi4;
    a.G = make_group(r, p, q, 4);
    return a;
}

AutSpec make_ad(const GroupParams& G, const Element& g)
{
    AutSpec a;
    a.kind = AutSpec::Kind::Ad;
    a.G = G;
    a.g = reparam(ambient(G), g);
    return a;
}

AutSpec make_tau(const GroupParams& G)
{
    AutSpec a;
    a.kind = AutSpec::Kind::Tau;
    a.G = G;
    return a;
}

AutSpec make_table(const GroupParams& G, std::vector<uint32_t> images)
{
    if (images.size() != G.order)
        throw ParamMismatch("automorphism table has the wrong size");
    AutSpec a;
    a.kind = AutSpec::Kind::Table;
    a.G = G;
    a.table = std::make_shared<const std::vector<uint32_t>>(std::move(images));
    return a;
}

Element apply(const AutSpec& a, const Element& x)
{
    switch (a.kind) {
    case AutSpec::Kind::Alpha: return apply_alpha(a, x);
    case AutSpec::Kind::Phi4: return apply_phi4(a, x);
    case AutSpec::Kind::Ad: {
        const GroupParams A = ambient(a.G);
        return reparam(a.G, conjugate(A, a.g, reparam(A, x)));
    }
    case AutSpec::Kind::Tau: return tau(a.G, x);
    case AutSpec::Kind::Table: return element_at(a.G, (*a.table)[index_of(a.G, x)]);
    case AutSpec::Kind::Composition: {
        Element y = x;
        for (auto it = a.parts.rbegin(); it != a.parts.rend(); ++it)
            y = apply(*it, y);
        return y;
    }
    }
    return x;
}

AutSpec compose(const AutSpec& a, const AutSpec& b)
{
    check_same(a.G, b.G);
    AutSpec c;
    c.kind = AutSpec::Kind::Composition;
    c.G = a.G;
    for (const auto* s : {&a, &b}) {
        if (s->kind == AutSpec::Kind::Composition)
            c.parts.insert(c.parts.end(), s->parts.begin(), s->parts.end());
        else
            c.parts.push_back(*s);
    }
    return c;
}

std::vector<Element> generator_images(const AutSpec& a)
{
    std::vector<Element> out;
    for (const auto& s : standard_generators(a.G))
        out.push_back(apply(a, s));
    return out;
}

bool same_on_generators(const AutSpec& a, const AutSpec& b)
{
    check_same(a.G, b.G);
    return generator_images(a) == generator_images(b);
}

std::vector<uint32_t> tabulate_aut(const AutSpec& a)
{
    std::vector<uint32_t> t(a.G.order);
    for_each_element(a.G, [&](uint64_t i, const Element& e) { t[i] = uint32_t(index_of(a.G, apply(a, e))); });
    return t;
}

AutCheck verify_automorphism(const AutSpec& a)
{
    AutCheck out;
    const GroupParams& G = a.G;
    std::vector<Element> img;
    bool members = true;
    for_each_element(G, [&](uint64_t, const Element& e) {
        Element y = apply(a, e);
        members &= is_member(G, y);
        img.push_back(y);
    });
    if (!members)
        return out;
    std::vector<uint32_t> t(img.size());
    for (size_t i = 0; i < img.size(); ++i)
        t[i] = uint32_t(index_of(G, img[i]));
    const auto gens = standard_generators(G);
    std::vector<uint32_t> gi;
    for (const auto& s : gens)
        gi.push_back(uint32_t(index_of(G, s)));
    out.homomorphism = true;
    for (uint64_t x = 0; x < G.order && out.homomorphism; ++x) {
        const Element ex = element_at(G, x);
        for (size_t s = 0; s < gens.size(); ++s) {
            const uint64_t xs = index_of(G, multiply(G, ex, gens[s]));
            if (!(img[xs] == multiply(G, img[x], img[gi[s]]))) {
                out.homomorphism = false;
                break;
            }
        }
    }
    std::vector<char> hit(G.order, 0);
    out.bijective = true;
    for (uint32_t y : t) {
        if (hit[y])
            out.bijective = false;
        hit[y] = 1;
    }
    return out;
}

bool is_class_preserving(const AutSpec& a)
{
    if (a.G.order > caps().enumeration)
        throw CapExceeded("class-preservation check is capped at the enumeration cap");
    for (const auto& c : conjugacy_classes(a.G))
        if (!conjugate_in_quotient(a.G, apply(a, c.rep), c.rep))
            return false;
    return true;
}

std::optional<Element> find_inner(const AutSpec& a)
{
    if (a.G.order > caps().enumeration)
        throw CapExceeded("inner-ness search is capped at the enumeration cap");
    return find_conjugator(a.G, a.G, standard_generators(a.G), generator_images(a));
}

std::optional<Element> find_ambient_inner(const AutSpec& a)
{
    const GroupParams A = ambient(a.G);
    if (A.order > caps().enumeration)
        throw CapExceeded("ambient inner-ness search is capped at the enumeration cap");
    return find_conjugator(A, a.G, standard_generators(a.G), generator_images(a));
}

bool two_adic_pattern(const GroupParams& G)
{
    const int v = nt::valuation(G.r, 2);
    return v > 0 && nt::valuation(G.p, 2) == v && nt::valuation(G.q, 2) == v && nt::valuation(G.n, 2) == v;
}

AdPowerVerdict ad_power_condition(const GroupParams& G, int64_t a)
{
    AdPowerVerdict v;
    const GroupParams A = ambient(G);
    const Element t = gen_t_pow(A, a);
    // Ad(t^a) maps S_n-conjugates of π to G-conjugates of its image, so one π per cycle type suffices.
    v.hypothesis = true;
    for (const auto& type : partitions_of(G.n)) {
        Element pi = perm_element(G, perm_of_type(type));
        Element img = reparam(G, conjugate(A, t, reparam(A, pi)));
        if (!conjugate_in_quotient(G, img, pi)) {
            v.hypothesis = false;
            break;
        }
    }
    const int64_t g = nt::gcd(G.p, G.n);
    const int64_t tri = int64_t(G.n) * (G.n + 1) / 2;
    for (int64_t k = 1; k <= G.q && !v.congruence; ++k)
        if ((int64_t(G.n) * k) % G.q == 0 && nt::mod(a + tri * k * (G.r / G.q), g) == 0)
            v.congruence = true;

    auto witness = [&](int64_t pp) {
        for (int64_t j = 0; j < pp; ++j)
            if (nt::mod(a + j * G.n, pp) == 0)
                return j;
        return int64_t(-1);
    };
    int64_t target_p = 0;
    if (nt::mod(a, g) == 0) {
        v.branch = 1;
        target_p = G.p;
    } else if (two_adic_pattern(G) && nt::mod(a, nt::gcd(G.p / 2, G.n)) == 0) {
        v.branch = 2;
        target_p = G.p / 2;
    }
    if (v.branch) {
        v.j = witness(target_p);
        const Element h = multiply(A, t, gen_c(A, v.j));
        const GroupParams H = make_group(G.r, int(target_p), G.q, G.n);
        bool same = true;
        for (const auto& s : standard_generators(G))
            same &= conjugate(A, h, reparam(A, s)) == conjugate(A, t, reparam(A, s));
        v.witness_verified = v.j >= 0 && same && is_member(H, reparam(H, h));
    }
    return v;
}

bool diagonal_exception(const GroupParams& G)
{
    static const int ex[12][4] = {{2, 1, 1, 2}, {2, 2, 1, 2}, {2, 1, 2, 2}, {4, 1, 2, 2}, {4, 2, 1, 2}, {4, 2, 2, 2},
                                  {4, 2, 4, 2}, {4, 4, 2, 2}, {3, 3, 1, 3}, {3, 3, 3, 3}, {2, 2, 1, 4}, {2, 2, 2, 4}};
    for (const auto& e : ex)
        if (G.r == e[0] && G.p == e[1] && G.q == e[2] && G.n == e[3])
            return true;
    return false;
}

namespace {

struct AutSearch {
    EnumeratedGroup E;
    FiniteGroup F;
    std::vector<uint32_t> gens;
    std::vector<uint32_t> orders;
    ClassStructure cs;

    explicit AutSearch(const GroupParams& G) : E(enumerate_group(G)), F(E.as_finite_group())
    {
        gens = small_generating_set(F);
        orders = element_orders(F);
        cs = compute_classes(F);
    }

    // Visits every automorphism whose first generator image is a class representative.
    // The visitor returns true to stop.
    void each(const std::function<bool(const std::vector<uint32_t>&)>& visit) const
    {
        if (gens.empty()) {
            visit(std::vector<uint32_t>{0});
            return;
        }
        std::vector<std::vector<uint32_t>> cand(gens.size());
        for (size_t i = 0; i < gens.size(); ++i) {
            const uint32_t g = gens[i];
            for (uint32_t y = 0; y < F.N; ++y)
                if (orders[y] == orders[g] && cs.sizes[cs.cls[y]] == cs.sizes[cs.cls[g]] &&
                    (i > 0 || cs.reps[cs.cls[y]] == y))
                    cand[i].push_back(y);
        }
        std::vector<uint32_t> imgs(gens.size());
        std::vector<char> hit(F.N);
        std::function<bool(size_t)> rec = [&](size_t i) -> bool {
            if (i == gens.size()) {
                auto map = extend_homomorphism(F, gens, F, imgs);
                if (map.empty())
                    return false;
                std::fill(hit.begin(), hit.end(), 0);
                for (uint32_t y : map) {
                    if (hit[y])
                        return false;
                    hit[y] = 1;
                }
                return visit(map);
            }
            for (uint32_t y : cand[i]) {
                imgs[i] = y;
                if (rec(i + 1))
                    return true;
            }
            return false;
        };
        rec(0);
    }
};

bool preserves_N(const GroupParams& G, const std::vector<uint32_t>& map)
{
    const uint64_t slots = color_slots(G);
    for (uint64_t i = 0; i < slots; ++i)
        if (map[i] >= slots)
            return false;
    return true;
}

} // namespace

std::vector<AutSpec> automorphisms_mod_inner(const GroupParams& G, bool require_N_invariant)
{
    if (G.order > caps().aut)
        throw CapExceeded("automorphism search is capped at order " + std::to_string(caps().aut));
    AutSearch S(G);
    std::vector<AutSpec> out;
    S.each([&](const std::vector<uint32_t>& map) {
        if (!require_N_invariant || preserves_N(G, map))
            out.push_back(make_table(G, map));
        return false;
    });
    return out;
}

CharacteristicResult is_diagonal_characteristic(const GroupParams& G)
{
    CharacteristicResult res;
    if (G.order > caps().aut) {
        res.characteristic = !diagonal_exception(G);
        return res;
    }
    res.brute_force = true;
    AutSearch S(G);
    bool moved = false;
    S.each([&](const std::vector<uint32_t>& map) {
        moved = !preserves_N(G, map);
        return moved;
    });
    res.characteristic = !moved;
    return res;
}

AutReport decompose_automorphism(const AutSpec& nu)
{
    const GroupParams& G = nu.G;
    if (G.n < 3)
        throw NotDecomposable("the decomposition needs n >= 3");
    if (G.r == 1 && G.p == 1 && G.q == 1 && G.n == 6)
        throw NotDecomposable("S_6 has an outer automorphism outside the decomposition");
    if (G.order > caps().enumeration)
        throw CapExceeded("decomposition is capped at the enumeration cap");
    for (const auto& x : subgroup_N(G))
        if (!is_identity_perm(apply(nu, x)))
            throw NotDecomposable("the automorphism does not preserve the diagonal subgroup");

    AutReport rep;
    rep.is_inner = is_inner(nu);
    rep.is_class_preserving = is_class_preserving(nu);
    const auto gens = standard_generators(G);
    const auto target = generator_images(nu);
    std::vector<bool> phis{false};
    if (G.n == 4 && phi4_defined(G.r, G.p, G.q))
        phis.push_back(true);
    const auto zs = z_choices(G);
    for (bool ph : phis)
        for (int64_t j = 1; j < std::max(G.r, 2); ++j) {
            if (nt::gcd(j, G.r) != 1)
                continue;
            for (int64_t k = 0; k < G.r; ++k) {
                if (!alpha_valid(G, j, k))
                    continue;
                for (int64_t z : zs) {
                    AutSpec mu = make_alpha(G, j, k, z);
                    if (ph)
                        mu = compose(make_phi4(G.r, G.p, G.q), mu);
                    std::vector<Element> from;
                    for (const auto& s : gens)
                        from.push_back(apply(mu, s));
                    if (auto g = find_conjugator(ambient(G), G, from, target)) {
                        rep.decomposed = true;
                        rep.g = *g;
                        rep.phi = ph;
                        rep.j = j;
                        rep.k = k;
                        rep.z = z;
                        return rep;
                    }
                }
            }
        }
    throw NotDecomposable("no decomposition Ad(g) o phi o alpha found for " + nu.describe() + " on G(" + G.str() + ")");
}

AutSpec recompose(const GroupParams& G, const AutReport& rep)
{
    AutSpec a = make_alpha(G, rep.j, rep.k, rep.z);
    if (rep.phi)
        a = compose(make_phi4(G.r, G.p, G.q), a);
    return compose(make_ad(G, rep.g), a);
}

std::optional<AutSpec> find_class_preserving_outer(const GroupParams& G)
{
    if (G.order > caps().enumeration)
        throw CapExceeded("class-preserving search is capped at the enumeration cap");
    const EnumeratedGroup E = enumerate_group(G);
    const FiniteGroup F = E.as_finite_group();
    const ClassStructure cs = compute_classes(F);
    if (cs.count() == F.N)
        return std::nullopt;  // abelian: only the identity is class-preserving

    // A generating set whose non-leading generators have small classes; the leading one is fixed.
    std::vector<uint32_t> gens;
    double best = 0;
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        auto g = small_generating_set(F, seed);
        std::sort(g.begin(), g.end(), [&](uint32_t a, uint32_t b) { return cs.sizes[cs.cls[a]] > cs.sizes[cs.cls[b]]; });
        double cost = 1;
        for (size_t i = 1; i < g.size(); ++i)
            cost *= double(cs.sizes[cs.cls[g[i]]]);
        if (gens.empty() || cost < best) {
            best = cost;
            gens = g;
        }
    }
    std::vector<std::vector<uint32_t>> cand(gens.size());
    cand[0] = {gens[0]};
    for (size_t i = 1; i < gens.size(); ++i)
        for (uint32_t y = 0; y < F.N; ++y)
            if (cs.cls[y] == cs.cls[gens[i]])
                cand[i].push_back(y);

    std::vector<Element> from;
    for (uint32_t g : gens)
        from.push_back(E.elems[g]);
    std::vector<uint32_t> imgs(gens.size());
    std::vector<char> hit(F.N);
    std::optional<AutSpec> found;
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == gens.size()) {
            auto map = extend_homomorphism(F, gens, F, imgs);
            if (map.empty())
                return false;
            std::fill(hit.begin(), hit.end(), 0);
            for (uint32_t y : map) {
                if (hit[y])
                    return false;
                hit[y] = 1;
            }
            for (uint32_t c = 0; c < cs.count(); ++c)
                if (cs.cls[map[cs.reps[c]]] != c)
                    return false;
            std::vector<Element> to;
            for (uint32_t y : imgs)
                to.push_back(E.elems[y]);
            if (find_conjugator(G, G, from, to))
                return false;
            found = make_table(G, map);
            return true;
        }
        for (uint32_t y : cand[i]) {
            imgs[i] = y;
            if (rec(i + 1))
                return true;
        }
        return false;
    };
    rec(0);
    return found;
}

} // namespace prg
