#include "prg/isomorphism.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "prg/config.hpp"
#include "prg/errors.hpp"
#include "prg/finite_group.hpp"
#include "prg/kernels.hpp"
#include "prg/numtheory.hpp"

namespace prg {

using i128 = __int128;

static int64_t mod128(i128 a, int64_t m)
{
    i128 v = a % m;
    return int64_t(v < 0 ? v + m : v);
}

IsoQuery make_iso_query(const GroupParams& a, const GroupParams& b)
{
    if (a.r != b.r || a.n != b.n)
        throw ParamMismatch("isomorphism queries need equal r and n");
    if (int64_t(a.p) * a.q != int64_t(b.p) * b.q)
        throw ParamMismatch("isomorphism queries need pq = p'q'");
    return {a.r, a.n, a.p, a.q, b.p, b.q};
}

SpecialPrimes special_primes(const IsoQuery& Q)
{
    SpecialPrimes out;
    const int64_t m = int64_t(Q.r) * Q.n / (int64_t(Q.p) * Q.q);
    for (auto [pr, e] : nt::factorize(int64_t(Q.p) * Q.p2)) {
        (void)e;
        if (nt::valuation(Q.p, pr) != nt::valuation(Q.p2, pr))
            out.primes.push_back(pr);
    }
    for (int64_t pr : out.primes)
        out.delta *= nt::ipow(pr, nt::valuation(m, pr));
    out.eta = m / out.delta;
    return out;
}

bool gcd_criterion(const IsoQuery& Q)
{
    return nt::gcd(Q.p, Q.n) == nt::gcd(Q.p2, Q.n) && nt::gcd(Q.q, Q.n) == nt::gcd(Q.q2, Q.n);
}

IsoVerdict isomorphic(const IsoQuery& Q)
{
    IsoVerdict v;
    if (gcd_criterion(Q)) {
        v.isomorphic = true;
        v.branch = "gcd-criterion";
        v.reason = "gcd(p,n) = gcd(p',n) and gcd(q,n) = gcd(q',n)";
        return v;
    }
    if (Q.n == 2) {
        const int64_t pq = int64_t(Q.p) * Q.q;
        const bool odd_ratio = Q.r % pq == 0 && (Q.r / pq) % 2 == 1;
        if ((Q.p + Q.p2) % 2 == 1 && (Q.q + Q.q2) % 2 == 1 && odd_ratio) {
            v.isomorphic = true;
            v.branch = "rank2-parity";
            v.reason = "p+p', q+q' and r/pq are all odd";
            return v;
        }
        v.branch = "rank2-parity";
        if ((Q.p + Q.p2) % 2 == 1 && (Q.q + Q.q2) % 2 == 1)
            v.reason = "p+p' and q+q' are odd but r/pq is even";
        else
            v.reason = "exactly one of p, p', q, q' is odd";
        return v;
    }
    v.branch = "gcd-criterion";
    v.reason = nt::gcd(Q.p, Q.n) != nt::gcd(Q.p2, Q.n) ? "gcd(p,n) != gcd(p',n)" : "gcd(q,n) != gcd(q',n)";
    return v;
}

bool is_self_dual(const GroupParams& P)
{
    return isomorphic({P.r, P.n, P.p, P.q, P.q, P.p}).isomorphic;
}

namespace {

struct PrimeData {
    int64_t pr;
    int a, a2, b2, c, d;
};

std::vector<PrimeData> prime_data(const IsoQuery& Q)
{
    std::vector<PrimeData> out;
    for (auto [pr, e] : nt::factorize(int64_t(Q.r) * Q.n)) {
        (void)e;
        out.push_back({pr, nt::valuation(Q.p, pr), nt::valuation(Q.p2, pr), nt::valuation(Q.q2, pr),
                       nt::valuation(Q.r, pr), nt::valuation(Q.n, pr)});
    }
    return out;
}

// One congruence x ≡ a (mod m) per prime, or NoSolution.
std::pair<int64_t, int64_t> prime_congruence(const IsoQuery& Q, const PrimeData& D)
{
    const int64_t A = int64_t(Q.r) * Q.n / (int64_t(Q.p) * Q.q);
    if (D.a == D.a2)
        return {0, nt::ipow(D.pr, D.a + 1)};
    if (D.a > D.a2) {
        if (D.d > D.a2)
            throw NoSolution("crt_solve: gcd(p,n) != gcd(p',n)");
        return {nt::ipow(D.pr, D.a2 - D.d), nt::ipow(D.pr, D.a2 - D.d + 1)};
    }
    // A x + r/q ≡ π^{c-b'} (mod π^{c-b'+1})
    const int64_t M = nt::ipow(D.pr, D.c - D.b2 + 1);
    const int64_t B = nt::mod(nt::ipow(D.pr, D.c - D.b2) - Q.r / Q.q, M);
    const int64_t Am = nt::mod(A, M);
    const int64_t g = nt::gcd(Am, M);
    if (B % g)
        throw NoSolution("crt_solve: congruence for prime " + std::to_string(D.pr) + " has no solution");
    const int64_t m2 = M / g;
    const int64_t x = m2 == 1 ? 0 : nt::mod((B / g) % m2 * nt::inverse_mod((Am / g) % m2, m2), m2);
    return {x, m2};
}

} // namespace

int64_t crt_modulus(const IsoQuery& Q)
{
    int64_t M = 1;
    for (const auto& D : prime_data(Q)) {
        if (D.a == D.a2)
            M *= nt::ipow(D.pr, D.a + 1);
        else if (D.a > D.a2)
            M *= nt::ipow(D.pr, std::max(0, D.a2 - D.d + 1));
        else
            M *= nt::ipow(D.pr, D.c - D.b2 + 1);
    }
    return M;
}

int64_t crt_solve(const IsoQuery& Q)
{
    if (!gcd_criterion(Q))
        throw NoSolution("crt_solve: gcd criterion fails");
    std::vector<std::pair<int64_t, int64_t>> cs;
    for (const auto& D : prime_data(Q))
        cs.push_back(prime_congruence(Q, D));
    const int64_t x = nt::crt(cs).first;
    if (!crt_conditions_hold(Q, x))
        throw NumericalFailure("crt_solve: solution fails substitution");
    return x;
}

bool crt_conditions_hold(const IsoQuery& Q, int64_t x)
{
    const int64_t A = int64_t(Q.r) * Q.n / (int64_t(Q.p) * Q.q);
    for (const auto& D : prime_data(Q)) {
        if (D.a == D.a2) {
            if (nt::mod(x, nt::ipow(D.pr, D.a + 1)) != 0)
                return false;
        } else if (D.a > D.a2) {
            if (D.d > D.a2)
                return false;
            const int64_t m = nt::ipow(D.pr, D.a2 - D.d + 1);
            if (nt::mod(x, m) != nt::mod(nt::ipow(D.pr, D.a2 - D.d), m))
                return false;
        } else {
            const int64_t m = nt::ipow(D.pr, D.c - D.b2 + 1);
            if (mod128(i128(A) * x + Q.r / Q.q, m) != nt::mod(nt::ipow(D.pr, D.c - D.b2), m))
                return false;
        }
    }
    return true;
}

bool system_conditions_hold(const IsoQuery& Q, int64_t x)
{
    const int64_t A = int64_t(Q.r) * Q.n / (int64_t(Q.p) * Q.q);
    const int64_t rq = Q.r / Q.q, rq2 = Q.r / Q.q2;
    if (mod128(i128(A) * x + rq, rq2) != 0)
        return false;
    if (mod128(i128(Q.r / Q.p) * x, rq2) != 0)
        return false;
    for (auto [pr, e] : nt::factorize(nt::gcd(A, rq))) {
        (void)e;
        if (mod128(i128(A / pr) * x + rq / pr, rq2) == 0)
            return false;
    }
    return true;
}

IsoMap explicit_isomorphism(const IsoQuery& Q)
{
    if (!gcd_criterion(Q))
        throw PreconditionFailed("explicit_isomorphism needs gcd(p,n) = gcd(p',n) and gcd(q,n) = gcd(q',n)");
    IsoMap m;
    m.from = Q.left();
    m.to = Q.right();
    auto sp = special_primes(Q);
    m.eta = sp.eta;
    m.delta = sp.delta;
    if (Q.p == Q.p2) {
        m.kind = "identity";
        const GroupParams to = m.to;
        m.apply = [to](const Element& g) { return reparam(to, g); };
        return m;
    }
    m.x = crt_solve(Q);
    m.kind = "crt";
    const GroupParams to = m.to;
    const int64_t r = Q.r, p = Q.p, xr = nt::mod(m.x, r);
    m.apply = [to, r, p, xr](const Element& g) {
        const int64_t k = nt::mod(delta_lift(g) / p, r) * xr % r;
        Element h = g;
        for (int i = 0; i < g.n; ++i)
            h.col[i] = int32_t((g.col[i] + k) % r);
        canonicalize(to, h);
        return h;
    };
    return m;
}

IsoMap compose(const IsoMap& first, const IsoMap& second)
{
    if (!(first.to.r == second.from.r && first.to.p == second.from.p && first.to.q == second.from.q &&
          first.to.n == second.from.n))
        throw ParamMismatch("compose: codomain and domain differ");
    IsoMap m;
    m.from = first.from;
    m.to = second.to;
    m.kind = "chain";
    m.x = first.x ? first.x : second.x;
    m.d = first.d ? first.d : second.d;
    m.eta = first.eta;
    m.delta = first.delta;
    auto f = first.apply, g = second.apply;
    m.apply = [f, g](const Element& e) { return g(f(e)); };
    return m;
}

IsoMap invert(const IsoMap& m)
{
    auto table = std::make_shared<std::unordered_map<Element, Element, ElementHash>>();
    for_each_element(m.from, [&](uint64_t, const Element& e) { table->emplace(m.apply(e), e); });
    if (table->size() != m.from.order)
        throw PreconditionFailed("invert: map is not injective");
    IsoMap out;
    out.from = m.to;
    out.to = m.from;
    out.kind = "inverse";
    out.x = m.x;
    out.d = m.d;
    out.apply = [table](const Element& e) {
        auto it = table->find(e);
        if (it == table->end())
            throw PreconditionFailed("invert: element outside the image");
        return it->second;
    };
    return out;
}

IsoMap rank2_coprime_map(int r, int p)
{
    if (r % p)
        throw PreconditionFailed("rank2_coprime_map: p must divide r");
    if (p % 2 == 0 && (r / p) % 2 == 0)
        throw PreconditionFailed("rank2_coprime_map needs p or r/p odd");
    if (p == 1 || p % 2 == 1)
        return explicit_isomorphism({r, 2, p, 1, 1, p});

    const int64_t p2part = int64_t(1) << nt::valuation(p, 2);
    const int64_t odd = p / p2part;
    const int64_t delta = nt::part_supported_on(2 * int64_t(r) / p, odd);
    if (delta == 1) {
        // (π; i, j) -> (π; i, j + d i) with d = r / p'.
        IsoMap m;
        m.from = make_group(r, p, 1, 2);
        m.to = make_group(r, 1, p, 2);
        m.kind = "coprime-shear";
        m.d = r / p2part;
        const GroupParams to = m.to;
        const int64_t d = m.d;
        m.apply = [to, d](const Element& g) {
            Element h = g;
            h.col[1] = int32_t(nt::mod(g.col[1] + d * g.col[0], to.r));
            canonicalize(to, h);
            return h;
        };
        return m;
    }

    // G(r,p,1,2) = G(r,δp,1,2) × <c^{r/δ}>  ->  G(r,δ,p,2) × <c^{r/δp}> = G(r,1,p,2).
    const int dp = int(delta * p);
    IsoMap shear = rank2_coprime_map(r, dp);
    IsoMap to_target = explicit_isomorphism({r, 2, 1, dp, int(delta), p});
    IsoMap inner = compose(shear, to_target);
    IsoMap m;
    m.from = make_group(r, p, 1, 2);
    m.to = make_group(r, 1, p, 2);
    m.kind = "coprime-reduced";
    m.d = shear.d;
    m.x = to_target.x;
    m.delta = delta;
    m.eta = 2 * int64_t(r) / p / delta;
    const GroupParams from = m.from, sub = make_group(r, dp, 1, 2), to = m.to;
    auto f = inner.apply;
    m.apply = [from, sub, to, f, delta, dp](const Element& g) {
        const int64_t r = from.r;
        for (int64_t k = 0; k < delta; ++k) {
            Element h = multiply(from, g, gen_c(from, nt::mod(-k * (r / delta), r)));
            if (nt::mod(delta_lift(h), dp) != 0)
                continue;
            Element img = reparam(to, f(reparam(sub, h)));
            return multiply(to, img, gen_c(to, k * (r / dp)));
        }
        throw NumericalFailure("rank2_coprime_map: no direct-product decomposition");
    };
    return m;
}

IsoMap find_isomorphism(const IsoQuery& Q)
{
    auto v = isomorphic(Q);
    if (!v.isomorphic)
        throw PreconditionFailed("groups are not isomorphic: " + v.reason);
    if (v.branch == "gcd-criterion")
        return explicit_isomorphism(Q);
    // Rank-2 parity branch: pq | r, exactly one of p, q odd.
    const int pq = Q.p * Q.q;
    if (Q.p % 2 == 0) {
        IsoMap a = explicit_isomorphism({Q.r, 2, Q.p, Q.q, pq, 1});
        IsoMap b = rank2_coprime_map(Q.r, pq);
        IsoMap c = explicit_isomorphism({Q.r, 2, 1, pq, Q.p2, Q.q2});
        return compose(compose(a, b), c);
    }
    IsoQuery rev{Q.r, 2, Q.p2, Q.q2, Q.p, Q.q};
    return invert(find_isomorphism(rev));
}

MapCheck verify_map(const IsoMap& m, uint64_t samples)
{
    MapCheck out;
    const GroupParams& A = m.from;
    const GroupParams& B = m.to;
    if (A.order <= caps().enumeration) {
        out.exhaustive = true;
        auto gens = standard_generators(A);
        std::vector<Element> gimg;
        for (const auto& s : gens)
            gimg.push_back(m.apply(s));
        bool hom = m.apply(identity(A)) == identity(B);
        std::unordered_set<Element, ElementHash> image;
        for_each_element(A, [&](uint64_t, const Element& g) {
            if (!hom)
                return;
            Element fg = m.apply(g);
            hom = is_member(B, fg);
            image.insert(fg);
            for (size_t i = 0; i < gens.size() && hom; ++i)
                hom = m.apply(multiply(A, g, gens[i])) == multiply(B, fg, gimg[i]);
        });
        out.homomorphism = hom;
        out.bijective = hom && image.size() == A.order && A.order == B.order;
        return out;
    }
    std::mt19937_64 rng(12345);
    bool hom = true;
    for (uint64_t t = 0; t < samples && hom; ++t) {
        Element a = element_at(A, rng() % A.order), b = element_at(A, rng() % A.order);
        hom = m.apply(multiply(A, a, b)) == multiply(B, m.apply(a), m.apply(b));
    }
    out.homomorphism = hom;
    return out;
}

uint64_t center_order_brute(const GroupParams& P)
{
    auto gens = standard_generators(P);
    uint64_t count = 0;
    for_each_element(P, [&](uint64_t, const Element& g) {
        for (const auto& s : gens)
            if (!(multiply(P, g, s) == multiply(P, s, g)))
                return;
        ++count;
    });
    return count;
}

uint64_t abelianization_order_brute(const GroupParams& P)
{
    auto E = enumerate_group(P);
    auto G = E.as_finite_group();
    std::vector<uint32_t> all(E.size());
    for (uint32_t i = 0; i < E.size(); ++i)
        all[i] = i;
    return P.order / derived_subgroup(G, all).size();
}

InvariantValue center_order(const GroupParams& P)
{
    if (P.n != 2)
        return {uint64_t(P.r) * nt::gcd(P.p, P.n) / (uint64_t(P.p) * P.q), true};
    return {center_order_brute(P), false};
}

InvariantValue abelianization_order(const GroupParams& P)
{
    if (P.n == 1)
        return {P.order, true};  // cyclic
    if (P.n != 2)
        return {2 * uint64_t(P.r) * nt::gcd(P.q, P.n) / (uint64_t(P.p) * P.q), true};
    return {abelianization_order_brute(P), false};
}

Invariants compute_invariants(const GroupParams& P)
{
    Invariants inv;
    inv.center = center_order_brute(P);
    inv.abelianization = abelianization_order_brute(P);
    int64_t ex = P.r;
    for (int i = 2; i <= P.n; ++i)
        ex = nt::lcm(ex, int64_t(P.r) * i);
    for (int64_t e : nt::divisors(ex))
        inv.power_images.emplace_back(e, power_image_count(P, e));
    return inv;
}

std::optional<std::string> invariant_mismatch(const GroupParams& a, const GroupParams& b)
{
    if (a.order != b.order)
        return "order";
    auto ia = compute_invariants(a), ib = compute_invariants(b);
    if (ia.center != ib.center)
        return "center order " + std::to_string(ia.center) + " vs " + std::to_string(ib.center);
    if (ia.abelianization != ib.abelianization)
        return "abelianization order " + std::to_string(ia.abelianization) + " vs " + std::to_string(ib.abelianization);
    for (size_t i = 0; i < ia.power_images.size() && i < ib.power_images.size(); ++i)
        if (ia.power_images[i] != ib.power_images[i])
            return "power image count for e=" + std::to_string(ia.power_images[i].first) + ": " +
                   std::to_string(ia.power_images[i].second) + " vs " + std::to_string(ib.power_images[i].second);
    return std::nullopt;
}

std::optional<IsoMap> brute_isomorphism(const GroupParams& a, const GroupParams& b)
{
    if (a.order > 500 || b.order > 500)
        throw CapExceeded("brute-force isomorphism search is capped at order 500");
    if (a.order != b.order)
        return std::nullopt;
    auto EA = std::make_shared<EnumeratedGroup>(enumerate_group(a));
    auto EB = std::make_shared<EnumeratedGroup>(enumerate_group(b));
    auto A = EA->as_finite_group(), B = EB->as_finite_group();
    auto gens = small_generating_set(A);
    auto oa = element_orders(A), ob = element_orders(B);
    auto csB = compute_classes(B);
    std::vector<std::vector<uint32_t>> cand(gens.size());
    for (size_t i = 0; i < gens.size(); ++i)
        for (uint32_t y = 0; y < B.N; ++y)
            if (ob[y] == oa[gens[i]] && (i > 0 || csB.reps[csB.cls[y]] == y))
                cand[i].push_back(y);
    std::vector<uint32_t> imgs(gens.size());
    std::vector<uint32_t> found;
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == gens.size()) {
            auto map = extend_homomorphism(A, gens, B, imgs);
            if (map.empty())
                return false;
            std::vector<char> hit(B.N, 0);
            for (uint32_t y : map) {
                if (hit[y])
                    return false;
                hit[y] = 1;
            }
            found = std::move(map);
            return true;
        }
        for (uint32_t y : cand[i]) {
            imgs[i] = y;
            if (rec(i + 1))
                return true;
        }
        return false;
    };
    if (gens.empty()) {
        found = {0};
    } else if (!rec(0)) {
        return std::nullopt;
    }
    IsoMap m;
    m.from = a;
    m.to = b;
    m.kind = "search";
    auto table = std::make_shared<std::vector<uint32_t>>(std::move(found));
    m.apply = [EA, EB, table](const Element& e) { return EB->elems[(*table)[EA->index(e)]]; };
    return m;
}

DecCheck check_decomposition(const IsoQuery& Q)
{
    DecCheck out;
    if (!gcd_criterion(Q))
        return out;
    const GroupParams P = Q.left();
    const int64_t delta = special_primes(Q).delta;
    const int64_t dp = delta * Q.p;
    out.well_defined = Q.r % dp == 0 && (int64_t(Q.r) * Q.n) % (dp * Q.q) == 0 && Q.r % (delta * Q.q) == 0;
    if (!out.well_defined)
        return out;
    const GroupParams D = make_group(Q.r, int(dp), Q.q, Q.n);
    out.orders_match = D.order * uint64_t(delta) == P.order;
    out.trivial_intersection = true;
    for (int64_t k = 1; k < delta; ++k) {
        Element z = gen_c(P, k * (Q.r / (delta * Q.q)));
        if (is_member(D, z) || z == identity(P))
            out.trivial_intersection = false;
    }
    return out;
}

Certificate certify(const IsoQuery& Q)
{
    Certificate c;
    c.verdict = isomorphic(Q);
    const GroupParams a = Q.left(), b = Q.right();
    if (c.verdict.isomorphic) {
        if (a.order <= caps().enumeration) {
            IsoMap m = find_isomorphism(Q);
            auto chk = verify_map(m);
            c.certified = chk.homomorphism && chk.bijective;
            c.evidence = c.certified ? "explicit " + m.kind + " map verified" : "explicit map failed verification";
            c.map = m;
        } else {
            c.evidence = "criterion only (order above enumeration cap)";
        }
        return c;
    }
    if (a.order <= caps().enumeration) {
        auto mm = invariant_mismatch(a, b);
        c.certified = mm.has_value();
        c.evidence = mm ? *mm : "no invariant separates the groups";
    } else {
        c.evidence = "criterion only (order above enumeration cap)";
    }
    return c;
}

} // namespace prg
