#include "prg/cycles.hpp"

#include <algorithm>

#include "prg/finite_group.hpp"
#include "prg/numtheory.hpp"

namespace prg {

CycleData decompose(const GroupParams& P, const Element& g)
{
    CycleData d;
    const int64_t r = P.r;
    std::array<bool, kMaxRank> seen{};
    int64_t dp = P.p;
    bool free_point = false;
    for (int i = 0; i < g.n; ++i) {
        if (seen[i])
            continue;
        ColoredCycle c;
        for (int j = i; !seen[j]; j = g.perm[j]) {
            seen[j] = true;
            c.cycle.push_back(j);
            c.colors.push_back(g.col[j]);
        }
        c.length = int(c.cycle.size());
        int64_t a = 0;
        for (int j : c.cycle)
            a += g.col[j];
        c.color = a % r;
        if (c.length == 1 && c.color == 0) {
            free_point = true;
            continue;
        }
        c.s_modulus = nt::gcd(c.color, c.length, r);
        if (c.length > 1) {
            int64_t s = 0;
            for (int j = 0; j < c.length; ++j)
                s += int64_t(j + 1) * g.col[c.cycle[j]];
            c.s = s % c.s_modulus;
        }
        dp = nt::gcd(dp, nt::gcd(c.length, c.color));
        d.cycles.push_back(std::move(c));
    }
    d.d_p = dp;
    int64_t sp = 0;
    for (const auto& c : d.cycles)
        sp += c.s;  // d_p divides each s_modulus
    d.s_p = sp % dp;
    d.d_eff = free_point ? 1 : dp;
    d.s_eff = d.s_p % d.d_eff;
    return d;
}

Element reassemble(const GroupParams& P, const CycleData& d)
{
    const GroupParams G1 = make_group(P.r, 1, 1, P.n);
    Element acc = identity(G1);
    for (const auto& c : d.cycles) {
        // Rebuild one cycle as an element: colors live on its support only.
        Element e = identity(G1);
        for (int j = 0; j < c.length; ++j) {
            e.perm[c.cycle[j]] = uint8_t(c.cycle[(j + 1) % c.length]);
            e.col[c.cycle[j]] = int32_t(c.colors[j]);
        }
        acc = multiply(G1, acc, e);
    }
    return acc;
}

std::vector<std::pair<int, int64_t>> cycle_type(const GroupParams& P, const Element& g)
{
    std::vector<std::pair<int, int64_t>> out;
    std::array<bool, kMaxRank> seen{};
    for (int i = 0; i < g.n; ++i) {
        if (seen[i])
            continue;
        int len = 0;
        int64_t a = 0;
        for (int j = i; !seen[j]; j = g.perm[j]) {
            seen[j] = true;
            ++len;
            a += g.col[j];
        }
        out.emplace_back(len, a % P.r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool conjugate_in_Grn(const GroupParams& P, const Element& g, const Element& h)
{
    return cycle_type(P, g) == cycle_type(P, h);
}

bool conjugate_in_Grpn(const GroupParams& P, const Element& g, const Element& h)
{
    if (!conjugate_in_Grn(P, g, h))
        return false;
    auto a = decompose(P, g), b = decompose(P, h);
    return a.s_eff == b.s_eff;
}

bool conjugate_in_quotient(const GroupParams& P, const Element& g, const Element& h)
{
    const GroupParams L = make_group(P.r, P.p, 1, P.n);
    Element gl = reparam(L, g), hl = reparam(L, h);
    for (int k = 0; k < P.q; ++k) {
        Element lift = multiply(L, hl, gen_c(L, int64_t(k) * (P.r / P.q)));
        if (conjugate_in_Grpn(L, gl, lift))
            return true;
    }
    return false;
}

std::vector<ClassInfo> conjugacy_classes(const GroupParams& P)
{
    auto EG = enumerate_group(P);
    auto cs = compute_classes(EG.as_finite_group());
    std::vector<ClassInfo> out;
    for (uint32_t c = 0; c < cs.count(); ++c) {
        ClassInfo ci;
        ci.rep = EG.elems[cs.reps[c]];
        ci.size = cs.sizes[c];
        auto d = decompose(P, ci.rep);
        ci.s_p = d.s_p;
        ci.d_p = d.d_p;
        out.push_back(ci);
    }
    return out;
}

} // namespace prg
