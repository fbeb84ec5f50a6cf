#include <array>
#include <cmath>

#include "prg/character.hpp"
#include "prg/errors.hpp"
#include "prg/numtheory.hpp"

namespace prg {

ClassFunction tabulate(const GroupParams& P, const CharacterTable& T, const std::function<cplx(const Element&)>& f)
{
    ClassFunction out(T.count());
    for (uint32_t c = 0; c < T.count(); ++c)
        out[c] = f(element_at(P, T.classes.reps[c]));
    return out;
}

cplx inner_product(const CharacterTable& T, const ClassFunction& a, const ClassFunction& b)
{
    cplx s = 0;
    for (uint32_t c = 0; c < T.count(); ++c)
        s += double(T.classes.sizes[c]) * a[c] * std::conj(b[c]);
    return s / double(T.order);
}

ClassFunction induce(const CharacterTable& T, const FiniteGroup& G, const std::vector<uint32_t>& H,
                     const std::vector<cplx>& f)
{
    if (!is_subgroup(G, H))
        throw NotASubgroup("induce: H is not closed under multiplication");
    ClassFunction out(T.count(), 0.0);
    for (size_t i = 0; i < H.size(); ++i)
        out[T.classes.cls[H[i]]] += f[i];
    // Ind f (C) = |G| / (|H| |C|) Σ_{h ∈ H ∩ C} f(h)
    for (uint32_t c = 0; c < T.count(); ++c)
        out[c] *= double(T.order) / (double(H.size()) * double(T.classes.sizes[c]));
    return out;
}

std::vector<cplx> restrict_to(const CharacterTable& T, const ClassFunction& f, const std::vector<uint32_t>& H)
{
    std::vector<cplx> out(H.size());
    for (size_t i = 0; i < H.size(); ++i)
        out[i] = f[T.classes.cls[H[i]]];
    return out;
}

cplx LinearChars::value(size_t c, size_t i) const
{
    return std::polar(1.0, 2.0 * M_PI * double(exps[c][i]) / double(D));
}

LinearChars linear_characters(const FiniteGroup& G, const std::vector<uint32_t>& H)
{
    constexpr int kMaxGens = 40;
    LinearChars out;
    out.H = H;
    const auto Dp = derived_subgroup(G, H);
    out.D = int64_t(H.size() / Dp.size());

    // Chain H' = Q_0 < Q_1 < ... with Q_j = <Q_{j-1}, g_j>; every element of Q_j is
    // x g_j^a with x in Q_{j-1}, 0 <= a < m_j. coords hold the exponents a.
    std::vector<int32_t> pos(G.N, -1);
    std::vector<uint32_t> Q(Dp.begin(), Dp.end());
    for (size_t i = 0; i < Q.size(); ++i)
        pos[Q[i]] = int32_t(i);
    std::vector<int32_t> coords(Q.size() * kMaxGens, 0);
    std::vector<int64_t> rel_m;
    std::vector<std::vector<int32_t>> rel_word;  // coords of g_j^{m_j} in Q_{j-1}
    for (uint32_t h : H) {
        if (pos[h] >= 0)
            continue;
        const int j = int(rel_m.size());
        if (j >= kMaxGens)
            throw NumericalFailure("linear_characters: abelianization chain too long");
        // Relative order of h modulo Q.
        int64_t m = 1;
        uint32_t pw = h;
        while (pos[pw] < 0) {
            pw = G.mul(pw, h);
            ++m;
        }
        rel_m.push_back(m);
        rel_word.emplace_back(coords.begin() + size_t(pos[pw]) * kMaxGens,
                              coords.begin() + size_t(pos[pw]) * kMaxGens + j);
        const size_t base = Q.size();
        uint32_t ga = 0;  // h^a
        for (int64_t a = 1; a < m; ++a) {
            ga = G.mul(ga, h);
            for (size_t i = 0; i < base; ++i) {
                uint32_t y = G.mul(Q[i], ga);
                pos[y] = int32_t(Q.size());
                Q.push_back(y);
                std::array<int32_t, kMaxGens> c;
                std::copy_n(coords.begin() + i * kMaxGens, kMaxGens, c.begin());
                c[j] = int32_t(a);
                coords.insert(coords.end(), c.begin(), c.end());
            }
        }
    }
    if (Q.size() != H.size())
        throw NotASubgroup("linear_characters: H is not a subgroup");

    const int ngen = int(rel_m.size());
    const int64_t D = out.D;
    std::vector<int64_t> e(ngen, 0);
    std::function<void(int)> rec = [&](int j) {
        if (j == ngen) {
            std::vector<int32_t> ex(H.size());
            for (size_t i = 0; i < H.size(); ++i) {
                const int32_t* c = &coords[size_t(pos[H[i]]) * kMaxGens];
                int64_t s = 0;
                for (int t = 0; t < ngen; ++t)
                    s += int64_t(c[t]) * e[t];
                ex[i] = int32_t(nt::mod(s, D));
            }
            out.exps.push_back(std::move(ex));
            return;
        }
        // m_j e_j ≡ λ(g_j^{m_j}) (mod D); solutions differ by multiples of D/m_j.
        int64_t c = 0;
        for (int t = 0; t < j; ++t)
            c += int64_t(rel_word[j][t]) * e[t];
        c = nt::mod(c, D);
        const int64_t m = rel_m[j];
        if (c % m)
            throw NumericalFailure("linear_characters: extension equation has no solution");
        for (int64_t t = 0; t < m; ++t) {
            e[j] = c / m + t * (D / m);
            rec(j + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<int64_t> induced_multiplicities(const IrrProvider& irr, const std::vector<Element>& H,
                                            const std::vector<cplx>& lam)
{
    const size_t k = irr.count();
    std::vector<cplx> acc(k, 0.0), vals(k);
    for (size_t i = 0; i < H.size(); ++i) {
        irr.values_at(H[i], vals.data());
        for (size_t c = 0; c < k; ++c)
            acc[c] += lam[i] * std::conj(vals[c]);
    }
    std::vector<int64_t> out(k);
    for (size_t c = 0; c < k; ++c) {
        cplx m = acc[c] / double(H.size());
        double rm = std::round(m.real());
        if (std::abs(m - rm) > 1e-4)
            throw NumericalFailure("induced multiplicity is not an integer: " + std::to_string(m.real()) + "+" +
                                   std::to_string(m.imag()) + "i");
        out[c] = int64_t(rm);
    }
    return out;
}

} // namespace prg
