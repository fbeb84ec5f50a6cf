#include "prg/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <random>

#include "prg/config.hpp"
#include "prg/errors.hpp"

namespace prg {

FiniteGroup EnumeratedGroup::as_finite_group() const
{
    FiniteGroup fg;
    fg.N = size();
    const GroupParams P0 = P;
    fg.mul = [P0](uint32_t a, uint32_t b) {
        return uint32_t(index_of(P0, multiply(P0, element_at(P0, a), element_at(P0, b))));
    };
    fg.inv.resize(fg.N);
    for (uint32_t i = 0; i < fg.N; ++i)
        fg.inv[i] = index(inverse(P, elems[i]));
    for (const Element& g : standard_generators(P))
        fg.gens.push_back(index(g));
    return fg;
}

EnumeratedGroup enumerate_group(const GroupParams& P)
{
    EnumeratedGroup G;
    G.P = P;
    G.elems = enumerate(P);
    return G;
}

FiniteGroup from_table(std::vector<uint32_t> table, uint32_t N, std::vector<uint32_t> gens)
{
    FiniteGroup fg;
    fg.N = N;
    auto tab = std::make_shared<std::vector<uint32_t>>(std::move(table));
    fg.mul = [tab, N](uint32_t a, uint32_t b) { return (*tab)[size_t(a) * N + b]; };
    fg.inv.assign(N, 0);
    for (uint32_t a = 0; a < N; ++a)
        for (uint32_t b = 0; b < N; ++b)
            if ((*tab)[size_t(a) * N + b] == 0) {
                fg.inv[a] = b;
                break;
            }
    fg.gens = std::move(gens);
    return fg;
}

PermGroup perm_group(int m, const std::vector<std::vector<uint8_t>>& gens)
{
    PermGroup pg;
    pg.m = m;
    std::vector<uint8_t> id(m);
    for (int i = 0; i < m; ++i)
        id[i] = uint8_t(i);
    std::map<std::vector<uint8_t>, uint32_t> where;
    pg.elems.push_back(id);
    where[id] = 0;
    for (size_t head = 0; head < pg.elems.size(); ++head) {
        for (const auto& g : gens) {
            std::vector<uint8_t> c(m);
            for (int i = 0; i < m; ++i)
                c[i] = pg.elems[head][g[i]];
            if (!where.count(c)) {
                where[c] = uint32_t(pg.elems.size());
                pg.elems.push_back(c);
            }
        }
    }
    const uint32_t N = uint32_t(pg.elems.size());
    std::vector<uint32_t> table(size_t(N) * N);
    for (uint32_t a = 0; a < N; ++a)
        for (uint32_t b = 0; b < N; ++b) {
            std::vector<uint8_t> c(m);
            for (int i = 0; i < m; ++i)
                c[i] = pg.elems[a][pg.elems[b][i]];
            table[size_t(a) * N + b] = where.at(c);
        }
    std::vector<uint32_t> gi;
    for (const auto& g : gens)
        gi.push_back(where.at(g));
    pg.fg = from_table(std::move(table), N, std::move(gi));
    return pg;
}

ClassStructure compute_classes(const FiniteGroup& G)
{
    constexpr uint32_t kNone = UINT32_MAX;
    ClassStructure cs;
    cs.cls.assign(G.N, kNone);
    std::vector<uint32_t> queue;
    for (uint32_t x = 0; x < G.N; ++x) {
        if (cs.cls[x] != kNone)
            continue;
        const uint32_t id = cs.count();
        cs.reps.push_back(x);
        cs.cls[x] = id;
        queue.assign(1, x);
        for (size_t h = 0; h < queue.size(); ++h) {
            for (uint32_t g : G.gens) {
                uint32_t y = G.mul(G.mul(g, queue[h]), G.inv[g]);
                if (cs.cls[y] == kNone) {
                    cs.cls[y] = id;
                    queue.push_back(y);
                }
            }
        }
        cs.sizes.push_back(queue.size());
    }
    cs.inv_class.resize(cs.count());
    for (uint32_t c = 0; c < cs.count(); ++c)
        cs.inv_class[c] = cs.cls[G.inv[cs.reps[c]]];
    return cs;
}

// Closure of the set containing the identity under right multiplication by gens.
static std::vector<uint32_t> closure(const FiniteGroup& G, const std::vector<uint32_t>& gens, std::vector<char>& in)
{
    std::vector<uint32_t> out{0};
    in.assign(G.N, 0);
    in[0] = 1;
    for (size_t h = 0; h < out.size(); ++h)
        for (uint32_t g : gens) {
            uint32_t y = G.mul(out[h], g);
            if (!in[y]) {
                in[y] = 1;
                out.push_back(y);
            }
        }
    return out;
}

std::vector<uint32_t> generated_subgroup(const FiniteGroup& G, const std::vector<uint32_t>& gens)
{
    std::vector<char> in;
    auto out = closure(G, gens, in);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_subgroup(const FiniteGroup& G, const std::vector<uint32_t>& H)
{
    if (H.empty())
        return false;
    std::vector<char> in(G.N, 0);
    for (uint32_t h : H) {
        if (h >= G.N)
            return false;
        in[h] = 1;
    }
    if (!in[0])
        return false;
    for (uint32_t a : H)
        for (uint32_t b : H)
            if (!in[G.mul(a, b)])
                return false;
    return true;
}

std::vector<uint32_t> derived_subgroup(const FiniteGroup& G, const std::vector<uint32_t>& H)
{
    // Greedy generating set of H.
    std::vector<uint32_t> hg;
    std::vector<char> in;
    closure(G, hg, in);
    for (uint32_t h : H)
        if (!in[h]) {
            hg.push_back(h);
            closure(G, hg, in);
        }
    std::vector<uint32_t> comm;
    for (size_t i = 0; i < hg.size(); ++i)
        for (size_t j = i + 1; j < hg.size(); ++j) {
            uint32_t a = hg[i], b = hg[j];
            uint32_t c = G.mul(G.mul(a, b), G.mul(G.inv[a], G.inv[b]));
            if (c != 0)
                comm.push_back(c);
        }
    // Closure under x -> x c and x -> h x h^{-1}: the normal closure in H.
    std::vector<char> mark(G.N, 0);
    std::vector<uint32_t> out{0};
    mark[0] = 1;
    for (size_t k = 0; k < out.size(); ++k) {
        const uint32_t x = out[k];
        auto push = [&](uint32_t y) {
            if (!mark[y]) {
                mark[y] = 1;
                out.push_back(y);
            }
        };
        for (uint32_t c : comm)
            push(G.mul(x, c));
        for (uint32_t h : hg)
            push(G.mul(G.mul(h, x), G.inv[h]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace prg

namespace prg {

std::vector<uint32_t> extend_homomorphism(const FiniteGroup& A, const std::vector<uint32_t>& gens,
                                          const FiniteGroup& B, const std::vector<uint32_t>& imgs)
{
    constexpr uint32_t unset = UINT32_MAX;
    std::vector<uint32_t> map(A.N, unset);
    map[0] = 0;
    std::vector<uint32_t> queue{0};
    for (size_t h = 0; h < queue.size(); ++h) {
        const uint32_t a = queue[h];
        for (size_t i = 0; i < gens.size(); ++i) {
            const uint32_t x = A.mul(a, gens[i]);
            const uint32_t y = B.mul(map[a], imgs[i]);
            if (map[x] == unset) {
                map[x] = y;
                queue.push_back(x);
            } else if (map[x] != y) {
                return {};
            }
        }
    }
    if (queue.size() != A.N)
        return {};
    return map;
}

std::vector<uint32_t> small_generating_set(const FiniteGroup& G, uint64_t seed)
{
    if (G.N == 1)
        return {};
    std::mt19937_64 rng(seed);
    for (size_t k = 1;; ++k) {
        // A few random tries per size, then grow.
        for (int attempt = 0; attempt < 24; ++attempt) {
            std::vector<uint32_t> gens;
            for (size_t i = 0; i < k; ++i)
                gens.push_back(uint32_t(1 + rng() % (G.N - 1)));
            if (generated_subgroup(G, gens).size() == G.N)
                return gens;
        }
        if (k >= G.gens.size())
            return G.gens;
    }
}

std::vector<uint32_t> element_orders(const FiniteGroup& G)
{
    std::vector<uint32_t> ord(G.N, 0);
    for (uint32_t g = 0; g < G.N; ++g) {
        uint32_t k = 1, x = g;
        while (x != 0) {
            x = G.mul(x, g);
            ++k;
        }
        ord[g] = k;
    }
    return ord;
}

} // namespace prg
