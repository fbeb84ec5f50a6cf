#include "prg/split.hpp"

#include <algorithm>
#include <functional>

#include "prg/numtheory.hpp"

namespace prg {

int64_t PartitionTuple::weight() const
{
    int64_t w = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        int s = 0;
        for (int v : parts[i])
            s += v;
        w += int64_t(i) * s;
    }
    return w;
}

static std::vector<Partition> partitions_of(int m)
{
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int left, int maxp) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int v = std::min(left, maxp); v >= 1; --v) {
            cur.push_back(v);
            rec(left - v, v);
            cur.pop_back();
        }
    };
    rec(m, m);
    return out;
}

std::vector<PartitionTuple> irr_partition_index(int r, int q, int n)
{
    std::vector<std::vector<Partition>> parts_by_size(n + 1);
    for (int m = 0; m <= n; ++m)
        parts_by_size[m] = partitions_of(m);
    std::vector<PartitionTuple> out;
    PartitionTuple cur;
    cur.parts.assign(r, {});
    std::function<void(int, int, int64_t)> rec = [&](int i, int left, int64_t w) {
        if (i == r - 1) {
            if (nt::mod(w + int64_t(i) * left, q) != 0)
                return;
            for (const auto& lam : parts_by_size[left]) {
                cur.parts[i] = lam;
                out.push_back(cur);
            }
            cur.parts[i].clear();
            return;
        }
        for (int m = 0; m <= left; ++m)
            for (const auto& lam : parts_by_size[m]) {
                cur.parts[i] = lam;
                rec(i + 1, left - m, w + int64_t(i) * m);
            }
        cur.parts[i].clear();
    };
    rec(0, n, 0);
    return out;
}

bool is_split(const PartitionTuple& t, int p)
{
    const int r = int(t.parts.size());
    for (int d = 2; d <= p; ++d) {
        if (p % d || r % d)
            continue;
        const int shift = r / d;
        bool inv = true;
        for (int i = 0; i < r && inv; ++i)
            inv = t.parts[i] == t.parts[(i + shift) % r];
        if (inv)
            return true;
    }
    return false;
}

bool has_split_representations(const GroupParams& P)
{
    const int64_t g = nt::gcd(P.p, P.n);
    if (g == 1)
        return false;
    if (g == 2 && P.r % 4 == 2 && P.p % 4 == 2 && P.q % 4 == 2 && P.n % 4 == 2)
        return false;
    return true;
}

bool has_split_by_tuples(const GroupParams& P)
{
    for (const auto& t : irr_partition_index(P.r, P.q, P.n))
        if (is_split(t, P.p))
            return true;
    return false;
}

std::vector<std::vector<std::pair<int, int>>> cycle_types(int r, int n)
{
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> cur;
    // Nonincreasing sequence of (length, color) pairs.
    std::function<void(int, std::pair<int, int>)> rec = [&](int left, std::pair<int, int> maxpair) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int l = std::min(left, maxpair.first); l >= 1; --l) {
            int amax = (l == maxpair.first) ? maxpair.second : r - 1;
            for (int a = amax; a >= 0; --a) {
                cur.emplace_back(l, a);
                rec(left - l, {l, a});
                cur.pop_back();
            }
        }
    };
    rec(n, {n, r - 1});
    return out;
}

AmbientClassCounts ambient_class_counts(const GroupParams& P)
{
    const int64_t r = P.r, p = P.p, q = P.q, n = P.n;
    // Classes of G(r,n)/C_q are orbits of c^{r/q} acting on cycle types by (l,a) -> (l, a + l r/q);
    // counted with Burnside over the q shifts.
    unsigned __int128 fix_all = 0, fix_H = 0;
    if (n == 2) {
        // Only the shifts 0 and r/2 fix anything.
        fix_all += uint64_t(r + r * (r + 1) / 2);
        const int64_t D = r * nt::gcd(2, p) / p;
        fix_H += uint64_t(r / p + (r * r / p + D) / 2);
        if (q % 2 == 0) {
            fix_all += uint64_t(r + r / 2);
            int64_t pairs_H = 0;
            for (int64_t a = 0; a < r / 2; ++a)
                pairs_H += nt::mod(2 * a + r / 2, p) == 0;
            fix_H += uint64_t(r / p + pairs_H);
        }
    } else if (n == 1) {
        // Types are single colors a; shift by s fixes only when s = 0.
        fix_all += uint64_t(r);
        fix_H += uint64_t(r / p);
    } else {
        auto types = cycle_types(int(r), int(n));
        for (int64_t k = 0; k < q; ++k) {
            const int64_t s = k * (r / q);
            for (const auto& t : types) {
                std::vector<std::pair<int, int>> moved;
                moved.reserve(t.size());
                int64_t sum = 0;
                for (auto [l, a] : t) {
                    moved.emplace_back(l, int(nt::mod(a + l * s, r)));
                    sum += a;
                }
                std::sort(moved.begin(), moved.end(), std::greater<>());
                if (moved == t) {
                    ++fix_all;
                    if (sum % p == 0)
                        ++fix_H;
                }
            }
        }
    }
    return {uint64_t(fix_all / uint64_t(q)), uint64_t(fix_H / uint64_t(q))};
}

bool has_split_by_restriction(const GroupParams& P)
{
    auto c = ambient_class_counts(P);
    return uint64_t(P.p) * c.k_H > c.k;
}

} // namespace prg
