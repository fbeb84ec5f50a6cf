#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "prg/character.hpp"
#include "prg/config.hpp"
#include "prg/errors.hpp"
#include "prg/numtheory.hpp"

namespace prg {

uint64_t IrrProvider::degree_sum() const
{
    uint64_t s = 0;
    for (size_t i = 0; i < count(); ++i)
        s += uint64_t(degree(i));
    return s;
}

void TableIrr::values_at(const Element& g, cplx* out) const
{
    const uint32_t c = T_->classes.cls[index_of(P_, g)];
    for (uint32_t i = 0; i < T_->count(); ++i)
        out[i] = T_->values(i, c);
}

static std::vector<cplx> roots_of_unity(int r)
{
    std::vector<cplx> z(r);
    for (int i = 0; i < r; ++i)
        z[i] = std::polar(1.0, 2.0 * M_PI * i / r);
    return z;
}

Rank2Irr::Rank2Irr(const GroupParams& P) : P_(P), zeta_(roots_of_unity(P.r))
{
    if (P.n > 2)
        throw PreconditionFailed("Rank2Irr needs n <= 2");
    const int64_t r = P.r, L = r / P.p;
    if (P.n == 1) {
        // Cyclic group {x : p | x} / <r/q>; characters x -> ζ^{xy}, q | y, y mod r/p.
        for (int64_t y = 0; y < L; y += P.q)
            reps_.push_back({y, 0, 1, 0});
        return;
    }
    // θ_y, q | y1+y2, modulo the line (r/p)(1,1); canonical with y1 in [0, r/p).
    auto canon = [&](int64_t a, int64_t b) {
        int64_t shift = a - a % L;
        return std::make_pair(a - shift, nt::mod(b - shift, r));
    };
    for (int64_t y1 = 0; y1 < L; ++y1)
        for (int64_t y2 = nt::mod(-y1, P.q); y2 < r; y2 += P.q) {
            auto bar = canon(y2, y1);
            auto self = std::make_pair(y1, y2);
            if (bar == self) {
                reps_.push_back({y1, y2, 1, 0});
                reps_.push_back({y1, y2, 1, 1});
            } else if (self < bar) {
                reps_.push_back({y1, y2, 2, 0});
            }
        }
}

void Rank2Irr::values_at(const Element& g, cplx* out) const
{
    const int64_t r = P_.r;
    if (P_.n == 1) {
        for (size_t i = 0; i < reps_.size(); ++i)
            out[i] = zeta_[(int64_t(g.col[0]) * reps_[i].y1) % r];
        return;
    }
    const int64_t x1 = g.col[0], x2 = g.col[1];
    const bool swap = g.perm[0] == 1;
    for (size_t i = 0; i < reps_.size(); ++i) {
        const auto& c = reps_[i];
        const cplx th = zeta_[(x1 * c.y1 + x2 * c.y2) % r];
        if (c.deg == 2)
            out[i] = swap ? cplx(0) : th + zeta_[(x1 * c.y2 + x2 * c.y1) % r];
        else
            out[i] = (swap && c.eps) ? -th : th;
    }
}

std::unique_ptr<IrrProvider> irr_provider(const GroupParams& P)
{
    if (P.n <= 2)
        return std::make_unique<Rank2Irr>(P);
    return std::make_unique<TableIrr>(P, character_table(P));
}

namespace {

struct StabInfo {
    uint64_t degree_sum, classes;
};

std::mutex stab_mu;
std::map<std::vector<uint64_t>, StabInfo> stab_memo;

StabInfo stabilizer_info(int n, const std::vector<std::vector<uint8_t>>& perms)
{
    std::vector<uint64_t> key;
    for (const auto& p : perms)
        key.push_back(lehmer_rank(p.data(), n));
    std::sort(key.begin(), key.end());
    key.push_back(uint64_t(n));
    {
        std::lock_guard lock(stab_mu);
        auto it = stab_memo.find(key);
        if (it != stab_memo.end())
            return it->second;
    }
    StabInfo info;
    if (perms.size() == 1) {
        info = {1, 1};
    } else {
        PermGroup pg = perm_group(n, perms);
        auto cs = compute_classes(pg.fg);
        auto T = dixon_table(pg.fg, cs, 1);
        info = {T.degree_sum(), T.count()};
    }
    std::lock_guard lock(stab_mu);
    stab_memo.emplace(key, info);
    return info;
}

} // namespace

CliffordCount clifford_count(const GroupParams& P)
{
    const int n = P.n;
    const int64_t r = P.r, L = r / P.p;
    // All permutations of [n].
    std::vector<std::vector<uint8_t>> perms;
    {
        std::vector<uint8_t> p(n);
        for (int i = 0; i < n; ++i)
            p[i] = uint8_t(i);
        do
            perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
    CliffordCount out;
    unsigned __int128 weighted_classes = 0;
    std::vector<int64_t> y(n, 0);
    // Enumerate y: y_1 in [0, r/p), y_2..y_{n-1} free, y_n fixed mod q by q | Σy.
    std::function<void(int, int64_t)> rec = [&](int i, int64_t sum) {
        if (i == n - 1) {
            for (int64_t last = nt::mod(-sum, P.q); last < r; last += P.q) {
                y[n - 1] = last;
                std::vector<std::vector<uint8_t>> stab;
                for (const auto& pi : perms) {
                    int64_t k = nt::mod(y[pi[0]] - y[0], r);
                    if (k % L)
                        continue;
                    bool ok = true;
                    for (int j = 1; j < n && ok; ++j)
                        ok = nt::mod(y[pi[j]] - y[j], r) == k;
                    if (ok)
                        stab.push_back(pi);
                }
                auto info = stabilizer_info(n, stab);
                out.degree_sum += info.degree_sum;
                weighted_classes += (unsigned __int128)(info.classes) * stab.size();
            }
            return;
        }
        const int64_t hi = (i == 0) ? L : r;
        for (int64_t v = 0; v < hi; ++v) {
            y[i] = v;
            rec(i + 1, sum + v);
        }
    };
    if (n == 1) {
        out.degree_sum = P.order;
        out.irr_count = P.order;
        return out;
    }
    rec(0, 0);
    out.irr_count = uint64_t(weighted_classes / uint64_t(nt::factorial(n)));
    return out;
}

uint64_t sum_of_degrees(const GroupParams& P)
{
    if (P.n <= 2)
        return Rank2Irr(P).degree_sum();
    if (P.order <= caps().table)
        return character_table(P)->degree_sum();
    return clifford_count(P).degree_sum;
}

std::function<cplx(const Element&)> rank2_character(const GroupParams& P, Rank2Kind kind, int64_t a, int64_t b)
{
    if (P.n != 2 || (P.p != 1 && P.p != 2))
        throw PreconditionFailed("rank-2 characters are defined on G(r,1,q,2) and G(r,2,q,2)");
    const int64_t r = P.r, q = P.q;
    auto zeta = std::make_shared<std::vector<cplx>>(roots_of_unity(P.r));
    switch (kind) {
    case Rank2Kind::Chi: {
        const int64_t x = nt::mod(a, r), y = nt::mod(b, r);
        if (nt::mod(x + y, q) != 0)
            throw InvalidParameters("chi: x + y must be divisible by q");
        if (nt::mod(x - y, r / P.p) == 0)
            throw InvalidParameters("chi: x and y must differ modulo r/p");
        return [=](const Element& g) -> cplx {
            if (g.perm[0] == 1)
                return 0.0;
            const int64_t u = g.col[0], v = g.col[1];
            return (*zeta)[(u * x + v * y) % r] + (*zeta)[(u * y + v * x) % r];
        };
    }
    case Rank2Kind::Lambda: {
        const int64_t z = nt::mod(a, r);
        const int e = int(nt::mod(b, 2));
        if ((2 * z * (r / q)) % r != 0)
            throw InvalidParameters("lambda: z must be a multiple of q/gcd(2,q)");
        return [=](const Element& g) -> cplx {
            cplx v = (*zeta)[((g.col[0] + g.col[1]) * z) % r];
            return (e && g.perm[0] == 1) ? -v : v;
        };
    }
    case Rank2Kind::Nu: {
        const int64_t w = nt::mod(a, r);
        const int e = int(nt::mod(b, 2));
        if (P.p != 2 || r % 2)
            throw InvalidParameters("nu: needs p = 2 and r even");
        // Descends to the quotient iff (-1)^{r/q} ζ_r^{2w r/q} = 1.
        const int64_t ex = nt::mod(2 * w * (r / q) + ((r / q) % 2 ? r / 2 : 0), r);
        if (ex != 0)
            throw InvalidParameters("nu: parity condition fails for w = " + std::to_string(a));
        return [=](const Element& g) -> cplx {
            cplx v = (*zeta)[((g.col[0] + g.col[1]) * w) % r];
            if (g.col[0] % 2)
                v = -v;
            return (e && g.perm[0] == 1) ? -v : v;
        };
    }
    }
    throw InvalidParameters("unknown rank-2 character kind");
}

} // namespace prg
