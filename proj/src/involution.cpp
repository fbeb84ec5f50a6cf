#include "prg/involution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prg/character.hpp"
#include "prg/config.hpp"
#include "prg/errors.hpp"
#include "prg/isomorphism.hpp"
#include "prg/kernels.hpp"
#include "prg/numtheory.hpp"
#include "prg/split.hpp"

namespace prg {

namespace {

GroupParams ambient(const GroupParams& G) { return make_group(G.r, 1, G.q, G.n); }

bool has_g(const NuChoice& nu) { return nu.g.n != 0; }

Element apply_nu(const GroupParams& G, const GroupParams& A, const NuChoice& nu, const Element& e)
{
    Element x = reparam(A, e);
    if (nu.with_tau)
        x = tau(A, x);
    if (has_g(nu))
        x = multiply(A, multiply(A, nu.g, x), inverse(A, nu.g));
    return reparam(G, x);
}

std::vector<uint32_t> nu_table(const EnumeratedGroup& E, const NuChoice& nu)
{
    const GroupParams A = ambient(E.P);
    std::vector<uint32_t> t(E.size());
    for (uint32_t i = 0; i < E.size(); ++i)
        t[i] = E.index(apply_nu(E.P, A, nu, E.elems[i]));
    return t;
}

bool in_list(const GroupParams& G, std::initializer_list<std::array<int, 4>> list)
{
    for (const auto& t : list)
        if (G.r == t[0] && G.p == t[1] && G.q == t[2] && G.n == t[3])
            return true;
    return false;
}

// Tuples where a ν with ν(h) ~ h^{-1} need not involve τ.
bool six_exception(const GroupParams& G)
{
    return in_list(G, {{3, 3, 3, 3}, {6, 3, 3, 3}, {6, 3, 6, 3}, {6, 6, 3, 3}, {4, 2, 4, 4}, {4, 4, 4, 4}});
}

bool all_congruent(const GroupParams& G, int v, int m)
{
    return G.r % m == v && G.p % m == v && G.q % m == v && G.n % m == v;
}

TwistedData twisted_on(std::shared_ptr<const EnumeratedGroup> Ep, const NuChoice& nu)
{
    if (!is_involutive(Ep->P, nu))
        throw PreconditionFailed(nu.str(Ep->P) + " is not an involution of G(" + Ep->P.str() + ")");
    TwistedData td;
    td.E = std::move(Ep);
    td.nu = nu;
    const EnumeratedGroup& E = *td.E;
    const uint32_t N = E.size();
    td.nu_table = nu_table(E, nu);
    const auto& nt = td.nu_table;
    for (uint32_t w = 0; w < N; ++w)
        if (E.mul(w, nt[w]) == 0)
            td.involutions.push_back(w);

    // ω ↦ s ω ν(s)^{-1} for the standard generators s.
    std::vector<std::pair<uint32_t, uint32_t>> act;
    for (const auto& s : standard_generators(E.P)) {
        const uint32_t si = E.index(s);
        act.push_back({si, E.index(inverse(E.P, E.elems[nt[si]]))});
    }
    std::vector<int32_t> cls(N, -1);
    for (uint32_t w : td.involutions) {
        if (cls[w] >= 0)
            continue;
        const int32_t id = int32_t(td.classes.size());
        TwistedClass tc;
        tc.rep = w;
        cls[w] = id;
        tc.members.push_back(w);
        for (size_t h = 0; h < tc.members.size(); ++h)
            for (const auto& [a, b] : act) {
                const uint32_t y = E.mul(E.mul(a, tc.members[h]), b);
                if (cls[y] < 0) {
                    cls[y] = id;
                    tc.members.push_back(y);
                }
            }
        std::sort(tc.members.begin(), tc.members.end());
        for (uint32_t g = 0; g < N; ++g)
            if (E.mul(g, w) == E.mul(w, nt[g]))
                tc.centralizer.push_back(g);
        td.classes.push_back(std::move(tc));
    }
    return td;
}

// Irreducible values on the classes of an enumerated group.
struct IrrData {
    ClassStructure cs;
    Eigen::MatrixXcd V;  // irreducibles × classes
    std::vector<int64_t> deg;
    uint64_t degsum = 0;
};

IrrData irr_data(const EnumeratedGroup& E, const FiniteGroup& F)
{
    IrrData d;
    if (E.P.n <= 2) {
        Rank2Irr R(E.P);
        d.cs = compute_classes(F);
        d.V.resize(Eigen::Index(R.count()), d.cs.count());
        std::vector<cplx> v(R.count());
        for (uint32_t c = 0; c < d.cs.count(); ++c) {
            R.values_at(E.elems[d.cs.reps[c]], v.data());
            for (size_t i = 0; i < v.size(); ++i)
                d.V(Eigen::Index(i), c) = v[i];
        }
        for (size_t i = 0; i < R.count(); ++i)
            d.deg.push_back(R.degree(i));
    } else {
        auto T = character_table(E.P);
        d.cs = T->classes;
        d.V = T->values;
        d.deg = T->degrees;
    }
    for (int64_t x : d.deg)
        d.degsum += uint64_t(x);
    return d;
}

// Multiplicities of every irreducible in Ind_H^G λ_c for each λ_c = ζ_D^{exps[c]}.
std::vector<std::vector<int64_t>> induced_rows(const IrrData& d, const std::vector<uint32_t>& H,
                                               const std::vector<std::vector<int32_t>>& exps, int64_t D)
{
    std::vector<cplx> z(static_cast<size_t>(D));
    for (int64_t k = 0; k < D; ++k)
        z[size_t(k)] = std::polar(1.0, 2.0 * M_PI * double(k) / double(D));
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(Eigen::Index(exps.size()), d.cs.count());
    for (size_t c = 0; c < exps.size(); ++c)
        for (size_t i = 0; i < H.size(); ++i)
            S(Eigen::Index(c), d.cs.cls[H[i]]) += z[size_t(exps[c][i])];
    const Eigen::MatrixXcd M = S * d.V.adjoint() / double(H.size());
    std::vector<std::vector<int64_t>> out(exps.size(), std::vector<int64_t>(size_t(M.cols())));
    for (Eigen::Index c = 0; c < M.rows(); ++c)
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            const double rm = std::round(M(c, j).real());
            if (std::abs(M(c, j) - rm) > 1e-4)
                throw NumericalFailure("induced multiplicity is not an integer: " + std::to_string(M(c, j).real()));
            out[size_t(c)][size_t(j)] = int64_t(rm);
        }
    return out;
}

// Greedy generating set of a subgroup (sorted index list).
std::vector<uint32_t> subgroup_gens(const FiniteGroup& F, const std::vector<uint32_t>& H)
{
    std::vector<uint32_t> gens, span{0};
    for (auto it = H.rbegin(); it != H.rend() && span.size() < H.size(); ++it) {
        if (std::binary_search(span.begin(), span.end(), *it))
            continue;
        gens.push_back(*it);
        span = generated_subgroup(F, gens);
    }
    return gens;
}

struct CoverRow {
    uint32_t cls, chr;
    std::vector<uint64_t> bits;
};

// One row per twisted class, irreducibles covered exactly once.
class ExactCover {
public:
    ExactCover(const std::vector<CoverRow>& rows, size_t nclass, size_t nirr)
        : rows_(rows), nclass_(nclass), nirr_(nirr), words_((nirr + 63) / 64), covered_(words_, 0),
          used_(nclass, false), by_irr_(nirr), by_class_(nclass)
    {
        for (size_t i = 0; i < rows.size(); ++i) {
            by_class_[rows[i].cls].push_back(i);
            for (size_t j = 0; j < nirr; ++j)
                if (bit(rows[i].bits, j))
                    by_irr_[j].push_back(i);
        }
    }

    bool solve() { return rec(0); }
    const std::vector<size_t>& picked() const { return picked_; }
    uint64_t nodes() const { return nodes_; }

private:
    static bool bit(const std::vector<uint64_t>& b, size_t j) { return (b[j / 64] >> (j % 64)) & 1; }

    bool fits(size_t i) const
    {
        if (used_[rows_[i].cls])
            return false;
        for (size_t w = 0; w < words_; ++w)
            if (rows_[i].bits[w] & covered_[w])
                return false;
        return true;
    }

    bool rec(size_t ncovered)
    {
        ++nodes_;
        if (ncovered == nirr_)
            return std::find(used_.begin(), used_.end(), false) == used_.end();
        // Column with the fewest fitting rows.
        const std::vector<size_t>* best = nullptr;
        size_t best_count = SIZE_MAX;
        auto consider = [&](const std::vector<size_t>& col) {
            size_t cnt = 0;
            for (size_t i : col)
                cnt += fits(i);
            if (cnt < best_count) {
                best_count = cnt;
                best = &col;
            }
        };
        for (size_t j = 0; j < nirr_ && best_count > 0; ++j)
            if (!bit(covered_, j))
                consider(by_irr_[j]);
        for (size_t c = 0; c < nclass_ && best_count > 0; ++c)
            if (!used_[c])
                consider(by_class_[c]);
        if (best_count == 0 || !best)
            return false;
        for (size_t i : *best) {
            if (!fits(i))
                continue;
            size_t add = 0;
            for (size_t w = 0; w < words_; ++w) {
                covered_[w] |= rows_[i].bits[w];
                add += size_t(__builtin_popcountll(rows_[i].bits[w]));
            }
            used_[rows_[i].cls] = true;
            picked_.push_back(i);
            if (rec(ncovered + add))
                return true;
            picked_.pop_back();
            used_[rows_[i].cls] = false;
            for (size_t w = 0; w < words_; ++w)
                covered_[w] &= ~rows_[i].bits[w];
        }
        return false;
    }

    const std::vector<CoverRow>& rows_;
    size_t nclass_, nirr_, words_;
    std::vector<uint64_t> covered_;
    std::vector<bool> used_;
    std::vector<std::vector<size_t>> by_irr_, by_class_;
    std::vector<size_t> picked_;
    uint64_t nodes_ = 0;
};

int64_t exp_of(cplx v, int64_t den)
{
    const double a = std::arg(v) / (2.0 * M_PI) * double(den);
    const int64_t k = std::llround(a);
    if (std::abs(a - double(k)) > 1e-6 || std::abs(std::abs(v) - 1.0) > 1e-6)
        throw NumericalFailure("value is not a root of unity of order dividing " + std::to_string(den));
    return nt::mod(k, den);
}

} // namespace

std::string NuChoice::str(const GroupParams& G) const
{
    std::string s = has_g(*this) ? "Ad" + format_element(ambient(G), g) : "";
    if (with_tau)
        return s.empty() ? "tau" : s + "*tau";
    return s.empty() ? "id" : s;
}

NuChoice nu_tau() { return {}; }

NuChoice nu_ad_t(const GroupParams& G, int64_t i, bool with_tau)
{
    NuChoice nu;
    nu.with_tau = with_tau;
    if (nt::mod(i, G.r) != 0)
        nu.g = gen_t_pow(ambient(G), i);
    return nu;
}

AutSpec nu_spec(const GroupParams& G, const NuChoice& nu)
{
    const AutSpec ad = make_ad(G, has_g(nu) ? nu.g : identity(ambient(G)));
    if (!nu.with_tau)
        return ad;
    return has_g(nu) ? compose(ad, make_tau(G)) : make_tau(G);
}

bool is_involutive(const GroupParams& G, const NuChoice& nu)
{
    const GroupParams A = ambient(G);
    for (const auto& s : standard_generators(G))
        if (!(apply_nu(G, A, nu, apply_nu(G, A, nu, s)) == s))
            return false;
    return true;
}

std::vector<Element> twisted_involutions(const GroupParams& G, const NuChoice& nu)
{
    if (!is_involutive(G, nu))
        throw PreconditionFailed(nu.str(G) + " is not an involution of G(" + G.str() + ")");
    const GroupParams A = ambient(G);
    std::vector<Element> out;
    for_each_element(G, [&](uint64_t, const Element& w) {
        if (multiply(G, w, apply_nu(G, A, nu, w)) == identity(G))
            out.push_back(w);
    });
    return out;
}

TwistedData twisted_classes(const GroupParams& G, const NuChoice& nu)
{
    return twisted_on(std::make_shared<const EnumeratedGroup>(enumerate_group(G)), nu);
}

Parity classify_absolute(const GroupParams& G, const Element& w)
{
    if (!is_member(G, w) || !is_tau_involution(G, w))
        throw NotAnAbsoluteInvolution(format_element(G, w) + " is not an absolute involution of G(" + G.str() + ")");
    // Lifts differ by scalars, which leave x_{π(i)} - x_i unchanged; that difference is 0 everywhere
    // (symmetric) or r/2 everywhere on a fixed-point-free π (antisymmetric).
    for (int i = 0; i < G.n; ++i)
        if (w.perm[i] == i)
            return Parity::Symmetric;
    const int64_t d = nt::mod(w.col[w.perm[0]] - w.col[0], G.r);
    return d == 0 ? Parity::Symmetric : Parity::Antisymmetric;
}

bool has_antisymmetric(const GroupParams& G)
{
    return G.q % 2 == 0 && G.n % 2 == 0 && !all_congruent(G, 2, 4);
}

bool has_antisymmetric_brute(const GroupParams& G)
{
    bool found = false;
    for_each_element(G, [&](uint64_t, const Element& w) {
        if (!found && is_tau_involution(G, w))
            found = classify_absolute(G, w) == Parity::Antisymmetric;
    });
    return found;
}

std::optional<Element> antisymmetric_witness(const GroupParams& G)
{
    if (G.n % 2 || G.r % 2)
        return std::nullopt;
    const int64_t r = G.r;
    for (int64_t a = 0; a < r; ++a) {
        if (nt::mod(2 * a + r * G.n / 4, G.p) != 0)
            continue;
        std::vector<int> perm(G.n);
        std::vector<int64_t> x(G.n);
        for (int i = 0; i < G.n; i += 2) {
            perm[i] = i + 1;
            perm[i + 1] = i;
            x[i] = i == 0 ? a : 0;
            x[i + 1] = x[i] + r / 2;
        }
        Element w = make_element(G, perm, x);
        if (is_member(G, w) && is_tau_involution(G, w))
            return w;
    }
    return std::nullopt;
}

ModelCheck verify_model(const ModelDatum& data)
{
    const GroupParams& G = data.G;
    auto E = std::make_shared<const EnumeratedGroup>(enumerate_group(G));
    const FiniteGroup F = E->as_finite_group();
    const TwistedData td = twisted_on(E, data.nu);
    std::vector<int32_t> cls_of(E->size(), -1);
    for (size_t c = 0; c < td.classes.size(); ++c)
        for (uint32_t w : td.classes[c].members)
            cls_of[w] = int32_t(c);

    const IrrData d = irr_data(*E, F);
    std::vector<bool> seen(td.classes.size(), false);
    ModelCheck out;
    out.multiplicities.assign(d.deg.size(), 0);
    for (const auto& en : data.entries) {
        if (en.gens.size() != en.num.size() || en.den <= 0)
            throw BadModelShape("entry has " + std::to_string(en.gens.size()) + " generators but " +
                                std::to_string(en.num.size()) + " values");
        Element rep = en.rep;
        canonicalize(G, rep);
        if (!is_member(G, rep))
            throw BadModelShape(format_element(G, rep) + " is not in G(" + G.str() + ")");
        const int32_t c = cls_of[E->index(rep)];
        if (c < 0)
            throw BadModelShape(format_element(G, rep) + " is not a twisted involution");
        if (seen[size_t(c)])
            throw BadModelShape("two entries lie in the twisted class of " + format_element(G, rep));
        seen[size_t(c)] = true;

        std::vector<uint32_t> gi;
        for (Element g : en.gens) {
            canonicalize(G, g);
            if (!is_member(G, g))
                throw BadModelShape(format_element(G, g) + " is not in G(" + G.str() + ")");
            gi.push_back(E->index(g));
        }
        // The twisted centralizer of en.rep itself, which is conjugate to that of the class rep.
        const uint32_t w = E->index(rep);
        std::vector<uint32_t> cen;
        for (uint32_t g = 0; g < E->size(); ++g)
            if (E->mul(g, w) == E->mul(w, td.nu_table[g]))
                cen.push_back(g);
        if (generated_subgroup(F, gi) != cen)
            throw BadModelShape("subgroup of the entry at " + format_element(G, rep) +
                                " is not its twisted centralizer");

        // λ along Cayley edges; consistency makes it a homomorphism.
        std::vector<int64_t> val(E->size(), -1);
        val[0] = 0;
        std::vector<uint32_t> queue{0};
        for (size_t h = 0; h < queue.size(); ++h)
            for (size_t j = 0; j < gi.size(); ++j) {
                const uint32_t y = F.mul(queue[h], gi[j]);
                const int64_t v = nt::mod(val[queue[h]] + en.num[j], en.den);
                if (val[y] < 0) {
                    val[y] = v;
                    queue.push_back(y);
                } else if (val[y] != v) {
                    throw BadModelShape("values at " + format_element(G, rep) + " do not define a linear character");
                }
            }
        std::vector<std::vector<int32_t>> ex(1);
        for (uint32_t h : cen)
            ex[0].push_back(int32_t(val[h]));
        const auto m = induced_rows(d, cen, ex, en.den);
        for (size_t j = 0; j < m[0].size(); ++j)
            out.multiplicities[j] += m[0][j];
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw BadModelShape("some twisted class of G(" + G.str() + ") has no entry");
    out.ok = std::all_of(out.multiplicities.begin(), out.multiplicities.end(), [](int64_t x) { return x == 1; });
    return out;
}

ModelDatum apr_model(int r, int n)
{
    if (r % 2 == 0)
        throw PreconditionFailed("the block-matrix model needs r odd, got r = " + std::to_string(r));
    const GroupParams G = make_group(r, 1, 1, n);
    const EnumeratedGroup E = enumerate_group(G);
    const FiniteGroup F = E.as_finite_group();
    ModelDatum out{G, nu_tau(), {}};
    const int64_t den = 2 * int64_t(r);
    for (int i = 0; 2 * i <= n; ++i) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int j = 0; j < 2 * i; ++j)
            perm[j] = 2 * i - 1 - j;
        const Element X = perm_element(G, perm);
        const uint32_t xi = E.index(X);
        std::vector<uint32_t> H;
        for (uint32_t g = 0; g < E.size(); ++g)
            if (E.mul(g, xi) == E.index(multiply(G, X, tau(G, E.elems[g]))))
                H.push_back(g);
        ModelEntry en;
        en.rep = X;
        en.den = den;
        for (uint32_t g : subgroup_gens(F, H)) {
            const Element& h = E.elems[g];
            // det of the block on the first 2i coordinates: sign of π there times ζ^{Σ x_j}.
            int64_t s = 0;
            std::vector<bool> vis(2 * i, false);
            int inversions = 0;
            for (int j = 0; j < 2 * i; ++j) {
                if (h.perm[j] >= 2 * i)
                    throw PreconditionFailed("stabilizer does not preserve the block");
                s += h.col[j];
                for (int k = j + 1; k < 2 * i; ++k)
                    inversions += h.perm[j] > h.perm[k];
            }
            en.gens.push_back(h);
            en.num.push_back(nt::mod(2 * s + (inversions % 2 ? r : 0), den));
        }
        out.entries.push_back(std::move(en));
    }
    return out;
}

ModelDatum rank2_known_model(int r, int q, int which)
{
    if (!is_valid_tuple(r, 2, q, 2) || q % 2)
        throw PreconditionFailed("known rank-2 models need G(r,2,q,2) with q even");
    const bool c1 = (r / 2) % 2 == 1, c2 = (r / 2) % 2 == 0 && (r / q) % 2 == 1, c3 = (r / q) % 2 == 0;
    if ((which == 1 && !c1) || (which == 2 && !c2) || (which == 3 && !c3) || which < 1 || which > 3)
        throw PreconditionFailed("case " + std::to_string(which) + " does not apply to G(" + std::to_string(r) +
                                 ",2," + std::to_string(q) + ",2)");
    const GroupParams G = make_group(r, 2, q, 2);
    const int64_t den = 2 * int64_t(r);
    auto el = [&](bool swap, int64_t a, int64_t b) {
        return make_element(G, swap ? std::vector<int>{1, 0} : std::vector<int>{0, 1}, {a, b});
    };
    auto entry = [&](Element rep, std::vector<Element> gens, std::vector<int64_t> num) {
        return ModelEntry{rep, std::move(gens), std::move(num), den};
    };
    auto from_char = [&](Element rep, std::vector<Element> gens, const std::function<cplx(const Element&)>& f) {
        std::vector<int64_t> num;
        for (const auto& g : gens)
            num.push_back(exp_of(f(g), den));
        return entry(rep, std::move(gens), std::move(num));
    };
    const int64_t R = r, half = R / 2, sgn = R;  // ζ_{2r}^r = -1
    const Element sigma = el(true, 0, 0);
    ModelDatum out{G, nu_tau(), {}};
    if (which == 1) {
        const std::vector<Element> B{sigma, el(false, 1, -1), el(false, 2 * R / q, 0)};
        out.entries.push_back(entry(el(false, 0, 0), {sigma}, {sgn}));
        out.entries.push_back(entry(sigma, B, {0, 0, 0}));
        return out;
    }
    if (which == 2) {
        const std::vector<Element> A{sigma, el(false, 0, half)};
        const std::vector<Element> B{el(true, 1, -1), el(false, 0, half)};
        const std::vector<Element> C{sigma, el(false, 1, -1), el(false, 2 * R / q, 0)};
        out.entries.push_back(entry(el(false, 0, 0), A, {0, 0}));
        out.entries.push_back(entry(el(false, 0, 2), B, {sgn, sgn}));
        out.entries.push_back(from_char(sigma, C, rank2_character(G, Rank2Kind::Lambda, 0, 1)));
        out.entries.push_back(from_char(el(true, 0, half), C, rank2_character(G, Rank2Kind::Nu, q / 4, 1)));
        return out;
    }
    // u = r/2q in the subgroup generators. The σ-representatives use colors (1,1): (σ;u,u) is
    // twisted-conjugate to σ by a power of c when u is even.
    const int64_t u = R / (2 * q);
    const std::vector<Element> A{sigma, el(false, 0, half), el(false, u, u)};
    const std::vector<Element> B{el(true, 1, -1), el(false, 0, half), el(false, u, u)};
    const std::vector<Element> C{sigma, el(false, 1, -1), el(false, R / q, 0)};
    out.entries.push_back(entry(el(false, 0, 0), A, {0, 0, 0}));
    out.entries.push_back(entry(el(false, 1, 1), A, {0, 0, sgn}));
    out.entries.push_back(entry(el(false, 0, 2), B, {sgn, sgn, 0}));
    out.entries.push_back(entry(el(false, 1, 3), B, {sgn, sgn, sgn}));
    out.entries.push_back(from_char(sigma, C, rank2_character(G, Rank2Kind::Lambda, 0, 1)));
    // The sign exponent is q/2 + 1 mod 2, as the constituents λ^{z+q/2,·} require.
    out.entries.push_back(from_char(el(true, 1, 1), C, rank2_character(G, Rank2Kind::Lambda, q / 2, q / 2 + 1)));
    out.entries.push_back(from_char(el(true, 0, half), C, rank2_character(G, Rank2Kind::Nu, 0, 1)));
    out.entries.push_back(from_char(el(true, 1, 1 + half), C, rank2_character(G, Rank2Kind::Nu, q / 2, 1)));
    return out;
}

std::string to_string(GimStatus s)
{
    switch (s) {
    case GimStatus::Yes: return "YES";
    case GimStatus::No: return "NO";
    default: return "UNKNOWN-open";
    }
}

std::vector<NuChoice> nu_candidates(const GroupParams& G, bool all)
{
    if (!all && (G.n <= 2 || !(two_adic_pattern(G) || six_exception(G))))
        return {nu_tau()};

    // ν = Ad(g)∘α is an involution iff g α(g) centralizes G; conjugating by x ∈ G(r,1,q,n) sends g to
    // x g α(x)^{-1}, and g, gz give the same ν for z centralizing G.
    const GroupParams A = ambient(G);
    const EnumeratedGroup EA = enumerate_group(A);
    std::vector<Element> Ggens;
    for (const auto& s : standard_generators(G))
        Ggens.push_back(reparam(A, s));
    auto centralizes = [&](const Element& z) {
        for (const auto& s : Ggens)
            if (!(multiply(A, z, s) == multiply(A, s, z)))
                return false;
        return true;
    };
    std::vector<uint32_t> cent;
    for (uint32_t i = 0; i < EA.size(); ++i)
        if (centralizes(EA.elems[i]))
            cent.push_back(i);
    const auto Agens = standard_generators(A);

    std::vector<NuChoice> out;
    for (bool with_tau : {true, false}) {
        auto alpha = [&](const Element& x) { return with_tau ? tau(A, x) : x; };
        std::vector<uint32_t> parent(EA.size());
        std::iota(parent.begin(), parent.end(), 0u);
        std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](uint32_t a, uint32_t b) {
            a = find(a);
            b = find(b);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        };
        std::vector<bool> invol(EA.size(), false);
        for (uint32_t i = 0; i < EA.size(); ++i)
            invol[i] = centralizes(multiply(A, EA.elems[i], alpha(EA.elems[i])));
        for (uint32_t i = 0; i < EA.size(); ++i) {
            if (!invol[i])
                continue;
            const Element& g = EA.elems[i];
            for (const auto& x : Agens)
                unite(i, EA.index(multiply(A, multiply(A, x, g), inverse(A, alpha(x)))));
            for (uint32_t z : cent)
                unite(i, EA.index(multiply(A, g, EA.elems[z])));
        }
        for (uint32_t i = 0; i < EA.size(); ++i)
            if (invol[i] && find(i) == i) {
                NuChoice nu;
                nu.with_tau = with_tau;
                if (i != 0)
                    nu.g = EA.elems[i];
                out.push_back(nu);
            }
    }
    return out;
}

GimResult gim_search_with(const GroupParams& G, const std::vector<NuChoice>& nus)
{
    if (G.order > caps().gim)
        throw CapExceeded("order " + std::to_string(G.order) + " of G(" + G.str() + ") exceeds the GIM-search cap " +
                          std::to_string(caps().gim));
    auto E = std::make_shared<const EnumeratedGroup>(enumerate_group(G));
    const FiniteGroup F = E->as_finite_group();
    const IrrData d = irr_data(*E, F);
    const size_t nirr = d.deg.size();

    GimResult res;
    res.source = "brute-force";
    res.status = GimStatus::No;
    res.branch = "search";
    for (const auto& nu : nus) {
        res.tried.push_back(nu);
        if (!is_involutive(G, nu)) {
            res.notes.push_back(nu.str(G) + ": not an involution");
            continue;
        }
        const TwistedData td = twisted_on(E, nu);
        if (td.involutions.size() != d.degsum) {
            res.notes.push_back(nu.str(G) + ": |I| = " + std::to_string(td.involutions.size()) +
                                " differs from the degree sum " + std::to_string(d.degsum));
            continue;
        }
        std::vector<CoverRow> rows;
        std::vector<LinearChars> lin;
        bool dead = false;
        for (uint32_t c = 0; c < td.classes.size() && !dead; ++c) {
            lin.push_back(linear_characters(F, td.classes[c].centralizer));
            const auto& L = lin.back();
            const auto M = induced_rows(d, L.H, L.exps, L.D);
            size_t before = rows.size();
            for (uint32_t k = 0; k < M.size(); ++k) {
                if (std::any_of(M[k].begin(), M[k].end(), [](int64_t x) { return x > 1; }))
                    continue;
                CoverRow row{c, k, std::vector<uint64_t>((nirr + 63) / 64, 0)};
                for (size_t j = 0; j < nirr; ++j)
                    if (M[k][j])
                        row.bits[j / 64] |= uint64_t(1) << (j % 64);
                rows.push_back(std::move(row));
            }
            dead = rows.size() == before;
        }
        if (dead) {
            res.notes.push_back(nu.str(G) + ": some twisted class has no multiplicity-free induced character");
            continue;
        }
        ExactCover X(rows, td.classes.size(), nirr);
        if (!X.solve()) {
            res.notes.push_back(nu.str(G) + ": no exact cover (" + std::to_string(X.nodes()) + " nodes)");
            continue;
        }
        ModelDatum md{G, nu, {}};
        std::vector<size_t> order = X.picked();
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return rows[a].cls < rows[b].cls; });
        for (size_t i : order) {
            const auto& row = rows[i];
            const auto& L = lin[row.cls];
            ModelEntry en;
            en.rep = E->elems[td.classes[row.cls].rep];
            en.den = L.D;
            for (uint32_t g : subgroup_gens(F, L.H)) {
                const size_t pos = size_t(std::lower_bound(L.H.begin(), L.H.end(), g) - L.H.begin());
                en.gens.push_back(E->elems[g]);
                en.num.push_back(L.exps[row.chr][pos]);
            }
            md.entries.push_back(std::move(en));
        }
        res.status = GimStatus::Yes;
        res.witness = std::move(md);
        return res;
    }
    return res;
}

GimResult gim_search(const GroupParams& G, bool all_nu)
{
    return gim_search_with(G, nu_candidates(G, all_nu));
}

bool no_split_no_antisymmetric_condition(const GroupParams& G)
{
    const int64_t g = nt::gcd(G.p, G.n);
    return (g == 1 && (G.q % 2 || G.n % 2)) || (g == 2 && all_congruent(G, 2, 4));
}

bool conjecture_exception(const GroupParams& G)
{
    return in_list(G, {{3, 3, 3, 3}, {6, 3, 3, 3}, {6, 3, 6, 3}, {6, 6, 3, 3},
                       {4, 1, 2, 2}, {2, 1, 2, 4}, {4, 4, 4, 4}, {8, 2, 4, 4}});
}

bool conjecture_predicts_gim(const GroupParams& G)
{
    return no_split_no_antisymmetric_condition(G) || (is_self_dual(G) && nt::gcd(G.p, G.n) <= 2);
}

GimResult classify(const GroupParams& G)
{
    GimResult res;
    res.source = "theorem";
    const int64_t g = nt::gcd(G.p, G.n);
    auto set = [&](GimStatus s, const char* branch) {
        res.status = s;
        res.branch = branch;
    };
    if (G.n == 2) {
        const int64_t pq = int64_t(G.p) * G.q;
        if (G.p % 2 == G.q % 2)
            set(GimStatus::Yes, "rank2-same-parity");
        else if (G.r % pq == 0 && (G.r / pq) % 2 == 1)
            set(GimStatus::Yes, "rank2-r/pq-odd");
        else if (G.r == 4 && G.p == 1 && G.q == 2)
            set(GimStatus::Yes, "rank2-(4,1,2)");
        else
            set(GimStatus::No, "rank2-none");
    } else if (g == 1) {
        if (G.q % 2 || G.n % 2)
            set(GimStatus::Yes, "gcd1-q-or-n-odd");
        else
            set(GimStatus::UnknownOpen, "open-gcd1-q-n-even");
    } else if (g == 2) {
        if (G.q % 2)
            set(GimStatus::No, "gcd2-q-odd");
        else
            set(GimStatus::UnknownOpen, "open-gcd2-q-even");
    } else if (g == 3) {
        if (in_list(G, {{3, 3, 3, 3}, {6, 3, 3, 3}, {6, 6, 3, 3}, {6, 3, 6, 3}}))
            set(GimStatus::Yes, "gcd3-listed");
        else
            set(GimStatus::No, "gcd3-unlisted");
    } else if (g == 4) {
        if (all_congruent(G, 4, 8))
            set(GimStatus::UnknownOpen, "open-gcd4-4-mod-8");
        else
            set(GimStatus::No, "gcd4-not-4-mod-8");
    } else {
        set(GimStatus::No, "gcd-at-least-5");
    }

    const bool c1 = no_split_no_antisymmetric_condition(G);
    const bool c2 = is_self_dual(G) && g <= 2;
    if (c1)
        res.notes.push_back("no split representations and no antisymmetric absolute involutions");
    if (c2)
        res.notes.push_back("self-dual with gcd(p,n) <= 2");
    if (conjecture_exception(G))
        res.notes.push_back("known exception: has a GIM outside both conjectural conditions");
    else
        res.notes.push_back(std::string("conjectural prediction: ") + (conjecture_predicts_gim(G) ? "YES" : "NO"));
    return res;
}

std::string to_string(CondState s)
{
    switch (s) {
    case CondState::Holds: return "holds";
    case CondState::NotApplicable: return "n/a";
    case CondState::Fails: return "fails";
    default: return "unknown";
    }
}

DescentCheck quotient_descent_check(int r, int p, int n, int m)
{
    if (m <= 0 || r % m || !is_valid_tuple(r, p, m, n))
        throw InvalidParameters("quotient of G(" + std::to_string(r) + "," + std::to_string(p) + "," +
                                std::to_string(n) + ") by a scalar subgroup of order " + std::to_string(m) +
                                " is not defined");
    const GroupParams L = make_group(r, p, 1, n);
    uint64_t involutive = 0;
    std::vector<uint8_t> perm(n);
    std::iota(perm.begin(), perm.end(), uint8_t(0));
    do {
        bool inv = true;
        for (int i = 0; i < n; ++i)
            inv &= perm[perm[i]] == i;
        involutive += inv;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double work = double(involutive) * std::pow(double(r), n);
    if (work > 1e8)
        throw CapExceeded("descent scan of G(" + L.str() + ") needs " + std::to_string(uint64_t(work)) + " steps");

    DescentCheck out;
    // z ω τ(z)^{-1} = z² ω for scalar z, so C_{L,τ}(ω) ∩ N is the 2-torsion of N for every ω.
    out.cond_i = m == 1 ? CondState::Holds : (m % 2 ? CondState::NotApplicable : CondState::Unknown);
    out.cond_ii = out.cond_ii_coset = true;
    const int64_t step = r / m;
    std::iota(perm.begin(), perm.end(), uint8_t(0));
    std::vector<int64_t> x(n);
    do {
        bool inv = true;
        for (int i = 0; i < n; ++i)
            inv &= perm[perm[i]] == i;
        if (!inv)
            continue;
        // ω τ(ω) = (1, z) with z_i = x_{π(i)} - x_i; ωN is a twisted involution iff z is a constant
        // multiple of r/m.
        std::fill(x.begin(), x.end(), 0);
        for (;;) {
            int64_t sum = 0;
            for (int i = 0; i < n; ++i)
                sum += x[i];
            if (sum % p == 0) {
                ++out.checked;
                const int64_t e = nt::mod(x[perm[0]] - x[0], r);
                bool scalar = e % step == 0;
                for (int i = 1; i < n && scalar; ++i)
                    scalar = nt::mod(x[perm[i]] - x[i], r) == e;
                if (scalar && e != 0) {
                    out.cond_ii = false;
                    // ω c^{j r/m} is a twisted involution iff e + 2 j r/m ≡ 0 (mod r).
                    bool any = false;
                    for (int64_t j = 0; j < m && !any; ++j)
                        any = nt::mod(e + 2 * j * step, r) == 0;
                    out.cond_ii_coset &= any;
                }
            }
            int i = 0;
            while (i < n && ++x[i] == r)
                x[i++] = 0;
            if (i == n)
                break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace prg
