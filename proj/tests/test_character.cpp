#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "prg/character.hpp"
#include "prg/cycles.hpp"
#include "prg/errors.hpp"
#include "prg/kernels.hpp"
#include "prg/split.hpp"
#include "test_helpers.hpp"

using namespace prg;

namespace {

// Row of T equal to f on class reps, or -1.
int matching_row(const CharacterTable& T, const ClassFunction& f, double tol = 1e-8)
{
    for (uint32_t i = 0; i < T.count(); ++i) {
        double dev = 0;
        for (uint32_t c = 0; c < T.classes.count(); ++c)
            dev = std::max(dev, std::abs(T.values(i, c) - f[c]));
        if (dev < tol)
            return int(i);
    }
    return -1;
}

ClassFunction provider_row(const GroupParams& P, const CharacterTable& T, const IrrProvider& irr, size_t i)
{
    std::vector<cplx> buf(irr.count());
    ClassFunction f(T.classes.count());
    for (uint32_t c = 0; c < T.classes.count(); ++c) {
        irr.values_at(element_at(P, T.classes.reps[c]), buf.data());
        f[c] = buf[i];
    }
    return f;
}

} // namespace

TEST_CASE("S3 table by the class-matrix method")
{
    auto pg = perm_group(3, {{1, 0, 2}, {1, 2, 0}});
    REQUIRE(pg.fg.N == 6);
    auto cs = compute_classes(pg.fg);
    auto T = dixon_table(pg.fg, cs);
    CHECK(T.count() == 3);
    CHECK(T.degrees == std::vector<int64_t>{1, 1, 2});
    CHECK(check_table(T).ok());
}

TEST_CASE("tables of small groups are healthy and count the classes")
{
    for (const auto& P : testutil::tuples(6, 1, 3, 400)) {
        CAPTURE(P.str());
        auto T = character_table(P);
        CHECK(check_table(*T).ok());
        CHECK(T->count() == conjugacy_classes(P).size());
        uint64_t sq = 0;
        for (auto d : T->degrees)
            sq += uint64_t(d * d);
        CHECK(sq == P.order);
        // Principal character first.
        for (uint32_t c = 0; c < T->classes.count(); ++c)
            CHECK(std::abs(T->values(0, c) - 1.0) < 1e-9);
    }
}

TEST_CASE("Rank2Irr agrees with the computed table")
{
    for (const auto& P : testutil::tuples(12, 1, 2, 600)) {
        CAPTURE(P.str());
        Rank2Irr irr(P);
        auto T = character_table(P);
        REQUIRE(irr.count() == T->count());
        CHECK(irr.degree_sum() == T->degree_sum());
        std::set<int> rows;
        for (size_t i = 0; i < irr.count(); ++i) {
            int row = matching_row(*T, provider_row(P, *T, irr, i));
            CHECK(row >= 0);
            CHECK(T->degrees[row] == irr.degree(i));
            rows.insert(row);
        }
        CHECK(rows.size() == irr.count());
    }
}

TEST_CASE("Clifford count agrees with the computed table")
{
    for (const auto& P : testutil::tuples(6, 3, 4, 1500)) {
        CAPTURE(P.str());
        auto cc = clifford_count(P);
        auto T = character_table(P);
        CHECK(cc.degree_sum == T->degree_sum());
        CHECK(cc.irr_count == T->count());
    }
}

TEST_CASE("degree sum against twisted involution counts")
{
    auto a = make_group(4, 1, 2, 2);
    CHECK(sum_of_degrees(a) == count_tau_involutions(a));
    auto b = make_group(3, 3, 3, 3);
    CHECK(sum_of_degrees(b) > count_tau_involutions(b));
    auto c = make_group(3, 1, 1, 3);  // gcd(p,n) = 1 gives equality
    CHECK(sum_of_degrees(c) == count_tau_involutions(c));
    CHECK(character_table(b)->count() == conjugacy_classes(b).size());
}

TEST_CASE("closed-form rank-2 characters")
{
    auto P = make_group(8, 2, 2, 2);
    auto T = character_table(P);
    int found = 0;
    for (int64_t x = 0; x < 8; ++x)
        for (int64_t y = 0; y < 8; ++y) {
            if ((x + y) % 2 || (x - y) % 4 == 0)
                continue;
            auto f = tabulate(P, *T, rank2_character(P, Rank2Kind::Chi, x, y));
            int row = matching_row(*T, f);
            CHECK(row >= 0);
            if (row >= 0)
                CHECK(T->degrees[row] == 2);
            ++found;
        }
    CHECK(found > 0);
    CHECK_THROWS_AS(rank2_character(P, Rank2Kind::Chi, 1, 2), InvalidParameters);
    CHECK_THROWS_AS(rank2_character(P, Rank2Kind::Chi, 1, 5), InvalidParameters);

    // λ^{0,0} is principal; λ^{z,1} has sign on the swap.
    auto l00 = tabulate(P, *T, rank2_character(P, Rank2Kind::Lambda, 0, 0));
    CHECK(matching_row(*T, l00) == 0);
    for (int64_t z = 0; z < 8; ++z)
        for (int e = 0; e < 2; ++e) {
            std::function<cplx(const Element&)> f;
            try {
                f = rank2_character(P, Rank2Kind::Lambda, z, e);
            } catch (const InvalidParameters&) {
                FAIL("every z is admissible when r/q is even");
            }
            CHECK(matching_row(*T, tabulate(P, *T, f)) >= 0);
        }

    // ν needs (ζ_{q/2})^w = (-1)^{r/q}; r/q = 4 is even so any w works here.
    for (int64_t w = 0; w < 8; ++w)
        for (int e = 0; e < 2; ++e)
            CHECK(matching_row(*T, tabulate(P, *T, rank2_character(P, Rank2Kind::Nu, w, e))) >= 0);

    // r/q odd, q/2 even: ν^{w} exists only for odd multiples of q/4.
    auto Q = make_group(12, 2, 4, 2);
    auto TQ = character_table(Q);
    for (int64_t w = 0; w < 12; ++w) {
        bool ok = (w % 2) == 1;
        if (ok)
            CHECK(matching_row(*TQ, tabulate(Q, *TQ, rank2_character(Q, Rank2Kind::Nu, w, 0))) >= 0);
        else
            CHECK_THROWS_AS(rank2_character(Q, Rank2Kind::Nu, w, 0), InvalidParameters);
    }
    CHECK_THROWS_AS(rank2_character(make_group(4, 4, 1, 2), Rank2Kind::Chi, 1, 3), PreconditionFailed);
}

TEST_CASE("linear characters")
{
    // Klein four group inside S4: 4 linear characters.
    auto S4 = make_group(1, 1, 1, 4);
    auto EG = enumerate_group(S4);
    auto G = EG.as_finite_group();
    std::vector<uint32_t> gens{EG.index(perm_element(S4, {1, 0, 3, 2})), EG.index(perm_element(S4, {2, 3, 0, 1}))};
    auto V = generated_subgroup(G, gens);
    REQUIRE(V.size() == 4);
    auto lc = linear_characters(G, V);
    CHECK(lc.count() == 4);
    CHECK(lc.D == 4);

    for (auto [r, q, n] : std::vector<std::array<int, 3>>{{6, 3, 3}, {4, 2, 2}, {6, 2, 3}, {4, 4, 2}}) {
        auto P = make_group(r, 1, q, n);
        CAPTURE(P.str());
        auto E = enumerate_group(P);
        auto F = E.as_finite_group();
        std::vector<uint32_t> all(E.size());
        for (uint32_t i = 0; i < E.size(); ++i)
            all[i] = i;
        auto L = linear_characters(F, all);
        CHECK(int64_t(L.count()) == 2 * r / q * nt::gcd(q, n));
        // Homomorphisms, pairwise distinct.
        std::mt19937_64 rng(7);
        std::set<std::vector<int32_t>> distinct(L.exps.begin(), L.exps.end());
        CHECK(distinct.size() == L.count());
        for (size_t c = 0; c < L.count(); ++c)
            for (int t = 0; t < 30; ++t) {
                uint32_t a = uint32_t(rng() % E.size()), b = uint32_t(rng() % E.size());
                CHECK(std::abs(L.value(c, a) * L.value(c, b) - L.value(c, F.mul(a, b))) < 1e-9);
            }
        // They are exactly the degree-1 rows of the table.
        auto T = character_table(P);
        size_t lin = std::count(T->degrees.begin(), T->degrees.end(), 1);
        CHECK(lin == L.count());
    }
}

TEST_CASE("induction and Frobenius reciprocity")
{
    auto P = make_group(4, 2, 1, 3);
    auto E = enumerate_group(P);
    auto G = E.as_finite_group();
    auto T = character_table(P);
    std::vector<uint32_t> Hgens{E.index(gen_simple(P, 1)), E.index(diag(P, {1, 3, 0}))};
    auto H = generated_subgroup(G, Hgens);
    REQUIRE(P.order % H.size() == 0);
    auto L = linear_characters(G, H);
    REQUIRE(L.count() > 1);
    for (size_t c = 0; c < L.count(); ++c) {
        std::vector<cplx> lam(H.size());
        for (size_t i = 0; i < H.size(); ++i)
            lam[i] = L.value(c, i);
        auto ind = induce(*T, G, H, lam);
        CHECK(std::abs(ind[0] - double(P.order / H.size())) < 1e-9);
        std::vector<Element> Hel;
        for (auto h : H)
            Hel.push_back(E.elems[h]);
        TableIrr irr(P, T);
        auto mult = induced_multiplicities(irr, Hel, lam);
        for (uint32_t i = 0; i < T->count(); ++i) {
            ClassFunction chi(T->classes.count());
            for (uint32_t k = 0; k < chi.size(); ++k)
                chi[k] = T->values(i, k);
            cplx lhs = inner_product(*T, ind, chi);
            auto res = restrict_to(*T, chi, H);
            cplx rhs = 0;
            for (size_t k = 0; k < H.size(); ++k)
                rhs += lam[k] * std::conj(res[k]);
            rhs /= double(H.size());
            CHECK(std::abs(lhs - rhs) < 1e-8);
            CHECK(std::abs(lhs - double(mult[i])) < 1e-8);
        }
    }
    // Inducing from the whole group is the identity.
    std::vector<uint32_t> all(E.size());
    for (uint32_t i = 0; i < E.size(); ++i)
        all[i] = i;
    ClassFunction chi(T->classes.count());
    for (uint32_t k = 0; k < chi.size(); ++k)
        chi[k] = T->values(T->count() - 1, k);
    auto ind = induce(*T, G, all, restrict_to(*T, chi, all));
    for (uint32_t k = 0; k < chi.size(); ++k)
        CHECK(std::abs(ind[k] - chi[k]) < 1e-9);
    CHECK_THROWS_AS(induce(*T, G, {0, E.index(diag(P, {1, 1, 2}))}, {1.0, 1.0}), NotASubgroup);
}

TEST_CASE("partition tuples index the ambient irreducibles")
{
    for (const auto& P : testutil::tuples(6, 1, 3, 1500)) {
        if (P.p != 1)
            continue;
        CAPTURE(P.str());
        auto tuples = irr_partition_index(P.r, P.q, P.n);
        CHECK(tuples.size() == conjugacy_classes(P).size());
        CHECK(ambient_class_counts(P).k == conjugacy_classes(P).size());
    }
    // r = 2, n = 2: five pairs (λ0,λ1); only (1,1) is fixed by the swap.
    auto t = irr_partition_index(2, 1, 2);
    CHECK(t.size() == 5);
    int split = 0;
    for (const auto& x : t)
        split += is_split(x, 2);
    CHECK(split == 1);
}

TEST_CASE("split representations: criterion, tuples and restriction agree")
{
    for (const auto& P : testutil::tuples(12, 1, 4, 3000)) {
        CAPTURE(P.str());
        bool crit = has_split_representations(P);
        CHECK(has_split_by_restriction(P) == crit);
        if (P.r <= 8)
            CHECK(has_split_by_tuples(P) == crit);
        auto c = ambient_class_counts(P);
        CHECK(c.k_H * P.p >= c.k);
    }
}

TEST_CASE("split check by literal restriction of computed characters")
{
    for (const auto& P : testutil::tuples(6, 2, 3, 600)) {
        if (P.p == 1)
            continue;
        CAPTURE(P.str());
        auto A = make_group(P.r, 1, P.q, P.n);
        if (A.order > 2000)
            continue;
        auto T = character_table(A);
        // <Res χ, Res χ>_H over the ambient classes inside H.
        bool split = false;
        for (uint32_t i = 0; i < T->count(); ++i) {
            double s = 0;
            for (uint32_t c = 0; c < T->classes.count(); ++c) {
                Element rep = element_at(A, T->classes.reps[c]);
                if (nt::mod(delta_lift(rep), P.p) != 0)
                    continue;
                s += double(T->classes.sizes[c]) * std::norm(T->values(i, c));
            }
            s /= double(P.order);
            CHECK(std::abs(s - std::round(s)) < 1e-8);
            split |= std::round(s) > 1;
        }
        CHECK(split == has_split_representations(P));
        CHECK(split == has_split_by_restriction(P));
        auto cs = conjugacy_classes(P);
        CHECK(character_table(P)->count() == cs.size());
    }
}
