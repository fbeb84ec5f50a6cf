#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "prg/config.hpp"
#include "prg/errors.hpp"
#include "prg/involution.hpp"
#include "prg/kernels.hpp"
#include "prg/split.hpp"
#include "test_helpers.hpp"

using namespace prg;

namespace {

bool is_scalar_multiple(const testutil::CMat& a, const testutil::CMat& b, double s)
{
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            if (std::abs(a[i][j] - s * b[i][j]) > 1e-9)
                return false;
    return true;
}

testutil::CMat transpose(const testutil::CMat& m)
{
    auto t = m;
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j)
            t[i][j] = m[j][i];
    return t;
}

} // namespace

TEST_CASE("twisted classes: orbit-stabilizer and membership")
{
    for (const auto& G : testutil::tuples(6, 1, 3, 600)) {
        CAPTURE(G.str());
        const auto td = twisted_classes(G);
        CHECK(td.involutions.size() == count_tau_involutions(G));
        size_t total = 0;
        for (const auto& c : td.classes) {
            total += c.members.size();
            CHECK(c.members.size() * c.centralizer.size() == G.order);
            CHECK(c.members.front() == c.rep);
        }
        CHECK(total == td.involutions.size());
        for (uint32_t w : td.involutions) {
            const Element& e = td.E->elems[w];
            CHECK(multiply(G, e, tau(G, e)) == identity(G));
        }
    }
}

TEST_CASE("twisted involutions of a rank-2 group")
{
    // (π;a,b) is a τ-involution iff π = 1, or π = σ and a - b is 0, or r/2 when q is even.
    for (const auto& G : testutil::tuples(12, 2, 2, 400)) {
        CAPTURE(G.str());
        const auto I = twisted_involutions(G);
        size_t expect = 0;
        for (const auto& e : enumerate(G)) {
            const int64_t d = nt::mod(e.col[0] - e.col[1], G.r);
            const bool in = e.perm[0] == 0 || d == 0 || (G.q % 2 == 0 && 2 * d == G.r);
            expect += in;
            CHECK(in == (std::find(I.begin(), I.end(), e) != I.end()));
        }
        CHECK(I.size() == expect);
    }
}

TEST_CASE("general twisting automorphisms")
{
    const auto G = make_group(4, 4, 4, 4);
    CHECK(is_involutive(G, nu_tau()));
    CHECK(is_involutive(G, nu_ad_t(G, 1)));
    CHECK(nu_tau().str(G) == "tau");
    const auto td = twisted_classes(G, nu_ad_t(G, 1));
    size_t total = 0;
    for (const auto& c : td.classes) {
        total += c.members.size();
        CHECK(c.members.size() * c.centralizer.size() == G.order);
    }
    CHECK(total == td.involutions.size());
    const auto spec = nu_spec(G, nu_ad_t(G, 1));
    for (uint32_t w : td.involutions) {
        const Element& e = td.E->elems[w];
        CHECK(apply(spec, e) == inverse(G, e));
    }
    const auto nus = nu_candidates(G);
    REQUIRE(nus.size() > 1);
    CHECK(nus.front().g.n == 0);
    CHECK(nus.front().with_tau);
    for (const auto& nu : nus)
        CHECK(is_involutive(G, nu));
    CHECK(nu_candidates(make_group(3, 1, 1, 3)).size() == 1);
    CHECK(nu_candidates(make_group(3, 1, 1, 3), true).size() > 1);
}

TEST_CASE("absolute involutions: parity")
{
    const auto G = make_group(4, 1, 2, 2);
    CHECK_THROWS_AS(classify_absolute(G, parse_element(G, "(2 1 | 0 1)")), NotAnAbsoluteInvolution);
    CHECK(classify_absolute(G, identity(G)) == Parity::Symmetric);
    CHECK(classify_absolute(G, parse_element(G, "(2 1 | 0 2)")) == Parity::Antisymmetric);
    for (const auto& P : testutil::tuples(8, 2, 4, 1500)) {
        CAPTURE(P.str());
        for_each_element(P, [&](uint64_t, const Element& w) {
            if (!is_tau_involution(P, w))
                return;
            const auto M = testutil::to_matrix(P, w);
            const bool sym = is_scalar_multiple(transpose(M), M, 1.0);
            const bool anti = is_scalar_multiple(transpose(M), M, -1.0);
            CHECK(sym != anti);
            CHECK((classify_absolute(P, w) == Parity::Antisymmetric) == anti);
        });
    }
}

TEST_CASE("antisymmetric involutions: criterion, scan and witness")
{
    int with = 0;
    for (const auto& P : testutil::tuples(12, 1, 6, 3000)) {
        CAPTURE(P.str());
        const bool crit = has_antisymmetric(P);
        CHECK(crit == has_antisymmetric_brute(P));
        const auto w = antisymmetric_witness(P);
        CHECK(w.has_value() == crit);
        if (w)
            CHECK(classify_absolute(P, *w) == Parity::Antisymmetric);
        with += crit;
    }
    CHECK(with > 10);
}

TEST_CASE("verify_model: explicit models")
{
    for (auto [r, n] : std::vector<std::pair<int, int>>{{1, 4}, {3, 2}, {3, 3}, {5, 2}, {3, 4}, {5, 3}}) {
        CAPTURE(r);
        CAPTURE(n);
        auto m = apr_model(r, n);
        CHECK(m.entries.size() == size_t(n / 2 + 1));
        const auto chk = verify_model(m);
        CHECK(chk.ok);
    }
    CHECK_THROWS_AS(apr_model(4, 3), PreconditionFailed);

    for (auto [r, q, c] : std::vector<std::array<int, 3>>{{6, 2, 1}, {10, 2, 1}, {6, 6, 1}, {18, 6, 1}, {4, 4, 2},
                                                            {12, 4, 2}, {8, 8, 2}, {20, 4, 2}, {4, 2, 3}, {8, 2, 3},
                                                            {8, 4, 3}, {12, 2, 3}, {12, 6, 3}, {16, 4, 3}}) {
        CAPTURE(r);
        CAPTURE(q);
        auto m = rank2_known_model(r, q, c);
        const auto chk = verify_model(m);
        CHECK(chk.ok);
    }
    CHECK_THROWS_AS(rank2_known_model(8, 2, 1), PreconditionFailed);
    CHECK_THROWS_AS(rank2_known_model(6, 3, 1), PreconditionFailed);
}

TEST_CASE("verify_model: failures and malformed input")
{
    // Principal characters on every twisted centralizer of G(8,1,2,2) give multiplicities ≠ 1.
    const auto G = make_group(8, 1, 2, 2);
    const auto td = twisted_classes(G);
    ModelDatum m{G, nu_tau(), {}};
    for (const auto& c : td.classes) {
        ModelEntry en{td.E->elems[c.rep], {}, {}, 1};
        for (uint32_t h : c.centralizer) {
            en.gens.push_back(td.E->elems[h]);
            en.num.push_back(0);
        }
        m.entries.push_back(std::move(en));
    }
    const auto chk = verify_model(m);
    CHECK_FALSE(chk.ok);
    CHECK(std::any_of(chk.multiplicities.begin(), chk.multiplicities.end(), [](int64_t x) { return x != 1; }));

    auto dup = m;
    dup.entries.push_back(dup.entries.front());
    CHECK_THROWS_AS(verify_model(dup), BadModelShape);
    auto missing = m;
    missing.entries.pop_back();
    CHECK_THROWS_AS(verify_model(missing), BadModelShape);
    auto wrong_sub = m;
    wrong_sub.entries[0].gens.resize(1);
    wrong_sub.entries[0].num.resize(1);
    if (td.classes[0].centralizer.size() > 2)
        CHECK_THROWS_AS(verify_model(wrong_sub), BadModelShape);
    auto not_char = rank2_known_model(12, 6, 3);
    not_char.entries[0].num[0] = 1;  // order-2 generator sent to a primitive 2r-th root
    CHECK_THROWS_AS(verify_model(not_char), BadModelShape);
}

TEST_CASE("gim_search agrees with the rank-2 classification")
{
    int yes = 0, no = 0;
    for (const auto& G : testutil::tuples(24, 1, 2, 600)) {
        CAPTURE(G.str());
        const auto cl = classify(G);
        REQUIRE(cl.status != GimStatus::UnknownOpen);
        const auto s = gim_search(G);
        CHECK(s.status == cl.status);
        if (s.witness)
            CHECK(verify_model(*s.witness).ok);
        (s.status == GimStatus::Yes ? yes : no)++;
    }
    CHECK(yes > 20);
    CHECK(no > 5);
    CHECK(gim_search(make_group(4, 1, 2, 2)).status == GimStatus::Yes);
    CHECK(gim_search(make_group(8, 1, 2, 2)).status == GimStatus::No);
}

TEST_CASE("gim_search in higher rank")
{
    for (auto t : std::vector<std::array<int, 4>>{{3, 3, 3, 3}, {6, 3, 3, 3}, {6, 6, 3, 3}, {6, 3, 6, 3},
                                                    {4, 4, 4, 4}, {2, 1, 2, 4}, {3, 1, 1, 3}, {2, 2, 1, 3}}) {
        const auto G = make_group(t[0], t[1], t[2], t[3]);
        CAPTURE(G.str());
        const auto s = gim_search(G);
        CHECK(s.status == GimStatus::Yes);
        REQUIRE(s.witness);
        CHECK(verify_model(*s.witness).ok);
    }
    for (auto t : std::vector<std::array<int, 4>>{{2, 2, 1, 4}, {4, 2, 1, 4}, {6, 3, 1, 3}, {4, 4, 1, 4}}) {
        const auto G = make_group(t[0], t[1], t[2], t[3]);
        CAPTURE(G.str());
        CHECK(gim_search(G).status == GimStatus::No);
    }
    CHECK_THROWS_AS(gim_search(make_group(12, 4, 4, 4)), CapExceeded);
}

TEST_CASE("classifier branches and annotations")
{
    auto a = classify(make_group(6, 3, 3, 3));
    CHECK(a.status == GimStatus::Yes);
    CHECK(a.branch == "gcd3-listed");
    CHECK(classify(make_group(9, 3, 3, 3)).status == GimStatus::No);
    CHECK(classify(make_group(12, 4, 4, 4)).status == GimStatus::UnknownOpen);
    CHECK(classify(make_group(4, 2, 1, 4)).branch == "gcd2-q-odd");
    CHECK(classify(make_group(2, 1, 2, 4)).status == GimStatus::UnknownOpen);
    CHECK(classify(make_group(10, 5, 1, 5)).status == GimStatus::No);
    auto b = classify(make_group(2, 2, 2, 6));
    CHECK(std::find(b.notes.begin(), b.notes.end(),
                    "no split representations and no antisymmetric absolute involutions") != b.notes.end());
    auto c = classify(make_group(8, 2, 4, 4));
    CHECK(std::any_of(c.notes.begin(), c.notes.end(), [](const std::string& s) { return s.find("exception") != std::string::npos; }));

    // The parameter condition matches its two ingredients.
    for (const auto& P : testutil::tuples(16, 1, 6, 1u << 30))
        CHECK(no_split_no_antisymmetric_condition(P) == (!has_split_representations(P) && !has_antisymmetric(P)));
}

TEST_CASE("classifier agrees with search where it decides")
{
    int compared = 0;
    for (const auto& G : testutil::tuples(8, 1, 4, 400)) {
        const auto cl = classify(G);
        if (cl.status == GimStatus::UnknownOpen)
            continue;
        CAPTURE(G.str());
        CHECK(gim_search(G).status == cl.status);
        ++compared;
    }
    CHECK(compared > 20);
}

TEST_CASE("descent of models to scalar quotients")
{
    auto a = quotient_descent_check(3, 1, 3, 3);
    CHECK(a.cond_i == CondState::NotApplicable);
    CHECK(a.cond_ii);
    CHECK(a.cond_ii_coset);
    auto b = quotient_descent_check(6, 1, 6, 3);
    CHECK(b.cond_i == CondState::NotApplicable);
    CHECK(b.cond_ii);
    CHECK(b.checked > 0);
    auto c = quotient_descent_check(4, 1, 2, 2);
    CHECK(c.cond_i == CondState::Unknown);
    CHECK_FALSE(c.cond_ii);
    CHECK_FALSE(c.cond_ii_coset);
    auto d = quotient_descent_check(5, 5, 3, 1);
    CHECK(d.cond_i == CondState::Holds);
    CHECK(d.cond_ii);
    CHECK_THROWS_AS(quotient_descent_check(6, 1, 3, 4), InvalidParameters);
}
