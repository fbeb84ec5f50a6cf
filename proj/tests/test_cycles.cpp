#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "prg/cycles.hpp"
#include "prg/finite_group.hpp"
#include "test_helpers.hpp"

using namespace prg;

namespace {

// Class id per element by the exhaustive orbit {x g x^-1 : x in G}.
std::vector<int> brute_classes(const EnumeratedGroup& G)
{
    std::vector<int> cls(G.size(), -1);
    int next = 0;
    for (uint32_t g = 0; g < G.size(); ++g) {
        if (cls[g] >= 0)
            continue;
        for (const auto& x : G.elems)
            cls[G.index(conjugate(G.P, x, G.elems[g]))] = next;
        ++next;
    }
    return cls;
}

using Key = std::pair<std::vector<std::pair<int, int64_t>>, int64_t>;

Key criterion_key(const GroupParams& P, const Element& g)
{
    return {cycle_type(P, g), decompose(P, g).s_eff};
}

} // namespace

TEST_CASE("worked example: splitting index 2 in Z_4")
{
    auto P = make_group(4, 4, 1, 8);
    auto g = parse_element(P, "(2 4 5 7 8 3 1 6 | 0 1 2 2 0 2 1 0)");
    auto d = decompose(P, g);
    REQUIRE(d.cycles.size() == 2);
    CHECK(d.cycles[0].length == 4);
    CHECK(d.cycles[1].length == 4);
    CHECK(d.cycles[0].color == 0);
    CHECK(d.cycles[1].color == 0);
    CHECK(d.cycles[0].cycle == std::vector<int>{0, 1, 3, 6});
    CHECK(d.d_p == 4);
    CHECK(d.s_p == 2);
}

TEST_CASE("degenerate decompositions")
{
    auto P = make_group(4, 2, 1, 3);
    auto d = decompose(P, identity(P));
    CHECK(d.cycles.empty());
    CHECK(d.d_p == 2);
    CHECK(d.s_p == 0);

    auto Q = make_group(6, 3, 1, 6);
    auto e = decompose(Q, diag(Q, {0, 3, 0, 0, 0, 0}));
    REQUIRE(e.cycles.size() == 1);
    CHECK(e.cycles[0].length == 1);
    CHECK(e.cycles[0].color == 3);
    CHECK(e.d_p == 1);
    CHECK(e.s_p == 0);
}

TEST_CASE("conjugate_in_Grn")
{
    auto P = make_group(4, 1, 1, 2);
    auto a = parse_element(P, "(2 1 | 1 0)"), b = parse_element(P, "(2 1 | 0 1)");
    CHECK(conjugate_in_Grn(P, a, a));
    CHECK(conjugate_in_Grn(P, a, b));
    bool found = false;
    for (const auto& x : enumerate(P))
        found = found || conjugate(P, x, a) == b;
    CHECK(found);
    auto Q = make_group(4, 1, 1, 2);
    CHECK_FALSE(conjugate_in_Grn(Q, diag(Q, {1, -1}), diag(Q, {2, -2})));
}

TEST_CASE("decomposition round-trip, rotation invariance, d_p invariance, shift law")
{
    std::mt19937_64 rng(17);
    for (auto P : {make_group(4, 2, 1, 3), make_group(6, 3, 1, 3), make_group(4, 4, 1, 4), make_group(6, 2, 1, 4)}) {
        auto amb = make_group(P.r, 1, 1, P.n);
        for (int it = 0; it < 400; ++it) {
            Element g = testutil::random_element(P, rng);
            auto d = decompose(P, g);
            CHECK(reassemble(P, d) == reparam(amb, g));
            for (const auto& c : d.cycles) {
                if (c.length == 1)
                    continue;
                for (int rot = 1; rot < c.length; ++rot) {
                    int64_t s = 0;
                    for (int j = 0; j < c.length; ++j)
                        s += int64_t(j + 1) * c.colors[(j + rot) % c.length];
                    CHECK(s % c.s_modulus == c.s);
                }
            }
            Element h = testutil::random_element(amb, rng);
            Element conj = multiply(amb, multiply(amb, inverse(amb, h), reparam(amb, g)), h);
            auto dc = decompose(P, conj);
            CHECK(dc.d_p == d.d_p);
            CHECK(dc.s_eff == (d.s_eff + delta_lift(h)) % d.d_eff);
            if (d.d_eff == d.d_p)
                CHECK(dc.s_p == (d.s_p + delta_lift(h)) % d.d_p);
        }
    }
}

TEST_CASE("Prop criterion agrees with exhaustive conjugacy on all pairs")
{
    for (auto P : {make_group(4, 2, 1, 3), make_group(6, 3, 1, 3), make_group(4, 4, 1, 4)}) {
        auto G = enumerate_group(P);
        auto cls = brute_classes(G);
        std::map<Key, std::set<int>> by_key;
        std::map<int, std::set<Key>> by_class;
        for (uint32_t i = 0; i < G.size(); ++i) {
            auto k = criterion_key(P, G.elems[i]);
            by_key[k].insert(cls[i]);
            by_class[cls[i]].insert(k);
        }
        for (auto& [k, s] : by_key)
            CHECK(s.size() == 1);
        for (auto& [c, s] : by_class)
            CHECK(s.size() == 1);
        // A sample of direct calls as well.
        for (uint32_t i = 0; i < G.size(); i += 37)
            for (uint32_t j = 0; j < G.size(); j += 41)
                CHECK(conjugate_in_Grpn(P, G.elems[i], G.elems[j]) == (cls[i] == cls[j]));
    }
}

TEST_CASE("criterion on class representatives for the rank ≤ 4 test matrix")
{
    for (const auto& P : testutil::tuples(8, 2, 4, 2000)) {
        if (P.q != 1)
            continue;
        auto G = enumerate_group(P);
        auto cs = compute_classes(G.as_finite_group());
        std::set<Key> keys;
        for (uint32_t c = 0; c < cs.count(); ++c)
            keys.insert(criterion_key(P, G.elems[cs.reps[c]]));
        CHECK_MESSAGE(keys.size() == cs.count(), P.str());
        for (uint32_t i = 0; i < G.size(); i += 3)
            CHECK(criterion_key(P, G.elems[i]) == criterion_key(P, G.elems[cs.reps[cs.cls[i]]]));
    }
}

TEST_CASE("conjugate_in_quotient")
{
    auto P = make_group(4, 1, 2, 2);
    CHECK(conjugate_in_quotient(P, identity(P), identity(P)));
    CHECK(conjugate_in_quotient(P, diag(P, {0, 1}), diag(P, {2, 3})));
    CHECK(diag(P, {0, 1}) == diag(P, {2, 3}));
    for (auto Q : {make_group(6, 3, 3, 3), make_group(4, 2, 2, 3), make_group(6, 1, 3, 2)}) {
        auto G = enumerate_group(Q);
        auto cls = brute_classes(G);
        for (uint32_t i = 0; i < G.size(); ++i)
            for (uint32_t j = 0; j < G.size(); ++j)
                REQUIRE(conjugate_in_quotient(Q, G.elems[i], G.elems[j]) == (cls[i] == cls[j]));
    }
}

TEST_CASE("conjugacy_classes")
{
    auto cl = conjugacy_classes(make_group(1, 1, 1, 4));
    std::vector<uint64_t> sizes;
    for (auto& c : cl)
        sizes.push_back(c.size);
    CHECK(sizes == std::vector<uint64_t>{1, 6, 8, 3, 6});
    CHECK(conjugacy_classes(make_group(2, 1, 1, 2)).size() == 5);
    for (const auto& P : testutil::tuples(6, 1, 3, 1000)) {
        auto cls = conjugacy_classes(P);
        uint64_t total = 0;
        for (auto& c : cls)
            total += c.size;
        CHECK(total == P.order);
        CHECK(cls[0].rep == identity(P));
        for (size_t i = 1; i < cls.size(); ++i)
            CHECK(index_of(P, cls[i - 1].rep) < index_of(P, cls[i].rep));
    }
}

TEST_CASE("color-0 fixed points make the splitting index irrelevant")
{
    auto P = make_group(4, 2, 1, 3);
    auto a = parse_element(P, "(2 1 3 | 1 3 0)"), b = parse_element(P, "(2 1 3 | 0 0 0)");
    auto da = decompose(P, a), db = decompose(P, b);
    CHECK(da.d_p == 2);
    CHECK(da.s_p != db.s_p);
    CHECK(da.d_eff == 1);
    CHECK(conjugate_in_Grpn(P, a, b));
    auto h = diag(P, {1, 0, 1});
    CHECK(conjugate(P, inverse(P, h), b) == a);
}
