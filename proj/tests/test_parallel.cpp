#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "prg/character.hpp"
#include "prg/finite_group.hpp"
#include "prg/kernels.hpp"
#include "prg/report.hpp"
#include "test_helpers.hpp"

using namespace prg;

namespace {

struct Threads {
    Threads()
    {
#ifdef _OPENMP
        omp_set_num_threads(4);
#endif
    }
} const threads;

} // namespace

TEST_CASE("twisted involution count: OpenMP equals serial")
{
    for (const auto& P : testutil::tuples(12, 1, 4, 3000))
        CHECK_MESSAGE(count_tau_involutions_omp(P) == count_tau_involutions_serial(P), P.str());
    auto big = make_group(6, 2, 3, 5);  // order 155520
    CHECK(count_tau_involutions_omp(big) == count_tau_involutions_serial(big));
}

TEST_CASE("power image count: OpenMP equals serial")
{
    for (const auto& P : testutil::tuples(8, 2, 4, 2000))
        for (int64_t e : {2, 3, 4, 6, 12})
            CHECK_MESSAGE(power_image_count_omp(P, e) == power_image_count_serial(P, e), P.str(), " e=", e);
}

TEST_CASE("class matrix combinations: OpenMP equals serial")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const char* s : {"3,1,1,3", "4,2,2,3", "2,1,1,4", "6,3,3,3", "4,4,4,4"}) {
        auto P = parse_group(s);
        auto E = enumerate_group(P);
        auto G = E.as_finite_group();
        auto cs = compute_classes(G);
        std::vector<std::vector<std::complex<double>>> w(3, std::vector<std::complex<double>>(cs.count()));
        for (auto& row : w)
            for (auto& x : row)
                x = {u(rng), u(rng)};
        auto a = class_matrix_combinations_serial(G, cs, w);
        auto b = class_matrix_combinations_omp(G, cs, w);
        REQUIRE(a.size() == b.size());
        for (size_t m = 0; m < a.size(); ++m)
            CHECK_MESSAGE((a[m] - b[m]).cwiseAbs().maxCoeff() == 0.0, s);
    }
}

TEST_CASE("character tables requested from many threads agree")
{
    const std::vector<std::string> groups = {"3,1,1,3", "4,2,1,3", "2,2,1,4", "6,3,3,3", "4,2,2,3"};
    std::vector<std::shared_ptr<const CharacterTable>> got(groups.size() * 4);
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < int(got.size()); ++i)
        got[size_t(i)] = character_table(parse_group(groups[size_t(i) % groups.size()]));
    for (size_t i = 0; i < got.size(); ++i) {
        auto ref = character_table(parse_group(groups[i % groups.size()]));
        CHECK(got[i]->degrees == ref->degrees);
        CHECK((got[i]->values - ref->values).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("scan rows do not depend on the batch size")
{
    ScanSpec spec;
    spec.order_max = 300;
    spec.r_max = 12;
    spec.verify = true;
    std::vector<ReportRow> a, b;
    spec.batch = 1;
    scan(spec, [&](const ReportRow& w) { a.push_back(w); return true; });
    spec.batch = 500;
    scan(spec, [&](const ReportRow& w) { b.push_back(w); return true; });
    CHECK(a.size() > 50);
    CHECK(a == b);
}
