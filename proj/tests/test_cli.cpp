#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <tuple>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <json.hpp>

#include "prg/errors.hpp"
#include "prg/group.hpp"
#include "prg/involution.hpp"
#include "prg/report.hpp"

using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

std::string cli()
{
    const char* p = std::getenv("PRG_CLI");
    REQUIRE_MESSAGE(p != nullptr, "PRG_CLI must point at the prg binary");
    return p;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp_path(const std::string& tag)
{
    return "/tmp/prg_cli_test_" + std::to_string(getpid()) + "_" + tag;
}

Run run(const std::string& args)
{
    const std::string err = temp_path("stderr");
    const std::string cmd = cli() + " " + args + " 2>" + err;
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, f)) > 0)
        r.out.append(buf, got);
    const int status = pclose(f);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    std::remove(err.c_str());
    return r;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string l;
    while (std::getline(in, l))
        out.push_back(l);
    return out;
}

std::vector<prg::ReportRow> jsonl_rows(const std::string& s)
{
    std::vector<prg::ReportRow> rows;
    for (const auto& l : lines(s))
        rows.push_back(prg::row_from_json(l));
    return rows;
}

} // namespace

TEST_CASE("conj reports the splitting data of the worked example")
{
    auto r = run("conj --group 4,4,1,8 --g \"(2 4 5 7 8 3 1 6 | 0 1 2 2 0 2 1 0)\" --data");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["d_p"] == 4);
    CHECK(j["s_p"] == 2);
    CHECK(j["cycles"].size() == 2);

    auto c = run("conj --group 4,2,1,3 --g \"(2 1 3 | 1 3 0)\" --other \"(2 1 3 | 0 0 0)\"");
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["conjugate_in_Grpn"] == true);
}

TEST_CASE("iso on the rank-2 parity pair")
{
    auto r = run("iso --left 4,1,2,2 --right 4,2,1,2");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["isomorphic"] == false);
    CHECK(j["branch"] == "rank2-parity");
    CHECK(j["witness"].is_null());

    auto y = run("iso --left 12,2,6,4 --right 12,6,2,4 --certify");
    REQUIRE(y.code == 0);
    auto k = json::parse(y.out);
    CHECK(k["isomorphic"] == true);
    CHECK(k["certified"] == true);
    CHECK(k["witness"]["generator_images"].size() > 0);
}

TEST_CASE("gim classify, search and verify")
{
    auto c = run("gim classify 6,3,6,3");
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["status"] == "YES");

    auto s = run("gim search 4,1,2,2");
    REQUIRE(s.code == 0);
    auto j = json::parse(s.out);
    REQUIRE(j["status"] == "YES");
    const std::string model = temp_path("model.json");
    std::ofstream(model) << j["witness"].dump();
    auto v = run("gim verify " + model);
    REQUIRE(v.code == 0);
    CHECK(json::parse(v.out)["ok"] == true);

    // Bare entry array with the group on the command line.
    std::ofstream(model) << j["witness"]["entries"].dump();
    v = run("gim verify " + model + " --group 4,1,2,2 --nu tau");
    REQUIRE(v.code == 0);
    CHECK(json::parse(v.out)["ok"] == true);

    // Dropping an entry leaves a twisted class uncovered.
    auto broken = j["witness"];
    broken["entries"].erase(broken["entries"].size() - 1);
    std::ofstream(model) << broken.dump();
    v = run("gim verify " + model);
    CHECK(v.code == 1);
    CHECK(json::parse(v.err)["error"] == "BadModelShape");
    std::remove(model.c_str());

    auto n = run("gim search 8,1,2,2 --nu all");
    REQUIRE(n.code == 0);
    CHECK(json::parse(n.out)["status"] == "NO");
}

TEST_CASE("invol, chartable and aut produce JSON")
{
    auto i = run("invol --group 4,1,2,2 --classes");
    REQUIRE(i.code == 0);
    auto j = json::parse(i.out);
    CHECK(j["count"] == 12);
    CHECK(j["degree_sum"] == 12);
    uint64_t total = 0;
    for (const auto& c : j["classes"])
        total += c["size"].get<uint64_t>();
    CHECK(total == 12);

    auto t = run("chartable --group 3,1,1,2 --values");
    REQUIRE(t.code == 0);
    auto k = json::parse(t.out);
    CHECK(k["degrees"].size() == k["classes"].size());
    CHECK(k["values"].size() == k["degrees"].size());
    CHECK(k["health"]["degrees_square_sum"] == true);
    auto csv = run("chartable --group 3,1,1,2 --format csv");
    REQUIRE(csv.code == 0);
    CHECK(lines(csv.out).size() == k["degrees"].size() + 1);

    auto a = run("aut --group 4,4,4,4 --ad \"(1 2 3 4 | 2 0 0 0)\"");
    REQUIRE(a.code == 0);
    auto c = json::parse(a.out)["check"];
    CHECK(c["bijective"] == true);
    CHECK(c["class_preserving"] == true);
    CHECK(c["inner"] == false);
}

TEST_CASE("exit codes")
{
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("iso --left 4,1,2,2").code == 2);
    CHECK(run("gim classify 4,3,1,2").code == 2);
    CHECK(run("conj --group 4,1,1,2 --g \"(1 1 | 0 0)\"").code == 2);
    CHECK(run("scan --format xml").code == 2);
    CHECK(run("--help").code == 0);

    auto cap = run("gim search 12,4,4,4");
    CHECK(cap.code == 1);
    auto e = json::parse(cap.err);
    CHECK(e["error"] == "CapExceeded");
    CHECK(e["message"].get<std::string>().size() > 0);

    auto mism = run("iso --left 4,1,2,2 --right 4,1,1,2");
    CHECK(mism.code == 1);
    CHECK(json::parse(mism.err)["error"] == "ParamMismatch");
}

TEST_CASE("scan contents")
{
    auto r = run("scan --max-order 100 --format jsonl");
    REQUIRE(r.code == 0);
    auto rows = jsonl_rows(r.out);
    bool found = false;
    for (const auto& w : rows)
        if (w.r == 2 && w.p == 1 && w.q == 1 && w.n == 2) {
            found = true;
            CHECK(w.order == 8);
            CHECK(w.status == "YES");
        }
    CHECK(found);
    for (size_t i = 1; i < rows.size(); ++i) {
        auto key = [](const prg::ReportRow& w) { return std::make_tuple(w.order, w.r, w.p, w.q, w.n); };
        CHECK(key(rows[i - 1]) < key(rows[i]));
    }

    // Up to order 200 the search confirms every decided row, and exactly the known exceptions
    // contradict the conjectural prediction.
    auto v = run("scan --max-order 200 --verify --format jsonl");
    REQUIRE(v.code == 0);
    int flagged = 0;
    for (const auto& w : jsonl_rows(v.out)) {
        CHECK(w.error.empty());
        CHECK(w.agree);
        const bool exc = prg::conjecture_exception(prg::make_group(w.r, w.p, w.q, w.n));
        CHECK_MESSAGE(w.mismatch == exc, w.r, ",", w.p, ",", w.q, ",", w.n);
        flagged += w.mismatch;
        CHECK(w.involutions <= w.degree_sum);
    }
    CHECK(flagged == 6);  // (4,1,2,2) (3,3,3,3) (6,3,6,3) (6,6,3,3) (6,3,3,3) (2,1,2,4)

    auto e = run("scan --max-order 0 --format jsonl");
    CHECK(e.code == 0);
    CHECK(e.out.empty());
}

TEST_CASE("scan determinism, resume and round trip")
{
    const std::string args = "scan --max-order 400 --r-max 12 --format csv";
    auto a = run(args), b = run(args + " --batch 1"), c = run(args + " --batch 1000");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);

    auto all = lines(a.out);
    REQUIRE(all.size() > 20);
    CHECK(all[0] == prg::csv_header());
    for (size_t i = 1; i < all.size(); ++i)
        CHECK(prg::to_csv(prg::row_from_csv(all[i])) == all[i]);

    // Resume after the tenth row reproduces the tail.
    auto tenth = prg::row_from_csv(all[10]);
    auto tail = run(args + " --after " + std::to_string(tenth.r) + "," + std::to_string(tenth.p) + "," +
                    std::to_string(tenth.q) + "," + std::to_string(tenth.n));
    REQUIRE(tail.code == 0);
    auto rest = lines(tail.out);
    REQUIRE(rest.size() == all.size() - 10);
    for (size_t i = 1; i < rest.size(); ++i)
        CHECK(rest[i] == all[i + 10]);

    auto j = run("scan --max-order 400 --r-max 12 --format jsonl");
    for (const auto& l : lines(j.out)) {
        auto w = prg::row_from_json(l);
        CHECK(prg::to_json_line(w) == l);
        CHECK(prg::row_from_csv(prg::to_csv(w)) == w);
    }
}

TEST_CASE("report rows survive awkward strings")
{
    prg::ReportRow w;
    w.r = 4, w.p = 1, w.q = 2, w.n = 2, w.order = 16;
    w.branch = "rank2-(4,1,2)";
    w.error = "Kind: a \"quoted\", comma";
    w.brute = "NO";
    w.agree = false;
    CHECK(prg::row_from_csv(prg::to_csv(w)) == w);
    CHECK(prg::row_from_json(prg::to_json_line(w)) == w);
    CHECK_THROWS_AS(prg::row_from_csv("1,2,3"), prg::ParseError);
    CHECK_THROWS_AS(prg::row_from_json("{\"r\":1}"), prg::ParseError);
}

TEST_CASE("strict mode stops on a failed row")
{
    auto lax = run("scan --max-order 60 --verify --gim-cap 10 --format jsonl");
    CHECK(lax.code == 0);
    bool any_error = false;
    for (const auto& w : jsonl_rows(lax.out))
        any_error |= !w.error.empty();
    CHECK(any_error);

    auto strict = run("--strict scan --max-order 60 --verify --gim-cap 10 --format jsonl");
    CHECK(strict.code == 1);
    CHECK(json::parse(strict.err)["error"] == "RowError");
    CHECK(lines(strict.out).size() < lines(lax.out).size());
}
