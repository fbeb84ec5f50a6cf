#include "prg/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "prg/character.hpp"
#include "prg/errors.hpp"
#include "prg/involution.hpp"
#include "prg/isomorphism.hpp"
#include "prg/kernels.hpp"
#include "prg/numtheory.hpp"
#include "prg/split.hpp"

namespace prg {

namespace {

using json = nlohmann::ordered_json;

auto sort_key(const GroupParams& G) { return std::make_tuple(G.order, G.r, G.p, G.q, G.n); }

json row_json(const ReportRow& w)
{
    json j;
    j["r"] = w.r;
    j["p"] = w.p;
    j["q"] = w.q;
    j["n"] = w.n;
    j["order"] = w.order;
    j["gcd"] = w.gcd;
    j["self_dual"] = w.self_dual;
    j["has_split"] = w.has_split;
    j["has_antisym"] = w.has_antisym;
    j["involutions"] = w.involutions;
    j["degree_sum"] = w.degree_sum;
    j["status"] = w.status;
    j["branch"] = w.branch;
    j["prediction"] = w.prediction;
    j["conjecture_mismatch"] = w.mismatch;
    j["brute"] = w.brute;
    j["agree"] = w.agree;
    j["error"] = w.error;
    return j;
}

constexpr int kFields = 18;

std::vector<std::string> row_fields(const ReportRow& w)
{
    auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    return {std::to_string(w.r),           std::to_string(w.p),          std::to_string(w.q),
            std::to_string(w.n),           std::to_string(w.order),      std::to_string(w.gcd),
            b(w.self_dual),                b(w.has_split),               b(w.has_antisym),
            std::to_string(w.involutions), std::to_string(w.degree_sum), w.status,
            w.branch,                      w.prediction,                 b(w.mismatch),
            w.brute,                       b(w.agree),                   w.error};
}

std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line)
{
    std::vector<std::string> out(1);
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"')
                out.back() += '"', ++i;
            else if (c == '"')
                quoted = false;
            else
                out.back() += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    if (quoted)
        throw ParseError("unterminated quote in CSV row");
    return out;
}

bool parse_bool(const std::string& s)
{
    if (s == "true")
        return true;
    if (s == "false")
        return false;
    throw ParseError("expected true or false, got '" + s + "'");
}

template <class T>
T parse_num(const std::string& s)
{
    std::istringstream in(s);
    T v{};
    if (!(in >> v) || !in.eof())
        throw ParseError("expected a number, got '" + s + "'");
    return v;
}

} // namespace

std::vector<GroupParams> scan_tuples(const ScanSpec& spec)
{
    std::vector<GroupParams> out;
    for (int n = std::max(1, spec.n_min); n <= std::min(spec.n_max, kMaxRank); ++n)
        for (int r = std::max(1, spec.r_min); r <= spec.r_max; ++r)
            for (int64_t p : nt::divisors(r))
                for (int64_t q : nt::divisors(r)) {
                    if (!is_valid_tuple(r, int(p), int(q), n))
                        continue;
                    long double est = std::pow((long double)r, n) * (long double)nt::factorial(n) / ((long double)p * q);
                    if (est > (long double)spec.order_max * 1.01L)
                        continue;
                    auto G = make_group(r, int(p), int(q), n);
                    if (G.order < spec.order_min || G.order > spec.order_max)
                        continue;
                    if (spec.after) {
                        const auto& a = *spec.after;
                        if (!is_valid_tuple(a[0], a[1], a[2], a[3]))
                            throw InvalidParameters("checkpoint tuple is not valid");
                        if (sort_key(G) <= sort_key(make_group(a[0], a[1], a[2], a[3])))
                            continue;
                    }
                    out.push_back(G);
                }
    std::sort(out.begin(), out.end(), [](const GroupParams& a, const GroupParams& b) { return sort_key(a) < sort_key(b); });
    return out;
}

ReportRow compute_row(const GroupParams& G, const ScanSpec& spec)
{
    ReportRow w;
    w.r = G.r, w.p = G.p, w.q = G.q, w.n = G.n;
    w.order = G.order;
    w.gcd = nt::gcd(G.p, G.n);
    try {
        w.self_dual = is_self_dual(G);
        w.has_split = has_split_representations(G);
        w.has_antisym = has_antisymmetric(G);
        w.involutions = count_tau_involutions(G);
        w.degree_sum = clifford_count(G).degree_sum;
        const GimResult c = classify(G);
        w.status = to_string(c.status);
        w.branch = c.branch;
        w.prediction = conjecture_predicts_gim(G) ? "YES" : "NO";
        std::string known = c.status == GimStatus::UnknownOpen ? "" : w.status;
        if (spec.verify) {
            w.brute = to_string(gim_search(G, spec.all_nu).status);
            if (!known.empty() && known != w.brute)
                w.agree = false;
            known = w.brute;
        }
        w.mismatch = !known.empty() && known != w.prediction;
    } catch (const Error& e) {
        w.error = e.kind() + ": " + e.what();
    } catch (const std::exception& e) {
        w.error = std::string("Error: ") + e.what();
    }
    return w;
}

void scan(const ScanSpec& spec, const std::function<bool(const ReportRow&)>& emit)
{
    const auto tuples = scan_tuples(spec);
    const size_t batch = size_t(std::max(1, spec.batch));
    for (size_t lo = 0; lo < tuples.size(); lo += batch) {
        const size_t hi = std::min(tuples.size(), lo + batch);
        std::vector<ReportRow> rows(hi - lo);
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = long(lo); i < long(hi); ++i)
            rows[size_t(i) - lo] = compute_row(tuples[size_t(i)], spec);
        for (const auto& w : rows)
            if (!emit(w))
                return;
    }
}

std::string to_json_line(const ReportRow& row) { return row_json(row).dump(); }

ReportRow row_from_json(const std::string& line)
{
    json j;
    try {
        j = json::parse(line);
        ReportRow w;
        w.r = j.at("r").get<int>();
        w.p = j.at("p").get<int>();
        w.q = j.at("q").get<int>();
        w.n = j.at("n").get<int>();
        w.order = j.at("order").get<uint64_t>();
        w.gcd = j.at("gcd").get<int64_t>();
        w.self_dual = j.at("self_dual").get<bool>();
        w.has_split = j.at("has_split").get<bool>();
        w.has_antisym = j.at("has_antisym").get<bool>();
        w.involutions = j.at("involutions").get<uint64_t>();
        w.degree_sum = j.at("degree_sum").get<uint64_t>();
        w.status = j.at("status").get<std::string>();
        w.branch = j.at("branch").get<std::string>();
        w.prediction = j.at("prediction").get<std::string>();
        w.mismatch = j.at("conjecture_mismatch").get<bool>();
        w.brute = j.at("brute").get<std::string>();
        w.agree = j.at("agree").get<bool>();
        w.error = j.at("error").get<std::string>();
        return w;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad report row: ") + e.what());
    }
}

std::string csv_header()
{
    return "r,p,q,n,order,gcd,self_dual,has_split,has_antisym,involutions,degree_sum,status,branch,prediction,"
           "conjecture_mismatch,brute,agree,error";
}

std::string to_csv(const ReportRow& row)
{
    std::string out;
    for (const auto& f : row_fields(row))
        out += csv_quote(f) + ",";
    out.pop_back();
    return out;
}

ReportRow row_from_csv(const std::string& line)
{
    auto f = csv_split(line);
    if (f.size() != kFields)
        throw ParseError("expected " + std::to_string(kFields) + " CSV fields, got " + std::to_string(f.size()));
    ReportRow w;
    w.r = parse_num<int>(f[0]);
    w.p = parse_num<int>(f[1]);
    w.q = parse_num<int>(f[2]);
    w.n = parse_num<int>(f[3]);
    w.order = parse_num<uint64_t>(f[4]);
    w.gcd = parse_num<int64_t>(f[5]);
    w.self_dual = parse_bool(f[6]);
    w.has_split = parse_bool(f[7]);
    w.has_antisym = parse_bool(f[8]);
    w.involutions = parse_num<uint64_t>(f[9]);
    w.degree_sum = parse_num<uint64_t>(f[10]);
    w.status = f[11];
    w.branch = f[12];
    w.prediction = f[13];
    w.mismatch = parse_bool(f[14]);
    w.brute = f[15];
    w.agree = parse_bool(f[16]);
    w.error = f[17];
    return w;
}

std::string table_header()
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-14s %8s %3s %4s %5s %6s %8s %8s %-12s %-20s %-5s %-12s %s", "group", "order",
                  "gcd", "dual", "split", "antis", "|I|", "sum_deg", "classify", "branch", "conj", "search", "notes");
    return buf;
}

std::string to_table(const ReportRow& w)
{
    auto yn = [](bool v) { return v ? "y" : "n"; };
    std::string notes;
    if (w.mismatch)
        notes += "conjecture-mismatch ";
    if (!w.agree)
        notes += "DISAGREE ";
    if (!w.error.empty())
        notes += w.error;
    while (!notes.empty() && notes.back() == ' ')
        notes.pop_back();
    const std::string group = "(" + std::to_string(w.r) + "," + std::to_string(w.p) + "," + std::to_string(w.q) + "," +
                              std::to_string(w.n) + ")";
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-14s %8llu %3lld %4s %5s %6s %8llu %8llu %-12s %-20s %-5s %-12s %s", group.c_str(),
                  (unsigned long long)w.order, (long long)w.gcd, yn(w.self_dual), yn(w.has_split), yn(w.has_antisym),
                  (unsigned long long)w.involutions, (unsigned long long)w.degree_sum, w.status.c_str(),
                  w.branch.c_str(), w.prediction.c_str(), w.brute.empty() ? "-" : w.brute.c_str(), notes.c_str());
    std::string s = buf;
    while (!s.empty() && s.back() == ' ')
        s.pop_back();
    return s;
}

} // namespace prg
