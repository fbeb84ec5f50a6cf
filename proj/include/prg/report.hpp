#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prg/group.hpp"

namespace prg {

struct ScanSpec {
    int r_min = 1, r_max = 16;
    int n_min = 1, n_max = 6;
    uint64_t order_min = 1, order_max = 1000;
    bool verify = false;  // confirm by gim_search
    bool all_nu = false;  // exhaustive ν candidates when verifying
    std::optional<std::array<int, 4>> after;  // resume: skip rows up to and including this tuple
    int batch = 64;       // rows computed concurrently before emission
};

struct ReportRow {
    int r = 1, p = 1, q = 1, n = 1;
    uint64_t order = 1;
    int64_t gcd = 1;  // gcd(p,n)
    bool self_dual = false;
    bool has_split = false;
    bool has_antisym = false;
    uint64_t involutions = 0;  // |I_{G,τ}|
    uint64_t degree_sum = 0;   // Σψ(1)
    std::string status;        // classifier: YES, NO, UNKNOWN-open
    std::string branch;
    std::string prediction;    // from the conjectural conditions
    bool mismatch = false;     // best known answer differs from the prediction
    std::string brute;         // search result when verified, else empty
    bool agree = true;         // classifier and search do not contradict each other
    std::string error;         // "Kind: message" when the row failed

    bool operator==(const ReportRow&) const = default;
};

// Valid tuples in range, sorted by (order, r, p, q, n).
std::vector<GroupParams> scan_tuples(const ScanSpec& spec);

// Never throws on computation errors; they land in row.error.
ReportRow compute_row(const GroupParams& G, const ScanSpec& spec);

// Rows in canonical order. emit returns false to stop early.
void scan(const ScanSpec& spec, const std::function<bool(const ReportRow&)>& emit);

std::string to_json_line(const ReportRow& row);
ReportRow row_from_json(const std::string& line);  // ParseError on malformed input

std::string csv_header();
std::string to_csv(const ReportRow& row);
ReportRow row_from_csv(const std::string& line);

std::string table_header();
std::string to_table(const ReportRow& row);

} // namespace prg
