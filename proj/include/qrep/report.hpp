#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrep/qform.hpp"

namespace qrep {

using Json = nlohmann::ordered_json;

struct ReportOptions {
    bool bruteforce = false; // run the graph oracle and fill the match block
    std::uint64_t max_vertices = kDefaultVertexCap;
    unsigned threads = 1;
    bool timing = true; // omit the timing block when false (golden tests)
};

struct InvariantReport {
    Json doc;             // schema 1; infinite values serialize as "inf"
    bool all_match = true; // meaningful when the bruteforce block is present
};

// Parses the field spec and form DSL, runs the predictors and optionally the
// brute-force oracle, and assembles the versioned JSON report.
InvariantReport build_report(const std::string& field_spec, const std::string& form_dsl,
                             std::uint32_t a, const ReportOptions& options);

// One classify run rendered as the human-readable lines of `qrep classify`.
std::string classify_text(const std::string& field_spec, const std::string& form_dsl);

enum class SweepMode { Diameter, All };

struct SweepRow {
    enum class Status { Ok, Mismatch, CapExceeded, Error };
    std::uint64_t f = 0;
    std::uint32_t a = 0;
    std::string predicted; // diameter prediction, e.g. "3..4"
    std::string oracle;    // oracle diameter, e.g. "4" or "inf"
    Status status = Status::Ok;
    std::string note; // mismatch summary or error code

    bool match = false; // convenience: status == Ok
};

// One row per prime power in [lo, hi] (times the a-policy: the single value
// a_default, or every a in F with all_a). The form DSL is re-parsed over
// every field. Per-row cap errors are recorded, not fatal.
std::vector<SweepRow> run_sweep(const std::string& form_dsl, std::uint64_t lo,
                                std::uint64_t hi, bool all_a, SweepMode mode,
                                std::uint64_t max_vertices, unsigned threads = 1,
                                std::uint32_t a_default = 1);

std::string format_sweep_table(const std::vector<SweepRow>& rows);

std::vector<std::uint64_t> prime_powers_in(std::uint64_t lo, std::uint64_t hi);

} // namespace qrep
