#pragma once
// Seeded verification suites. Every record is one named check: the worst residual over its
// samples against a fixed tolerance.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thetaforge/core.hpp"

namespace tf {

struct ReportRecord {
    std::string check_name;
    std::vector<std::pair<std::string, std::string>> inputs;  // kept in insertion order
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;  // residual <= tolerance; NaN fails
    double elapsed_ms = 0.0;
    std::string equation_ref;  // the identity or equation the check exercises
    int criterion = 0;         // acceptance item the record feeds
    std::string suite;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    bool has_tau = false;  // pin tau-sampled checks to one modulus
    cplx tau{0.0, 1.0};
    bool parallel = true;
};

const std::vector<std::string>& suite_names();  // without "all"
// UnknownSuite for anything else
std::vector<ReportRecord> run_suite(const std::string& name, const VerifyOptions& opts = {});

// JSON array of records. elapsed_ms is written as 0 unless with_timing, so runs compare byte for byte.
std::string records_to_json(const std::vector<ReportRecord>& r, bool with_timing = false);
std::string records_to_csv(const std::vector<ReportRecord>& r);
std::vector<ReportRecord> records_from_json(const std::string& text);

// "a+bi", "(a+bi)", "i", "-2i", "1.5", "1e-3-2e-2i"; ParseError otherwise
cplx parse_complex(const std::string& s);
// shortest text that parses back to the same value; digits > 0 fixes the significant digits instead
std::string format_complex(cplx z, int digits = 0);

}  // namespace tf
