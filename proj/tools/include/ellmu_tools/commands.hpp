#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ellmu_tools/disk_cache.hpp"
#include "ellmu_tools/report.hpp"

namespace ellmu::tools {

struct run_options {
    std::optional<int> precision_cap;
    std::optional<double> work_budget;
    int threads = 1;
    std::uint64_t seed = 42;
    disk_trace_cache* cache = nullptr;
};

struct command_result {
    ordered_json report;
    bool all_checks_pass = true;
};

analysis_options make_analysis_options(const curve_spec& spec, const run_options& opt);

command_result run_analyze(const curve_spec& spec, const run_options& opt);
command_result run_lfunction(const curve_spec& spec, const run_options& opt);
// place is "inf" or a monic irreducible polynomial in t.
command_result run_local(const curve_spec& spec, const std::string& place_text, const run_options& opt);
command_result run_twist_quadratic(const curve_spec& spec, const std::string& D, const run_options& opt);
command_result run_twist_frobenius(const curve_spec& spec, std::uint32_t mexp, const run_options& opt);
command_result run_growth(const curve_spec& spec, int n_from, int n_to, const run_options& opt);
// raw, when given, receives the records for per-point output.
command_result run_survey(const survey_options& sopt, survey_result* raw = nullptr);

// Drops the fields that legitimately differ between runs.
ordered_json strip_volatile(ordered_json report);

}  // namespace ellmu::tools
