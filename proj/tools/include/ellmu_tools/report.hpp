#pragma once

#include <map>
#include <string>

#include "ellmu/analysis.hpp"
#include "ellmu/base_change.hpp"
#include "ellmu/survey.hpp"
#include "ellmu_tools/spec.hpp"

namespace ellmu::tools {

inline constexpr const char* report_schema = "ellmu.report/1";

// Integers that fit in 64 bits as JSON numbers, larger ones as strings.
ordered_json to_json(const bigint& x);
ordered_json to_json(const exact_rational& x);
ordered_json to_json(const std::vector<bigint>& xs);
ordered_json to_json(const local_data& ld);
ordered_json to_json(const l_polynomial& P);
ordered_json to_json(const newton_polygon& np);
ordered_json to_json(const mu_report& r);
ordered_json to_json(const lambda_report& r);
ordered_json to_json(const curve_meta& m);
ordered_json to_json(const iwasawa_summary& s);
ordered_json to_json(const analysis& a);
ordered_json to_json(const base_change_analysis& b);
ordered_json to_json(const moduli_point& pt);
ordered_json to_json(const survey_record& r);
ordered_json to_json(const survey_result& r);

// Every boolean check of an analysis, prefixed by its stage.
std::map<std::string, bool> collect_checks(const analysis& a);
std::map<std::string, bool> collect_checks(const base_change_analysis& b);

// Top-level report object: schema, command, curve echo, then the body's fields.
ordered_json make_report(const std::string& command, const curve_spec* spec, ordered_json body,
                         const std::map<std::string, bool>& checks);

bool all_pass(const std::map<std::string, bool>& checks);

}  // namespace ellmu::tools
