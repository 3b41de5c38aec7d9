#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ellmu/errors.hpp"
#include "ellmu_tools/commands.hpp"

using namespace ellmu;
using namespace ellmu::tools;

namespace {

struct spec_flags {
    std::string spec_file;
    std::string spec_json;
    std::uint32_t p = 0;
    std::uint32_t e = 1;
    std::vector<std::string> coeffs;
    std::string legendre;
    std::string ext;
    bool assert_constant = false;
};

void add_spec_flags(CLI::App* app, spec_flags& f) {
    app->add_option("--spec", f.spec_file, "Curve spec JSON file");
    app->add_option("--spec-json", f.spec_json, "Curve spec as inline JSON");
    app->add_option("-p,--p", f.p, "Characteristic");
    app->add_option("-e,--e", f.e, "Constant field degree, q = p^e");
    app->add_option("--coeffs", f.coeffs, "a1 a2 a3 a4 a6 as rational functions in t")->expected(5);
    app->add_option("--legendre", f.legendre, "Legendre parameter f for y^2 = x(x-1)(x-f)");
    app->add_option("--ext", f.ext, "Quadratic extension element D");
    app->add_flag("--assert-constant", f.assert_constant, "Treat an undetermined isotrivial curve as constant");
}

curve_spec build_spec(const spec_flags& f) {
    curve_spec s;
    if (!f.spec_file.empty() || !f.spec_json.empty()) {
        nlohmann::json j;
        if (!f.spec_file.empty()) {
            std::ifstream in(f.spec_file);
            if (!in) throw input_error("cannot read spec file " + f.spec_file);
            j = nlohmann::json::parse(in, nullptr, false);
        } else {
            j = nlohmann::json::parse(f.spec_json, nullptr, false);
        }
        if (j.is_discarded()) throw input_error("spec is not valid JSON");
        s = curve_spec::from_json(j);
    } else {
        s.p = f.p;
        s.e = f.e;
        if (!f.coeffs.empty()) s.coeffs = std::array<std::string, 5>{f.coeffs[0], f.coeffs[1], f.coeffs[2], f.coeffs[3], f.coeffs[4]};
        if (!f.legendre.empty()) s.legendre = f.legendre;
        if (s.coeffs.has_value() == s.legendre.has_value())
            throw input_error("give exactly one of --coeffs and --legendre (or --spec)");
    }
    if (!f.ext.empty()) s.ext = f.ext;
    if (f.assert_constant) s.assert_constant = true;
    s.model();
    return s;
}

std::string scalar(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_text(const ordered_json& r, std::ostream& os) {
    const std::string cmd = r.value("command", "");
    if (r.contains("twist")) {
        const auto& t = r["twist"];
        os << "twist: " << t["kind"].get<std::string>();
        if (t.contains("D")) os << " by " << scalar(t["D"]);
        if (t.contains("m")) os << " m=" << scalar(t["m"]) << ", transported mu " << scalar(t["transported_mu"]);
        os << "\n";
    }
    if (r.contains("meta")) os << "j: " << scalar(r["meta"]["j"]) << "\n";
    if (r.contains("local")) {
        const auto& l = r["local"];
        auto row = [&](const ordered_json& ld) {
            os << "  " << scalar(ld["place"]) << ": " << scalar(ld["kodaira"]) << " " << scalar(ld["reduction"])
               << " delta=" << scalar(ld["delta"]) << " f=" << scalar(ld["conductor"]);
            if (!ld["a_v"].is_null()) os << " a_v=" << scalar(ld["a_v"]);
            if (!ld["supersingular"].is_null() && ld["supersingular"].get<bool>()) os << " supersingular";
            os << "\n";
        };
        os << "local:\n";
        if (l.is_array())
            for (const auto& ld : l) row(ld);
        else
            row(l);
    }
    if (r.contains("divisors")) {
        os << "Delta = " << scalar(r["divisors"]["discriminant"]["text"]) << " (deg "
           << scalar(r["divisors"]["discriminant"]["degree"]) << ")\n";
        os << "N = " << scalar(r["divisors"]["conductor"]["text"]) << " (deg "
           << scalar(r["divisors"]["conductor"]["degree"]) << ")\n";
    }
    if (r.contains("L")) {
        os << "P1(T) = " << scalar(r["L"]["P1"]["text"]);
        if (!r["L"]["sign_determined"].get<bool>()) os << "  (sign undetermined; alternate " << scalar(r["L"]["alternate"]["text"]) << ")";
        os << "\n";
    }
    if (r.contains("iwasawa")) {
        const auto& iw = r["iwasawa"];
        os << "theta = " << scalar(iw["theta"]["value"]) << ", mu = " << scalar(iw["mu"]["mu"])
           << ", lambda = " << scalar(iw["lambda"]["value"]) << (iw["lambda"]["conditional"].get<bool>() ? " (conditional)" : "")
           << ", d = " << scalar(iw["mu"]["d"]) << "\n";
    }
    if (r.contains("base_change")) {
        const auto& b = r["base_change"];
        os << "extension D0 = " << scalar(b["D0"]) << ", g' = " << scalar(b["genus_prime"]) << ", deg Delta' = "
           << scalar(b["deg_delta"]) << ", a' = " << scalar(b["a_prime"]) << "\n";
        os << "L over K' = " << scalar(b["L_product"]["text"]) << "\n";
        os << "theta' = " << scalar(b["iwasawa"]["theta"]["value"]) << ", mu' = " << scalar(b["iwasawa"]["mu"]["mu"]) << "\n";
    }
    if (cmd == "growth") {
        os << "mu = " << scalar(r["mu"]) << ", lambda = " << scalar(r["lambda"]) << "\n";
        for (const auto& row : r["rows"]) os << "  n=" << scalar(row["n"]) << "  e_n ~ " << scalar(row["leading"]) << "\n";
    }
    if (cmd == "survey") {
        os << "valid " << scalar(r["valid"]) << " of " << scalar(r["attempts"]) << " attempts";
        if (r["partial"].get<bool>()) os << " (partial)";
        os << "\nhistogram:";
        for (const auto& [k, v] : r["histogram"].items()) os << " mu=" << k << ":" << v.dump();
        os << "\nmu = 0 fraction " << scalar(r["mu_zero_fraction"]) << "\n";
    }
    if (r.contains("warnings"))
        for (const auto& w : r["warnings"]) os << "warning: " << w.get<std::string>() << "\n";
    std::vector<std::string> failed;
    for (const auto& [k, v] : r["checks"].items())
        if (!v.get<bool>()) failed.push_back(k);
    os << "checks: " << r["checks"].size() << " evaluated, " << failed.size() << " failed";
    for (const auto& f : failed) os << " " << f;
    os << "\n";
}

int selftest(std::ostream& os) {
    struct item {
        const char* name;
        curve_spec spec;
        int mu;
        int deg_delta;
        const char* P1;
    };
    auto legendre = [](std::uint32_t p, const char* f) {
        curve_spec s;
        s.p = p;
        s.legendre = f;
        return s;
    };
    auto coeffs = [](std::uint32_t p, std::array<std::string, 5> c) {
        curve_spec s;
        s.p = p;
        s.coeffs = std::move(c);
        return s;
    };
    const std::vector<item> items{
        {"legendre F3 (1+t+t^2)/(1+t)", legendre(3, "(1+t+t^2)/(1+t)"), 1, 24, "1 - 9*T^2"},
        {"legendre F5 (t^2+t+1)/t^2", legendre(5, "(t^2+t+1)/t^2"), 0, 12, nullptr},
        {"constant curve F7", coeffs(7, {"0", "0", "0", "1", "3"}), 0, 0, "1"},
        {"y^2+xy = x^3-t^6 over F5", coeffs(5, {"1", "0", "0", "0", "-t^6"}), 0, 12, nullptr},
    };
    int failures = 0;
    for (const auto& it : items) {
        bool ok = false;
        std::string detail;
        try {
            const auto r = run_analyze(it.spec, {});
            const auto& iw = r.report["iwasawa"]["mu"];
            ok = r.all_checks_pass && iw["mu"].get<int>() == it.mu && iw["deg_delta"].get<int>() == it.deg_delta &&
                 (!it.P1 || r.report["L"]["P1"]["text"].get<std::string>() == it.P1);
            detail = "mu=" + iw["mu"].dump() + " deg_delta=" + iw["deg_delta"].dump();
        } catch (const std::exception& ex) {
            detail = ex.what();
        }
        os << (ok ? "PASS " : "FAIL ") << it.name << "  " << detail << "\n";
        if (!ok) ++failures;
    }
    return failures ? static_cast<int>(exit_code::assertion) : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ellmu: Iwasawa mu-invariants of elliptic curves over F_q(t)"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    std::optional<int> precision_cap;
    std::optional<double> work_budget;
    int threads = 1;
    std::string cache_dir;
    std::uint64_t seed = 42;
    app.add_flag("--json", as_json, "Print the JSON report");
    app.add_option("--precision-cap", precision_cap, "Largest local series precision");
    app.add_option("--work-budget", work_budget, "Field operations allowed per power sum");
    app.add_option("--threads", threads, "Worker threads for point counting and surveys")->check(CLI::PositiveNumber);
    app.add_option("--cache-dir", cache_dir, "Directory for the persistent trace cache");
    app.add_option("--seed", seed, "Random seed");

    spec_flags sa, sl, slo, st, sg;
    auto* analyze_cmd = app.add_subcommand("analyze", "Full pipeline report");
    add_spec_flags(analyze_cmd, sa);
    auto* lf_cmd = app.add_subcommand("lfunction", "L-polynomial only");
    add_spec_flags(lf_cmd, sl);
    auto* local_cmd = app.add_subcommand("local", "Tate's algorithm at one place");
    add_spec_flags(local_cmd, slo);
    std::string place_text;
    local_cmd->add_option("--place", place_text, "Monic irreducible polynomial in t, or inf")->required();
    auto* twist_cmd = app.add_subcommand("twist", "Quadratic or Frobenius twist");
    add_spec_flags(twist_cmd, st);
    std::string twist_by;
    std::optional<std::uint32_t> frob;
    auto* by_opt = twist_cmd->add_option("--by", twist_by, "Quadratic twist element D");
    auto* fr_opt = twist_cmd->add_option("--frobenius", frob, "Raise coefficients to the p^m-th power");
    by_opt->excludes(fr_opt);
    auto* growth_cmd = app.add_subcommand("growth", "Growth table mu e p^n + lambda n");
    add_spec_flags(growth_cmd, sg);
    int g_from = 0, g_to = 6;
    growth_cmd->add_option("--from", g_from, "First layer");
    growth_cmd->add_option("--to", g_to, "Last layer");
    auto* survey_cmd = app.add_subcommand("survey", "mu distribution over Weierstrass data of bounded degree");
    survey_options sopt;
    std::string out_path, points_path;
    survey_cmd->add_option("--n", sopt.n, "Degree of the line bundle");
    survey_cmd->add_option("--q", sopt.q, "Constant field size");
    survey_cmd->add_option("--samples", sopt.samples, "Valid points to sample");
    survey_cmd->add_flag("--exhaustive", sopt.exhaustive, "Enumerate every coefficient vector");
    survey_cmd->add_option("--point-budget", sopt.point_budget, "Field operations per point");
    survey_cmd->add_option("--out", out_path, "Write the histogram JSON here");
    survey_cmd->add_option("--points", points_path, "Write per-point JSONL here");
    auto* self_cmd = app.add_subcommand("selftest", "Quick golden checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(exit_code::input);
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (self_cmd->parsed()) return selftest(std::cout);

        std::unique_ptr<disk_trace_cache> cache;
        if (!cache_dir.empty()) cache = std::make_unique<disk_trace_cache>(cache_dir);
        run_options opt;
        opt.precision_cap = precision_cap;
        opt.work_budget = work_budget;
        opt.threads = threads;
        opt.seed = seed;
        opt.cache = cache.get();

        command_result res;
        if (analyze_cmd->parsed()) {
            res = run_analyze(build_spec(sa), opt);
        } else if (lf_cmd->parsed()) {
            res = run_lfunction(build_spec(sl), opt);
        } else if (local_cmd->parsed()) {
            res = run_local(build_spec(slo), place_text, opt);
        } else if (twist_cmd->parsed()) {
            if (frob)
                res = run_twist_frobenius(build_spec(st), *frob, opt);
            else if (!twist_by.empty())
                res = run_twist_quadratic(build_spec(st), twist_by, opt);
            else
                throw input_error("twist needs --by D or --frobenius m");
        } else if (growth_cmd->parsed()) {
            res = run_growth(build_spec(sg), g_from, g_to, opt);
        } else if (survey_cmd->parsed()) {
            sopt.seed = seed;
            sopt.threads = threads;
            if (precision_cap) sopt.precision_cap = *precision_cap;
            survey_result sr;
            res = run_survey(sopt, &sr);
            if (!points_path.empty()) {
                std::ofstream pts(points_path);
                if (!pts) throw input_error("cannot write " + points_path);
                for (const auto& r : sr.records) pts << to_json(r).dump() << "\n";
            }
        }

        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.report["timing"] = {{"seconds", secs}};
        if (cache) {
            const auto& c = cache->counters();
            res.report["cache"] = {{"file", cache->file().string()}, {"loaded", c.loaded}, {"rejected", c.rejected},
                                   {"hits", c.hits}, {"misses", c.misses}, {"written", c.written}};
        }
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            if (!out) throw input_error("cannot write " + out_path);
            out << res.report.dump(2) << "\n";
        }
        if (as_json)
            std::cout << res.report.dump(2) << "\n";
        else
            print_text(res.report, std::cout);
        return res.all_checks_pass ? 0 : static_cast<int>(exit_code::assertion);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return static_cast<int>(exit_code::input);
    } catch (const theorem_violation& e) {
        std::cerr << "assertion failure: " << e.what() << "\n";
        return static_cast<int>(exit_code::assertion);
    } catch (const resource_exhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return static_cast<int>(exit_code::budget);
    }
}
