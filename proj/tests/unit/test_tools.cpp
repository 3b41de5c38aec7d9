#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ellmu/errors.hpp"
#include "ellmu_tools/commands.hpp"

using namespace ellmu;
using namespace ellmu::tools;

namespace {

curve_spec legendre_spec(std::uint32_t p, const std::string& f) {
    curve_spec s;
    s.p = p;
    s.legendre = f;
    return s;
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("ellmu_test_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ELLMU_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(CurveSpec, JsonRoundTrip) {
    curve_spec s;
    s.p = 3;
    s.e = 2;
    s.coeffs = std::array<std::string, 5>{"1", "g", "0", "t", "t^2+g*t"};
    s.ext = "t";
    s.precision_cap = 64;
    const auto j = s.to_json();
    const auto back = curve_spec::from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.to_json(), j);
    EXPECT_EQ(back.model(), s.model());
}

TEST(CurveSpec, RejectsMalformedInput) {
    EXPECT_THROW(curve_spec::from_json(nlohmann::json::parse(R"({"p": 3})")), input_error);
    EXPECT_THROW(curve_spec::from_json(nlohmann::json::parse(R"({"p": 3, "legendre": "t", "coeffs": ["0","0","0","0","t"]})")),
                 input_error);
    EXPECT_THROW(curve_spec::from_json(nlohmann::json::parse(R"({"p": 3, "legendre": "t", "colour": 1})")), input_error);
    EXPECT_THROW(curve_spec::from_json(nlohmann::json::parse(R"({"p": 3, "coeffs": ["0","0","0"]})")), input_error);
    EXPECT_THROW(legendre_spec(4, "t").model(), input_error);
}

TEST(CurveSpec, HashIgnoresSpelling) {
    EXPECT_EQ(curve_hash(legendre_spec(3, "(1+t+t^2)/(1+t)").model()), curve_hash(legendre_spec(3, "(t^2+t+1)/(t+1)").model()));
    EXPECT_NE(curve_hash(legendre_spec(3, "t").model()), curve_hash(legendre_spec(5, "t").model()));
    EXPECT_EQ(hex64(fnv1a64("")), "cbf29ce484222325");
}

TEST(Report, GoldenLegendreOverF3) {
    const auto r = run_analyze(legendre_spec(3, "(1+t+t^2)/(1+t)"), {}).report;
    EXPECT_EQ(r["schema"], report_schema);
    EXPECT_EQ(r["divisors"]["discriminant"]["text"], "4*(t) + 8*(t+1) + 4*(t+2) + 8*(inf)");
    EXPECT_EQ(r["divisors"]["discriminant"]["degree"], 24);
    EXPECT_EQ(r["L"]["P1"]["text"], "1 - 9*T^2");
    EXPECT_EQ(r["iwasawa"]["theta"]["value"], 0);
    EXPECT_EQ(r["iwasawa"]["mu"]["mu"], 1);
    EXPECT_TRUE(r["all_checks_pass"].get<bool>());
    std::map<std::string, std::string> reduction;
    for (const auto& ld : r["local"]) reduction[ld["place"]] = ld["reduction"];
    const std::map<std::string, std::string> expected{{"t", "split_multiplicative"},
                                                      {"t+1", "additive"},
                                                      {"t+2", "nonsplit_multiplicative"},
                                                      {"inf", "additive"}};
    EXPECT_EQ(reduction, expected);
}

TEST(Report, ConstantAndUlmerCurves) {
    curve_spec c;
    c.p = 7;
    c.coeffs = std::array<std::string, 5>{"0", "0", "0", "1", "3"};
    auto r = run_analyze(c, {}).report;
    EXPECT_EQ(r["iwasawa"]["mu"]["mu"], 0);
    EXPECT_EQ(r["L"]["a"], 0);
    c.p = 5;
    c.coeffs = std::array<std::string, 5>{"1", "0", "0", "0", "-t^6"};
    r = run_analyze(c, {}).report;
    EXPECT_EQ(r["iwasawa"]["mu"]["mu"], 0);
}

TEST(Report, DeterministicAcrossRunsAndThreads) {
    const auto spec = legendre_spec(5, "(t^2+t+1)/t^2");
    const std::string a = run_analyze(spec, {}).report.dump();
    EXPECT_EQ(run_analyze(spec, {}).report.dump(), a);
    run_options threaded;
    threaded.threads = 3;
    EXPECT_EQ(run_analyze(spec, threaded).report.dump(), a);
}

TEST(Commands, LfunctionOnTwist) {
    const auto r = run_twist_quadratic(legendre_spec(7, "1/t^2"), "t^3-5*t", {}).report;
    EXPECT_EQ(r["L"]["P1"]["text"], "1 - 35*T^2 + 1715*T^4 - 117649*T^6");
    curve_spec s = legendre_spec(7, "1/t^2");
    EXPECT_EQ(run_lfunction(s, {}).report["L"]["P1"]["text"], "1");
}

TEST(Commands, LocalSupersingularPlace) {
    const auto r = run_local(legendre_spec(3, "t^2"), "t^2+1", {}).report;
    EXPECT_EQ(r["local"]["reduction"], "good");
    EXPECT_EQ(r["local"]["supersingular"], true);
    EXPECT_THROW(run_local(legendre_spec(3, "t^2"), "t^2+2*t+1", {}), input_error);
}

TEST(Commands, FrobeniusTwistOfShiodaCurve) {
    const auto res = run_twist_frobenius(legendre_spec(3, "(t^2+1)^2/t^2"), 1, {});
    EXPECT_TRUE(res.all_checks_pass);
    EXPECT_EQ(res.report["iwasawa"]["mu"]["mu"], 5);
    EXPECT_EQ(res.report["twist"]["transported_mu"], 5);
    EXPECT_TRUE(res.report["checks"]["frobenius.mu_transport"].get<bool>());
}

TEST(Commands, BaseChangeReport) {
    curve_spec s = legendre_spec(7, "1/t^2");
    s.ext = "t^3+5*t";
    const auto r = run_analyze(s, {}).report;
    const auto& b = r["base_change"];
    EXPECT_EQ(b["genus_prime"], 1);
    EXPECT_EQ(b["deg_delta"], 24);
    EXPECT_EQ(b["a_prime"], 6);
    EXPECT_EQ(b["L_product"]["degree"], 6);
    EXPECT_TRUE(r["all_checks_pass"].get<bool>());
}

TEST(Commands, GrowthRows) {
    const auto r = run_growth(legendre_spec(3, "(1+t+t^2)/(1+t)"), 1, 4, {}).report;
    std::vector<int> lead;
    for (const auto& row : r["rows"]) lead.push_back(row["leading"]);
    EXPECT_EQ(lead, (std::vector<int>{4, 11, 30, 85}));
    EXPECT_THROW(run_growth(legendre_spec(3, "t"), 3, 1, {}), input_error);
}

TEST(DiskCache, WarmRunEqualsColdRun) {
    const auto dir = fresh_dir("warm");
    const auto spec = legendre_spec(5, "(t^2+t+1)/t^2");
    const auto plain = strip_volatile(run_analyze(spec, {}).report);
    ordered_json cold, warm;
    {
        disk_trace_cache cache(dir);
        run_options opt;
        opt.cache = &cache;
        cold = strip_volatile(run_analyze(spec, opt).report);
        EXPECT_GT(cache.counters().written, 0);
    }
    {
        disk_trace_cache cache(dir);
        run_options opt;
        opt.cache = &cache;
        warm = strip_volatile(run_analyze(spec, opt).report);
        EXPECT_EQ(cache.counters().misses, 0);
        EXPECT_GT(cache.counters().hits, 0);
        EXPECT_EQ(cache.counters().written, 0);
    }
    EXPECT_EQ(cold, plain);
    EXPECT_EQ(warm, plain);
    std::filesystem::remove_all(dir);
}

TEST(DiskCache, RejectsCorruptAndForeignLines) {
    const auto dir = fresh_dir("corrupt");
    trace_key key{5, 1, "curve-text", "t+2", 1};
    {
        disk_trace_cache cache(dir);
        cache.put(key, -2);
    }
    const auto file = dir / "traces.v1.jsonl";
    {
        std::ofstream out(file, std::ios::app);
        out << "not json\n";
        // Tampered trace with the original check value.
        std::ifstream in(file);
        std::string first;
        std::getline(in, first);
        auto j = nlohmann::json::parse(first);
        j["place"] = "t+3";
        j["trace"] = 4;
        out << j.dump() << "\n";
        j = nlohmann::json::parse(first);
        j["schema"] = 0;
        j["place"] = "t+4";
        out << j.dump() << "\n";
    }
    disk_trace_cache cache(dir);
    EXPECT_EQ(cache.counters().loaded, 1);
    EXPECT_EQ(cache.counters().rejected, 3);
    EXPECT_EQ(cache.get(key), -2);
    key.place = "t+3";
    EXPECT_FALSE(cache.get(key));
    key.place = "t+4";
    EXPECT_FALSE(cache.get(key));
    std::filesystem::remove_all(dir);
}

TEST(Survey, ReportChecks) {
    survey_options opt;
    opt.n = 1;
    opt.samples = 4;
    survey_result raw;
    const auto res = run_survey(opt, &raw);
    EXPECT_TRUE(res.all_checks_pass);
    EXPECT_EQ(res.report["valid"], 4);
    EXPECT_EQ(raw.records.size(), 4u);
    EXPECT_EQ(res.report["histogram"]["0"], 4);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("analyze -p 3 --legendre '(1+t+t^2)/(1+t)'"), 0);
    EXPECT_EQ(run_cli("analyze -p 4 --legendre t"), 2);
    EXPECT_EQ(run_cli("analyze -p 5 --legendre t --coeffs 0 0 0 0 t"), 2);
    EXPECT_EQ(run_cli("analyze -p 5 --legendre t --work-budget 10"), 4);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli("selftest"), 0);
}
