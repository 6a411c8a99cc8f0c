#include "doctest.h"

#include "qlink/scenario/config.hpp"
#include "qlink/scenario/drift_run.hpp"
#include "qlink/scenario/outlook.hpp"
#include "qlink/scenario/runner.hpp"
#include "qlink/scenario/scenario.hpp"
#include "qlink/scenario/sweep.hpp"
#include "qlink/scenario/table.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace qlink;
using namespace qlink::scenario;

namespace {

const std::filesystem::path kScenarioDir = QLINK_SCENARIO_DIR;

ConfigNode parse(const std::string& text) {
    return parse_config_text(text, "<test>");
}

struct TempFile {
    std::filesystem::path path;
    TempFile(const std::string& name, const std::string& content)
        : path(std::filesystem::temp_directory_path() / name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::filesystem::remove(path); }
};

} // namespace

TEST_SUITE("scenario") {

TEST_CASE("config parser handles units, comments and nesting") {
    const ConfigNode root = parse(
        "# top comment\n"
        "name = demo   # trailing comment\n"
        "outputs = summary, histogram\n"
        "duration = 2 s\n"
        "window = 1.5 ns\n"
        "rate = 100 kHz\n"
        "angle = 90 deg\n"
        "count = 42\n"
        "source {\n"
        "    visibility = 0.9\n"
        "    nested {\n"
        "        deep = 1\n"
        "    }\n"
        "}\n");
    CHECK(root.word("name") == "demo");
    CHECK(root.words("outputs") == std::vector<std::string>{"summary", "histogram"});
    CHECK(root.quantity("duration", Dim::TimeS) == doctest::Approx(2.0));
    CHECK(root.time_ps("window") == 1500);
    CHECK(root.quantity("rate", Dim::RateHz) == doctest::Approx(100'000.0));
    CHECK(root.quantity("angle", Dim::AngleRad) ==
          doctest::Approx(1.5707963267948966).epsilon(1e-12));
    CHECK(root.integer("count") == 42);
    CHECK(root.block("source").number("visibility") == doctest::Approx(0.9));
    CHECK(root.block("source").block("nested").number("deep") == 1.0);
    CHECK(root.find_block("missing") == nullptr);
    CHECK(root.has("name"));
    CHECK_FALSE(root.has("nonesuch"));
}

TEST_CASE("config parser reports errors with file and line") {
    CHECK_THROWS_AS(parse("block {\n  x = 1\n"), ConfigError); // unterminated
    CHECK_THROWS_AS(parse("= 3\n"), ConfigError);
    CHECK_THROWS_AS(parse("}\n"), ConfigError);

    // Units and duplicates are enforced when a value is read.
    CHECK_THROWS_AS(parse("t = 2 parsec\n").quantity("t", Dim::TimeS), ConfigError);
    CHECK_THROWS_AS(parse("a = 1\na = 2\n").number("a"), ConfigError);

    try {
        parse("ok = 1\nbad = 2 lightyears\n").quantity("bad", Dim::TimeS);
        FAIL("expected a unit failure");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("<test>") != std::string::npos);
        CHECK(msg.find(":2") != std::string::npos);
    }

    // Typed getter on a missing key also carries the source name.
    const ConfigNode root = parse("x = 1\n");
    CHECK_THROWS_AS(root.number("y"), ConfigError);
    CHECK_THROWS_AS(root.quantity("x", Dim::TimeS), ConfigError); // bare number
}

TEST_CASE("includes splice into the enclosing scope") {
    TempFile inc("qlink-test-common.inc",
                 "shared = 7\nfiber tele {\n    calibrated = telecom\n}\n");
    TempFile main_cfg("qlink-test-main.scn",
                      "top = 1\ninclude \"qlink-test-common.inc\"\n");
    const ConfigNode root = parse_config_file(main_cfg.path);
    CHECK(root.number("top") == 1.0);
    CHECK(root.number("shared") == 7.0);
    REQUIRE(root.blocks("fiber").size() == 1);
    CHECK(root.blocks("fiber")[0]->label() == "tele");

    TempFile broken("qlink-test-broken.scn", "include \"does-not-exist.inc\"\n");
    CHECK_THROWS_AS(parse_config_file(broken.path), ConfigError);
}

TEST_CASE("bundled scenario files all load") {
    for (const auto& entry : std::filesystem::directory_iterator(kScenarioDir)) {
        if (entry.path().extension() != ".scn")
            continue;
        if (entry.path().filename() == "outlook.scn") {
            CHECK_NOTHROW(load_outlook(entry.path()));
            continue;
        }
        CHECK_NOTHROW(load_scenario(entry.path()));
    }
}

TEST_CASE("scenario loading fills in the physics") {
    const Scenario s = load_scenario(kScenarioDir / "asym-2km.scn");
    CHECK(s.name == "asym-2km");
    CHECK(s.seed == 21);
    CHECK(s.duration_s == doctest::Approx(10.0));
    CHECK(s.source.pair_rate_hz == doctest::Approx(100'000.0));
    CHECK(s.source.visibility == doctest::Approx(0.946));

    CHECK(s.arm_a.fiber_label == "telecom");
    CHECK(s.arm_a.length_km == doctest::Approx(2.0));
    CHECK(s.arm_a.attenuation_db_per_km == doctest::Approx(3.0));
    CHECK(s.arm_a.two_mode);
    CHECK(s.arm_a.launch_fundamental == doctest::Approx(0.80));
    CHECK(s.arm_a.launch_higher == doctest::Approx(0.18));
    CHECK(s.arm_a.rotation_higher_rad == doctest::Approx(26.35 * 3.14159265 / 180.0).epsilon(1e-6));
    CHECK(s.arm_a.has_spatial_stage);
    CHECK(s.arm_a.spatial_fundamental == doctest::Approx(0.9515));
    // Mode delays come from the solved fiber, in ns/km.
    CHECK(s.arm_a.delay_fundamental_ns_per_km == doctest::Approx(4839.5564).epsilon(1e-4));
    CHECK(s.arm_a.delay_higher_ns_per_km == doctest::Approx(4841.7464).epsilon(1e-4));

    CHECK(s.arm_b.fiber_label.empty());
    CHECK(s.arm_b.length_km == 0.0);
    CHECK(s.analysis.offset_search_ps == 35'000'000);

    // No temporal filter: the wide acceptance window applies.
    CHECK_FALSE(s.filters.temporal_window_ps.has_value());
    CHECK(applied_window_ps(s) == s.analysis.wide_window_ps);

    const Scenario t = load_scenario(kScenarioDir / "asym-2km-temporal.scn");
    REQUIRE(t.filters.temporal_window_ps.has_value());
    CHECK(*t.filters.temporal_window_ps == 2000);
    CHECK(applied_window_ps(t) == 2000);
}

TEST_CASE("scenario validation rejects broken configs") {
    const std::string head =
        "name = x\nseed = 1\nwavelength = 810 nm\n"
        "arm_a {\n    fiber = none\n}\narm_b {\n    fiber = none\n}\n";
    const auto with = [&](const std::string& duration, const std::string& visibility,
                          const std::string& extra) {
        return head + "duration = " + duration + "\n" +
               "source {\n    pair_rate = 1 kHz\n    visibility = " + visibility + "\n}\n" +
               extra;
    };
    CHECK_NOTHROW(scenario_from_config(parse(with("1 s", "0.9", ""))));

    // Unknown fiber label.
    CHECK_THROWS_AS(
        scenario_from_config(parse(
            "name = x\nseed = 1\nduration = 1 s\nwavelength = 810 nm\n"
            "source {\n    pair_rate = 1 kHz\n    visibility = 0.9\n}\n"
            "arm_a {\n    fiber = ghost\n    length = 1 km\n}\narm_b {\n    fiber = none\n}\n")),
        ConfigError);
    // Visibility outside the physical range.
    CHECK_THROWS_AS(scenario_from_config(parse(with("1 s", "1.2", ""))), ConfigError);
    // Zero duration.
    CHECK_THROWS_AS(scenario_from_config(parse(with("0 s", "0.9", ""))), ConfigError);
    // Spatial filter on for a two-mode arm that lacks a stage.
    CHECK_THROWS_AS(
        scenario_from_config(parse(
            "name = x\nseed = 1\nduration = 1 s\nwavelength = 810 nm\n"
            "source {\n    pair_rate = 1 kHz\n    visibility = 0.9\n}\n"
            "fiber tele {\n    calibrated = telecom\n}\n"
            "arm_a {\n    fiber = tele\n    length = 1 km\n}\n"
            "arm_b {\n    fiber = none\n}\n"
            "filters {\n    spatial = on\n}\n")),
        ConfigError);
    // Spatial filter with single-mode arms is a no-op, not an error.
    CHECK_NOTHROW(
        scenario_from_config(parse(with("1 s", "0.9", "filters {\n    spatial = on\n}\n"))));
}

TEST_CASE("arm loss budget by hand") {
    ArmBuild arm;
    arm.fiber_label = "telecom";
    arm.length_km = 2.0;
    arm.attenuation_db_per_km = 3.0;
    arm.two_mode = true;
    arm.launch_fundamental = 0.80;
    arm.launch_higher = 0.18;
    arm.has_spatial_stage = true;
    arm.spatial_fundamental = 0.9515;
    arm.spatial_higher = 0.0198;
    arm.spatial_insertion_db = 1.0;

    CHECK(arm_budget_db(arm, false) == doctest::Approx(6.0).epsilon(1e-12));

    // Stage on: coupled 0.98 -> through 0.80*0.9515 + 0.18*0.0198 = 0.76476;
    // rate loss -10 log10(0.76476/0.98) = 1.0766 dB, plus 1 dB insertion.
    CHECK(arm_budget_db(arm, true) == doctest::Approx(6.0 + 1.0766 + 1.0).epsilon(1e-3));

    arm.insertion_db = 0.5;
    CHECK(arm_budget_db(arm, false) == doctest::Approx(6.5).epsilon(1e-12));
}

TEST_CASE("arm build maps onto the simulator") {
    const Scenario s = load_scenario(kScenarioDir / "asym-2km.scn");
    const sim::ArmParams p = build_arm(s.arm_a, false);
    CHECK(p.length_km == doctest::Approx(2.0));
    CHECK(p.launch_fundamental == doctest::Approx(0.80));
    CHECK(p.filter_fundamental == doctest::Approx(1.0)); // stage off
    const sim::ArmParams q = build_arm(s.arm_a, true);
    CHECK(q.filter_fundamental == doctest::Approx(0.9515));
    CHECK(q.insertion_db == doctest::Approx(1.0)); // stage insertion joins the arm
    CHECK(std::abs(q.rotation_higher.a.real() - std::cos(s.arm_a.rotation_higher_rad)) < 1e-9);

    const sim::LinkParams lp = build_link(s);
    CHECK(lp.seed == 21);
    CHECK(lp.duration_s == doctest::Approx(10.0));
    CHECK(lp.source.pair_rate_hz == doctest::Approx(100'000.0));
}

TEST_CASE("scenario runs are deterministic") {
    Scenario s = load_scenario(kScenarioDir / "local-benchmark.scn");
    s.duration_s = 1.0; // keep the unit test quick
    const ScenarioResult r1 = run_scenario(s);
    const ScenarioResult r2 = run_scenario(s);
    CHECK(format_summary(s, r1) == format_summary(s, r2));
    CHECK(r1.offset_ps == r2.offset_ps);
    CHECK(r1.coincidences == r2.coincidences);
    CHECK(r1.visibility.qber == r2.visibility.qber);

    // Byte-identical artifacts.
    const auto dir1 = std::filesystem::temp_directory_path() / "qlink-test-bundle1";
    const auto dir2 = std::filesystem::temp_directory_path() / "qlink-test-bundle2";
    write_bundle(dir1, s, r1);
    write_bundle(dir2, s, r2);
    for (const char* name : {"summary.tsv", "histogram.tsv", "peaks.tsv"}) {
        std::ifstream f1(dir1 / name), f2(dir2 / name);
        REQUIRE(f1.good());
        const std::string b1((std::istreambuf_iterator<char>(f1)), {});
        const std::string b2((std::istreambuf_iterator<char>(f2)), {});
        CHECK(b1 == b2);
        CHECK_FALSE(b1.empty());
    }
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);

    // The local link needs no offset search: clocks agree to within jitter.
    CHECK(std::llabs(r1.offset_ps) < 2000);
    CHECK(r1.visibility.visibility > 0.90);
}

TEST_CASE("filters trade rate for visibility") {
    Scenario raw = load_scenario(kScenarioDir / "sym-2-2.scn");
    Scenario temporal = load_scenario(kScenarioDir / "sym-2-2-temporal.scn");
    Scenario tempspat = load_scenario(kScenarioDir / "sym-2-2-tempspat.scn");
    raw.duration_s = temporal.duration_s = tempspat.duration_s = 3.0;
    // Same seed isolates the filtering effect from shot noise.
    temporal.seed = tempspat.seed = raw.seed;

    const ScenarioResult r = run_scenario(raw);
    const ScenarioResult t = run_scenario(temporal);
    const ScenarioResult ts = run_scenario(tempspat);

    CHECK(r.visibility.visibility < t.visibility.visibility);
    CHECK(t.visibility.visibility < ts.visibility.visibility);
    CHECK(r.coincidences > t.coincidences);
    CHECK(t.coincidences > ts.coincidences);
    CHECK(t.temporal_loss_db > 0.0);
}

TEST_CASE("sweep swaps lengths on arm a and rejects bad input") {
    Scenario base = load_scenario(kScenarioDir / "sweep-base.scn");
    base.duration_s = 2.0;
    const auto points = run_sweep(base, {1.0, 3.0});
    REQUIRE(points.size() == 2);
    CHECK(points[0].length_km == doctest::Approx(1.0));
    CHECK(points[1].length_km == doctest::Approx(3.0));
    CHECK(points[0].coincidence_rate_hz > points[1].coincidence_rate_hz);

    CHECK_THROWS_AS(run_sweep(base, {1.0}), ConfigError);
    CHECK_THROWS_AS(run_sweep(base, {1.0, -2.0}), ConfigError);
    Scenario no_fiber = base;
    no_fiber.arm_a = ArmBuild{};
    CHECK_THROWS_AS(run_sweep(no_fiber, {1.0, 2.0}), ConfigError);
}

TEST_CASE("drift segmentation and the quiet limit") {
    Scenario s = load_scenario(kScenarioDir / "installed-drift.scn");
    s.duration_s = 60.0;
    s.source.pair_rate_hz = 20'000.0;
    s.drift_rate_rad_per_sqrt_s = 0.0; // frozen plant: flat error rate

    const auto points = run_drift(s, 15.0);
    REQUIRE(points.size() == 4);
    CHECK(points[0].t_s == doctest::Approx(7.5));
    CHECK(points[3].t_s == doctest::Approx(52.5));
    double lo = 1.0, hi = 0.0;
    for (const auto& p : points) {
        lo = std::min(lo, p.qber);
        hi = std::max(hi, p.qber);
    }
    CHECK(hi - lo < 0.02); // only shot noise moves a driftless link

    CHECK_THROWS_AS(run_drift(s, 0.0), ConfigError);
    CHECK_THROWS_AS(run_drift(s, 40.0), ConfigError); // fewer than two segments
}

TEST_CASE("outlook projection math") {
    OutlookParams p;
    p.local_coincidence_rate_hz = 2.5e6;
    p.qber = 0.022;
    p.length_a_km = 2.0;
    p.length_b_km = 2.0;
    p.attenuation_db_per_km = 3.0;
    p.arm_filter_db = 1.116;

    const OutlookResult filters_only = project_outlook(p);
    CHECK(filters_only.budget_db == doctest::Approx(2.232).epsilon(1e-9));
    const double expect_rate = 2.5e6 * std::pow(10.0, -2.232 / 10.0);
    CHECK(filters_only.coincidence_rate_hz == doctest::Approx(expect_rate).epsilon(1e-9));
    const double h = qkd::binary_entropy(0.022);
    const double frac = 1.0 - 2.2375 * h;
    CHECK(filters_only.secure_fraction == doctest::Approx(frac).epsilon(1e-9));
    CHECK(filters_only.secure_rate_hz ==
          doctest::Approx(0.5 * expect_rate * frac).epsilon(1e-9));

    p.include_fiber_attenuation = true;
    const OutlookResult with_fiber = project_outlook(p);
    CHECK(with_fiber.budget_db == doctest::Approx(2.232 + 12.0).epsilon(1e-9));
    CHECK(with_fiber.secure_rate_hz < filters_only.secure_rate_hz);

    OutlookParams bad = p;
    bad.qber = 0.6;
    CHECK_THROWS_AS(project_outlook(bad), ConfigError);
    bad = p;
    bad.local_coincidence_rate_hz = 0.0;
    CHECK_THROWS_AS(project_outlook(bad), ConfigError);
}

TEST_CASE("bundled outlook config projects half a megabit") {
    const OutlookParams p = load_outlook(kScenarioDir / "outlook.scn");
    const OutlookResult r = project_outlook(p);
    CHECK(r.secure_rate_hz == doctest::Approx(492'505.0).epsilon(2e-3));
    CHECK_FALSE(format_outlook(p, r).empty());
}

TEST_CASE("table rows label scheme and filtering") {
    CHECK(table_scenario_files().size() == 6);

    Scenario s = load_scenario(kScenarioDir / "asym-2km.scn");
    s.duration_s = 2.0;
    const ScenarioResult r = run_scenario(s);
    const TableRow row = table_row(s, r);
    CHECK(row.scheme == "Asymmetric");
    CHECK(row.length_a_km == doctest::Approx(2.0));
    CHECK(row.length_b_km == doctest::Approx(0.0));
    CHECK(row.filtering == "None");
    CHECK(row.loss_db == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(row.visibility_pct == doctest::Approx(100.0 * r.visibility.visibility));
    CHECK(row.coincidence_rate_hz == doctest::Approx(static_cast<double>(r.coincidences) / 2.0));

    const std::string text = format_table({row});
    CHECK(text.find("scheme") != std::string::npos);
    CHECK(text.find("Asymmetric") != std::string::npos);
}

} // TEST_SUITE
