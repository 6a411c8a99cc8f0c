#include "CLI11.hpp"

#include "qlink/qkd/crossover.hpp"
#include "qlink/scenario/drift_run.hpp"
#include "qlink/scenario/outlook.hpp"
#include "qlink/scenario/runner.hpp"
#include "qlink/scenario/sweep.hpp"
#include "qlink/scenario/table.hpp"
#include "qlink/tagio/sync.hpp"
#include "qlink/tagio/tag_file.hpp"

#include <cstdio>
#include <iostream>

namespace {

using namespace qlink;

int cmd_simulate(const std::string& config, const std::string& out_dir,
                 const std::string& tags_dir) {
    const scenario::Scenario s = scenario::load_scenario(config);
    const sim::LinkResult sim = sim::simulate_link(scenario::build_link(s));
    const scenario::ScenarioResult r = scenario::analyze_tags(s, sim.alice, sim.bob);

    scenario::write_bundle(out_dir.empty() ? s.name : out_dir, s, r);
    if (!tags_dir.empty()) {
        std::filesystem::create_directories(tags_dir);
        tagio::write_tag_file(std::filesystem::path(tags_dir) / "alice.qtag",
                              {1, tagio::Party::Alice, sim.alice});
        tagio::write_tag_file(std::filesystem::path(tags_dir) / "bob.qtag",
                              {1, tagio::Party::Bob, sim.bob});
    }
    std::cout << scenario::format_summary(s, r);
    return 0;
}

int cmd_analyze(const std::string& path_a, const std::string& path_b, TimePs window_ps,
                TimePs search_ps) {
    const tagio::TagFile a = tagio::read_tag_file(path_a);
    const tagio::TagFile b = tagio::read_tag_file(path_b);

    scenario::Scenario s;
    s.name = "analyze";
    s.filters.temporal_window_ps = window_ps;
    s.analysis.offset_search_ps = search_ps;
    if (s.analysis.wide_window_ps < window_ps)
        s.analysis.wide_window_ps = window_ps;
    TimePs span = 1;
    if (!a.tags.empty())
        span = std::max(span, a.tags.back().time - a.tags.front().time);
    if (!b.tags.empty())
        span = std::max(span, b.tags.back().time - b.tags.front().time);
    s.duration_s = static_cast<double>(span) * 1e-12;

    const scenario::ScenarioResult r = scenario::analyze_tags(s, a.tags, b.tags);
    std::cout << scenario::format_summary(s, r);
    return 0;
}

int cmd_sweep(const std::string& config, const std::vector<double>& lengths) {
    const scenario::Scenario base = scenario::load_scenario(config);
    std::cout << scenario::format_sweep(scenario::run_sweep(base, lengths));
    return 0;
}

int cmd_drift(const std::string& config) {
    const scenario::Scenario s = scenario::load_scenario(config);
    std::cout << scenario::format_drift(scenario::run_drift(s, s.analysis.segment_s));
    return 0;
}

int cmd_table1(const std::string& dir) {
    std::cout << scenario::format_table(scenario::report_table(dir));
    return 0;
}

int cmd_outlook(const std::string& config) {
    const scenario::OutlookParams p = scenario::load_outlook(config);
    std::cout << scenario::format_outlook(p, scenario::project_outlook(p));
    return 0;
}

int cmd_crossover(double loss810, double loss1550, double eff_short, double eff_long) {
    const auto r = qkd::crossover_analysis(loss810, loss1550, eff_short, eff_long);
    char buf[128];
    std::snprintf(buf, sizeof buf, "breakeven_km\tbreakeven_db\n%.6g\t%.6g\n", r.breakeven_km,
                  r.breakeven_db);
    std::cout << buf;
    return 0;
}

int cmd_sync(const std::string& tag_path, const std::string& role_name,
             const std::string& listen, const std::string& connect) {
    const tagio::TagFile file = tagio::read_tag_file(tag_path);
    const tagio::Role role = role_name == "alice" ? tagio::Role::Alice : tagio::Role::Bob;

    std::unique_ptr<tagio::Transport> transport;
    if (!listen.empty()) {
        transport = tagio::tcp_listen_accept(static_cast<std::uint16_t>(std::stoi(listen)));
    } else {
        const auto colon = connect.rfind(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--connect expects host:port");
        transport = tagio::tcp_connect(connect.substr(0, colon),
                                       static_cast<std::uint16_t>(
                                           std::stoi(connect.substr(colon + 1))));
    }

    tagio::SyncParams params;
    params.resolution_ps = file.resolution_ps;
    const TimePs offset = tagio::run_sync(role, file.tags, *transport, params);
    std::cout << "offset_ps\t" << offset << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entangled-pair fiber link simulator and time-tag toolkit"};
    app.require_subcommand(1);

    std::string config, out_dir, tags_dir;
    auto* simulate = app.add_subcommand("simulate", "Run a scenario config end to end");
    simulate->add_option("config", config, "Scenario file")->required();
    simulate->add_option("--out", out_dir, "Artifact directory (default: scenario name)");
    simulate->add_option("--save-tags", tags_dir, "Also write alice.qtag/bob.qtag here");

    std::string tag_a, tag_b;
    TimePs window_ps = 2'000, search_ps = 35'000'000;
    auto* analyze = app.add_subcommand("analyze", "Offline coincidence analysis of two tag files");
    analyze->add_option("tagfileA", tag_a, "Alice's tag file")->required();
    analyze->add_option("tagfileB", tag_b, "Bob's tag file")->required();
    analyze->add_option("--window", window_ps, "Coincidence window, ps");
    analyze->add_option("--offset-search", search_ps, "Offset search half-range, ps");

    std::string sweep_config;
    std::vector<double> lengths;
    auto* sweep = app.add_subcommand("sweep", "Re-run a base scenario across fiber lengths");
    sweep->add_option("config", sweep_config, "Base scenario file")->required();
    sweep->add_option("--lengths", lengths, "Arm A lengths, km")->required()->expected(-1);

    std::string drift_config;
    auto* drift = app.add_subcommand("drift", "Segmented analysis of a drifting link");
    drift->add_option("config", drift_config, "Scenario file with a drift block")->required();

    std::string table_dir = "scenarios";
    auto* table1 = app.add_subcommand("table1", "Distribution summary over the bundled scenarios");
    table1->add_option("--dir", table_dir, "Directory holding the bundled scenario files");

    std::string outlook_config = "scenarios/outlook.scn";
    auto* outlook = app.add_subcommand("outlook", "Analytic bright-source projection");
    outlook->add_option("config", outlook_config, "Projection config file");

    double loss810 = 3.0, loss1550 = 0.22, eff_short = 0.70, eff_long = 0.15;
    auto* crossover = app.add_subcommand("crossover",
                                         "Wavelength break-even distance for the detector trade");
    crossover->add_option("--loss810", loss810, "810 nm fiber loss, dB/km");
    crossover->add_option("--loss1550", loss1550, "1550 nm fiber loss, dB/km");
    crossover->add_option("--eff-short", eff_short, "Detector efficiency at 810 nm");
    crossover->add_option("--eff-long", eff_long, "Detector efficiency at 1550 nm");

    std::string sync_tags, role_name, listen, connect;
    auto* sync = app.add_subcommand("sync", "Agree on a clock offset with a remote peer");
    sync->add_option("tagfile", sync_tags, "Local tag file")->required();
    sync->add_option("--role", role_name, "alice initiates, bob serves")
        ->required()
        ->check(CLI::IsMember({"alice", "bob"}));
    auto* listen_opt = sync->add_option("--listen", listen, "Listen on this TCP port");
    sync->add_option("--connect", connect, "Connect to host:port")->excludes(listen_opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed())
            return cmd_simulate(config, out_dir, tags_dir);
        if (analyze->parsed())
            return cmd_analyze(tag_a, tag_b, window_ps, search_ps);
        if (sweep->parsed())
            return cmd_sweep(sweep_config, lengths);
        if (drift->parsed())
            return cmd_drift(drift_config);
        if (table1->parsed())
            return cmd_table1(table_dir);
        if (outlook->parsed())
            return cmd_outlook(outlook_config);
        if (crossover->parsed())
            return cmd_crossover(loss810, loss1550, eff_short, eff_long);
        if (sync->parsed()) {
            if (listen.empty() == connect.empty())
                throw CLI::ValidationError("sync needs exactly one of --listen or --connect");
            return cmd_sync(sync_tags, role_name, listen, connect);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const qlink::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
