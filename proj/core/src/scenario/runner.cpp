#include "qlink/scenario/runner.hpp"

#include "qlink/coinc/offset.hpp"
#include "qlink/coinc/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace qlink::scenario {
namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

bool wants(const Scenario& s, const char* artifact) {
    if (s.outputs.empty())
        return true;
    return std::find(s.outputs.begin(), s.outputs.end(), artifact) != s.outputs.end();
}

} // namespace

ScenarioResult analyze_tags(const Scenario& s, const TagStream& a, const TagStream& b) {
    ScenarioResult r;
    r.duration_s = s.duration_s;
    r.singles_a_hz = static_cast<double>(a.size()) / s.duration_s;
    r.singles_b_hz = static_cast<double>(b.size()) / s.duration_s;

    const TimePs coarse =
        coinc::find_offset(a, b, s.analysis.offset_search_ps, s.analysis.bin_width_ps);
    r.histogram =
        coinc::build_histogram(a, b, coarse, s.analysis.half_range_ps, s.analysis.bin_width_ps);
    r.peaks = coinc::detect_peaks(r.histogram, s.analysis.peak_threshold_sigma);

    // Center the coincidence window on the dominant peak rather than the
    // bin-quantized correlation maximum.
    r.offset_ps = coarse;
    double best = std::numeric_limits<double>::max();
    for (const auto& p : r.peaks) {
        const double miss = std::abs(p.center_ps - static_cast<double>(coarse));
        if (miss < best) {
            best = miss;
            r.offset_ps = static_cast<TimePs>(std::llround(p.center_ps));
        }
    }

    const TimePs window = applied_window_ps(s);
    const auto pairs = coinc::pair_coincidences(a, b, r.offset_ps, window);
    r.coincidences = pairs.size();
    if (window == s.analysis.wide_window_ps) {
        r.coincidences_wide = r.coincidences;
    } else {
        r.coincidences_wide =
            coinc::pair_coincidences(a, b, r.offset_ps, s.analysis.wide_window_ps).size();
    }
    if (s.filters.temporal_window_ps && r.coincidences > 0 && r.coincidences_wide > 0)
        r.temporal_loss_db = -10.0 * std::log10(static_cast<double>(r.coincidences) /
                                                static_cast<double>(r.coincidences_wide));

    const auto sifted = qkd::sift(pairs);
    r.visibility = qkd::estimate_visibility(sifted);
    r.key_rate = qkd::secure_key_rate(static_cast<double>(r.coincidences) / s.duration_s,
                                      r.visibility.visibility);
    return r;
}

ScenarioResult run_scenario(const Scenario& s) {
    const sim::LinkResult sim = sim::simulate_link(build_link(s));
    return analyze_tags(s, sim.alice, sim.bob);
}

std::string format_summary(const Scenario& s, const ScenarioResult& r) {
    std::string out =
        "scenario\toffset_ps\tcoincidences\tcoincidence_rate_hz\tvisibility\tqber\t"
        "sifted_rate_hz\tsecure_rate_hz\tsingles_a_hz\tsingles_b_hz\ttemporal_loss_db\tpeaks\n";
    out += s.name;
    out += '\t';
    out += std::to_string(r.offset_ps);
    out += '\t';
    out += std::to_string(r.coincidences);
    out += '\t';
    out += fmt(r.key_rate.coincidence_rate);
    out += '\t';
    out += fmt(r.visibility.visibility);
    out += '\t';
    out += fmt(r.visibility.qber);
    out += '\t';
    out += fmt(r.key_rate.sifted_rate);
    out += '\t';
    out += fmt(r.key_rate.secure_rate);
    out += '\t';
    out += fmt(r.singles_a_hz);
    out += '\t';
    out += fmt(r.singles_b_hz);
    out += '\t';
    out += fmt(r.temporal_loss_db);
    out += '\t';
    out += std::to_string(r.peaks.size());
    out += '\n';
    return out;
}

void write_bundle(const std::filesystem::path& dir, const Scenario& s, const ScenarioResult& r) {
    std::filesystem::create_directories(dir);
    if (wants(s, "summary")) {
        std::ofstream out(dir / "summary.tsv");
        out << format_summary(s, r);
    }
    if (wants(s, "histogram")) {
        std::ofstream out(dir / "histogram.tsv");
        out << "bin_center_ps\tcount\n";
        for (std::size_t k = 0; k < r.histogram.counts.size(); ++k)
            out << fmt(r.histogram.bin_center(k)) << '\t' << r.histogram.counts[k] << '\n';
    }
    if (wants(s, "peaks")) {
        std::ofstream out(dir / "peaks.tsv");
        out << "center_ps\tweight\n";
        for (const auto& p : r.peaks)
            out << fmt(p.center_ps) << '\t' << fmt(p.weight) << '\n';
    }
}

} // namespace qlink::scenario
