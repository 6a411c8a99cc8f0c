#include "doctest.h"

#include "qlink/coinc/histogram.hpp"
#include "qlink/coinc/offset.hpp"
#include "qlink/coinc/pairing.hpp"
#include "qlink/coinc/peaks.hpp"
#include "qlink/sim/philox.hpp"

#include <cmath>

using namespace qlink;
using namespace qlink::coinc;

namespace {

TagStream comb(TimePs start, TimePs step, int n, std::uint8_t ch = 0) {
    TagStream s;
    for (int i = 0; i < n; ++i)
        s.push_back({start + step * i, ch});
    return s;
}

} // namespace

TEST_SUITE("coinc") {

TEST_CASE("offset search recovers a pure time shift") {
    sim::SequenceRng rng(17, 0);
    TagStream a;
    TimePs t = 0;
    for (int i = 0; i < 4000; ++i) {
        t += static_cast<TimePs>(1000 + rng.uniform() * 9'000'000);
        a.push_back({t, 0});
    }
    for (TimePs shift : {TimePs{0}, TimePs{123'000}, TimePs{-987'000}, TimePs{999'000}}) {
        TagStream b;
        for (const TimeTag& tag : a)
            b.push_back({tag.time + shift, 1});
        const TimePs found = find_offset(a, b, 1'000'000, 1000);
        CHECK(std::llabs(found - shift) <= 1000);
    }
}

TEST_CASE("offset ties break toward zero") {
    // A periodic comb correlated with itself peaks uniquely at zero (the
    // +-period shifts lose the edge tags), so zero must win.
    const TagStream a = comb(0, 10'000, 200);
    CHECK(find_offset(a, a, 50'000, 1000) == 0);

    // Exact two-sided tie: every Alice tag has partners at -10k and +10k,
    // spaced so no other shift correlates. Equal counts, equal magnitude:
    // the deterministic rule picks the negative one.
    const TagStream wide = comb(0, 100'000, 300);
    TagStream both;
    for (const TimeTag& t : wide) {
        both.push_back({t.time - 10'000, 0});
        both.push_back({t.time + 10'000, 0});
    }
    CHECK(find_offset(wide, both, 50'000, 1000) == -10'000);

    // Break the tie by one extra coincidence on the positive side.
    both.push_back({wide.back().time + 100'000 + 10'000, 0});
    TagStream wider = wide;
    wider.push_back({wide.back().time + 100'000, 0});
    CHECK(find_offset(wider, both, 50'000, 1000) == 10'000);
}

TEST_CASE("offset search validates and reports missing peaks") {
    const TagStream a = comb(0, 1000, 100);
    CHECK_THROWS_AS(find_offset(a, a, 10'000, 0), BadBinning);
    CHECK_THROWS_AS(find_offset(a, a, 500, 1000), BadBinning);
    CHECK_THROWS_AS(find_offset({}, a, 10'000, 1000), NoPeak);
    CHECK_THROWS_AS(find_offset(a, {}, 10'000, 1000), NoPeak);

    // Sparse unrelated streams: no bin clears the background test.
    sim::SequenceRng ra(5, 0), rb(6, 1);
    TagStream ua, ub;
    TimePs ta = 0, tb = 0;
    for (int i = 0; i < 2000; ++i) {
        ta += static_cast<TimePs>(1000 + ra.uniform() * 2'000'000);
        tb += static_cast<TimePs>(1000 + rb.uniform() * 2'000'000);
        ua.push_back({ta, 0});
        ub.push_back({tb, 0});
    }
    CHECK_THROWS_AS(find_offset(ua, ub, 100'000, 1000), NoPeak);
}

TEST_CASE("histogram bins differences by hand") {
    const TagStream a = {{1000, 0}};
    const TagStream b = {{900, 1}, {1000, 1}, {1049, 1}, {1050, 1}, {1149, 1}, {1150, 1}};
    // d = -100, 0, 49, 50, 149, 150; bins of 50 on [-150, 150).
    const Histogram h = build_histogram(a, b, 0, 150, 50);
    REQUIRE(h.counts.size() == 6);
    CHECK(h.origin_ps == -150);
    CHECK(h.counts[0] == 0); // [-150, -100)
    CHECK(h.counts[1] == 1); // [-100, -50): d=-100
    CHECK(h.counts[2] == 0); // [-50, 0)
    CHECK(h.counts[3] == 2); // [0, 50): d=0, 49
    CHECK(h.counts[4] == 1); // [50, 100): d=50
    CHECK(h.counts[5] == 1); // [100, 150): d=149; d=150 out of range
    CHECK(h.total() == 5);
    CHECK(h.bin_center(3) == doctest::Approx(25.0));

    CHECK_THROWS_AS(build_histogram(a, b, 0, 150, 0), BadBinning);
    CHECK_THROWS_AS(build_histogram(a, b, 0, 150, 70), BadBinning);
    CHECK_THROWS_AS(build_histogram(a, b, 0, 0, 50), BadBinning);
}

TEST_CASE("histogram window is offset-centered") {
    const TagStream a = {{0, 0}};
    const TagStream b = {{5'000, 0}, {5'990, 0}, {6'010, 0}};
    const Histogram h = build_histogram(a, b, 6'000, 20, 10);
    REQUIRE(h.counts.size() == 4);
    CHECK(h.origin_ps == 5'980);
    CHECK(h.counts[1] == 1); // d=5990
    CHECK(h.counts[3] == 1); // d=6010
    CHECK(h.total() == 2);   // d=5000 far outside
}

TEST_CASE("peak detection finds centroids and merges neighbors") {
    Histogram h;
    h.origin_ps = 0;
    h.bin_width_ps = 10;
    h.counts = {2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1};
    // Flat-ish background of median 1.5 -> background 1 or 2 by integer median.
    h.counts[5] = 100;
    h.counts[6] = 300; // adjacent: merges with bin 5
    h.counts[12] = 50; // gap of 5 bins: separate peak

    const auto peaks = detect_peaks(h, 5.0);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].center_ps < peaks[1].center_ps);

    // Centroid of the merged cluster, weighted by excess over background.
    const double bg = 2.0; // median of the modified counts
    const double w5 = 100.0 - bg, w6 = 300.0 - bg;
    const double want = (w5 * h.bin_center(5) + w6 * h.bin_center(6)) / (w5 + w6);
    CHECK(peaks[0].center_ps == doctest::Approx(want).epsilon(1e-3));
    CHECK(peaks[0].weight == doctest::Approx(w5 + w6).epsilon(1e-3));
    CHECK(peaks[1].center_ps == doctest::Approx(h.bin_center(12)).epsilon(1e-6));

    // Only directly adjacent hot bins merge; one cold bin in between splits.
    Histogram g = h;
    g.counts[12] = 1;
    g.counts[7] = 120; // 5,6,7 contiguous: one cluster
    CHECK(detect_peaks(g, 5.0).size() == 1);
    g.counts[7] = 1;
    g.counts[8] = 120; // gap at 7: two clusters
    CHECK(detect_peaks(g, 5.0).size() == 2);

    // Nothing above threshold: silence.
    Histogram flat;
    flat.origin_ps = 0;
    flat.bin_width_ps = 10;
    flat.counts.assign(50, 3);
    CHECK(detect_peaks(flat, 5.0).empty());
}

TEST_CASE("greedy pairing matches nearest residuals once") {
    // Alice at 0 and 100; Bob at 30 and 90. Candidates within window 200:
    // residuals (0,30)=30 (0,90)=90 (100,30)=-70 (100,90)=-10.
    const TagStream a = {{0, 0}, {100, 1}};
    const TagStream b = {{30, 2}, {90, 3}};
    const auto got = pair_coincidences(a, b, 0, 200);
    REQUIRE(got.size() == 2);
    // Nearest first: (100,90) then (0,30); each tag used once.
    CHECK(got[0].time_a == 0);
    CHECK(got[0].time_b == 30);
    CHECK(got[0].channel_a == 0);
    CHECK(got[0].channel_b == 2);
    CHECK(got[1].time_a == 100);
    CHECK(got[1].time_b == 90);

    // The same times with a tighter window keep only the residual-10 pair.
    const auto tight = pair_coincidences(a, b, 0, 40);
    REQUIRE(tight.size() == 1);
    CHECK(tight[0].time_a == 100);
    CHECK(tight[0].time_b == 90);
}

TEST_CASE("pairing window edges are inclusive at half width") {
    const TagStream a = {{1000, 0}};
    // Even window w=200: accept |d| <= 100 on both sides.
    CHECK(pair_coincidences(a, {{1100, 0}}, 0, 200).size() == 1);
    CHECK(pair_coincidences(a, {{900, 0}}, 0, 200).size() == 1);
    CHECK(pair_coincidences(a, {{1101, 0}}, 0, 200).empty());
    CHECK(pair_coincidences(a, {{899, 0}}, 0, 200).empty());
    // Odd window w=201 on integer times: still +-100.
    CHECK(pair_coincidences(a, {{1100, 0}}, 0, 201).size() == 1);
    CHECK(pair_coincidences(a, {{1101, 0}}, 0, 201).empty());
    // Offset shifts the window center.
    CHECK(pair_coincidences(a, {{1350, 0}}, 300, 200).size() == 1);
    CHECK(pair_coincidences(a, {{1100, 0}}, 300, 200).empty());

    CHECK_THROWS_AS(pair_coincidences(a, a, 0, 0), InvalidWindow);
    CHECK_THROWS_AS(pair_coincidences(a, a, 0, -10), InvalidWindow);
}

TEST_CASE("tie-broken pairing is deterministic by index") {
    // Two Bob tags equidistant from one Alice tag: lower index wins.
    const TagStream a = {{1000, 0}};
    const TagStream b = {{950, 0}, {1050, 1}};
    const auto got = pair_coincidences(a, b, 0, 200);
    REQUIRE(got.size() == 1);
    CHECK(got[0].time_b == 950);
}

TEST_CASE("arm split classification") {
    CHECK(classify_regime(2.0, 0.0) == Regime::Asymmetric);
    CHECK(classify_regime(0.0, 3.0) == Regime::Asymmetric);
    CHECK(classify_regime(2.0, 2.0) == Regime::Symmetric);
    CHECK(classify_regime(3.9, 2.0) == Regime::Symmetric);
    CHECK(classify_regime(4.0, 2.0) == Regime::Asymmetric);
}

} // TEST_SUITE
