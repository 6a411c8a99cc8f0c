#include "doctest.h"

#include "qlink/qkd/crossover.hpp"
#include "qlink/qkd/key_rate.hpp"
#include "qlink/qkd/sift.hpp"

#include <cmath>
#include <vector>

using namespace qlink;
using namespace qlink::qkd;

TEST_SUITE("qkd") {

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binary_entropy(0.027) == doctest::Approx(0.1791213).epsilon(1e-5));
    CHECK(binary_entropy(0.11) == doctest::Approx(binary_entropy(0.89)).epsilon(1e-12));
    CHECK_THROWS_AS(binary_entropy(-0.001), InvalidErrorRate);
    CHECK_THROWS_AS(binary_entropy(1.001), InvalidErrorRate);
}

TEST_CASE("secure rate formula on hand-computed points") {
    // E = (1 - V)/2, rate = 0.5 C max(0, 1 - (1 + f) H2(E)) with f = 1.2375.
    const auto r = secure_key_rate(3000.0, 0.880);
    CHECK(r.qber == doctest::Approx(0.060).epsilon(1e-12));
    CHECK(r.sifted_rate == doctest::Approx(1500.0).epsilon(1e-12));
    CHECK(r.secure_rate == doctest::Approx(401.0).epsilon(5e-3));

    // Below the positive-rate threshold the formula clamps at zero.
    CHECK(secure_key_rate(5200.0, 0.629).secure_rate == 0.0);
    // V = 1 is noiseless: every sifted bit is secret.
    CHECK(secure_key_rate(1000.0, 1.0).secure_rate == doctest::Approx(500.0).epsilon(1e-12));
}

TEST_CASE("secure rates track the reference operating points within five percent") {
    struct Ref {
        double coincidences_hz;
        double visibility;
        double secure_hz;
    };
    // Measured operating points used to calibrate the inefficiency factor.
    const std::vector<Ref> refs = {
        {3000.0, 0.880, 420.0}, {2700.0, 0.946, 800.0}, {430.0, 0.916, 90.0},
        {5200.0, 0.629, 0.0},   {3600.0, 0.922, 850.0}, {1950.0, 0.956, 650.0},
    };
    for (const Ref& ref : refs) {
        const double got = secure_key_rate(ref.coincidences_hz, ref.visibility).secure_rate;
        if (ref.secure_hz == 0.0)
            CHECK(got == 0.0);
        else
            CHECK(std::abs(got / ref.secure_hz - 1.0) < 0.05);
    }
}

TEST_CASE("key rate input validation") {
    CHECK_THROWS_AS(secure_key_rate(100.0, 1.2), InvalidVisibility);
    CHECK_THROWS_AS(secure_key_rate(100.0, -1.2), InvalidVisibility);
    CHECK_THROWS_AS(secure_key_rate(-1.0, 0.9), InvalidErrorRate);
    CHECK_NOTHROW(secure_key_rate(0.0, 0.9));
    CHECK_NOTHROW(secure_key_rate(100.0, -1.0)); // anti-correlated is legal
}

TEST_CASE("sifting keeps same-basis pairs and maps channels to bits") {
    CHECK(basis_of_channel(0) == Basis::Rectilinear);
    CHECK(basis_of_channel(1) == Basis::Rectilinear);
    CHECK(basis_of_channel(2) == Basis::Diagonal);
    CHECK(basis_of_channel(3) == Basis::Diagonal);
    CHECK(bit_of_channel(0) == 0);
    CHECK(bit_of_channel(1) == 1);
    CHECK(bit_of_channel(2) == 0);
    CHECK(bit_of_channel(3) == 1);

    std::vector<coinc::Coincidence> cs = {
        {0, 0, 0, 0},  // ZZ same bit
        {1, 1, 0, 1},  // ZZ different bit
        {2, 2, 2, 3},  // XX different bit
        {3, 3, 0, 2},  // ZX: dropped
        {4, 4, 3, 1},  // XZ: dropped
        {5, 5, 3, 3},  // XX same bit
    };
    const auto sifted = sift(cs);
    REQUIRE(sifted.size() == 4);
    CHECK(sifted[0].basis == Basis::Rectilinear);
    CHECK(sifted[0].bit_a == 0);
    CHECK(sifted[0].bit_b == 0);
    CHECK(sifted[1].bit_a == 0);
    CHECK(sifted[1].bit_b == 1);
    CHECK(sifted[2].basis == Basis::Diagonal);
    CHECK(sifted[3].bit_a == 1);
    CHECK(sifted[3].bit_b == 1);
}

TEST_CASE("visibility estimate counts bit disagreements") {
    std::vector<SiftedPair> pairs;
    for (int i = 0; i < 900; ++i)
        pairs.push_back({Basis::Rectilinear, 0, 0});
    for (int i = 0; i < 100; ++i)
        pairs.push_back({Basis::Diagonal, 0, 1});
    const auto est = estimate_visibility(pairs);
    CHECK(est.samples == 1000);
    CHECK(est.errors == 100);
    CHECK(est.qber == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(est.visibility == doctest::Approx(0.8).epsilon(1e-12));

    pairs.resize(99);
    CHECK_THROWS_AS(estimate_visibility(pairs), InsufficientData);
    CHECK_NOTHROW(estimate_visibility(pairs, 99));
}

TEST_CASE("wavelength crossover point") {
    // 10 log10(0.70/0.15) = 6.6901 dB of efficiency headroom, spent at
    // 3.0 - 0.22 = 2.78 dB/km: break-even at 2.4065 km, 7.2195 dB.
    const auto r = crossover_analysis(3.0, 0.22, 0.70, 0.15);
    CHECK(r.breakeven_km == doctest::Approx(2.40650).epsilon(1e-4));
    CHECK(r.breakeven_db == doctest::Approx(7.2195).epsilon(1e-4));

    // Scaling both efficiencies leaves the crossover alone.
    const auto s = crossover_analysis(3.0, 0.22, 0.35, 0.075);
    CHECK(s.breakeven_km == doctest::Approx(r.breakeven_km).epsilon(1e-12));
}

TEST_CASE("crossover rejects impossible configurations") {
    CHECK_THROWS_AS(crossover_analysis(3.0, 0.22, 0.15, 0.70), NoCrossover);
    CHECK_THROWS_AS(crossover_analysis(0.22, 3.0, 0.70, 0.15), NoCrossover);
    CHECK_THROWS_AS(crossover_analysis(3.0, 0.22, 0.70, 0.70), NoCrossover);
    CHECK_THROWS_AS(crossover_analysis(-1.0, 0.22, 0.70, 0.15), NoCrossover);
    CHECK_THROWS_AS(crossover_analysis(3.0, 0.22, 1.5, 0.15), NoCrossover);
    CHECK_THROWS_AS(crossover_analysis(3.0, 0.22, 0.70, 0.0), NoCrossover);
}

} // TEST_SUITE
