#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sgqgan/interference.hpp"

using namespace sgqgan;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

PhaseScene random_scene(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0), ang(-pi, pi);
    PhaseScene s;
    double total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        s.weights.push_back(u(rng) + 1e-3);
        total += s.weights.back();
        s.psi.push_back(ang(rng));
        s.phi.push_back(ang(rng));
    }
    for (auto& w : s.weights) w /= total;
    s.sigma = 3 * u(rng);
    return s;
}

double sample_variance(const std::vector<double>& xs) {
    double m = 0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double v = 0;
    for (double x : xs) v += (x - m) * (x - m);
    return v / static_cast<double>(xs.size() - 1);
}

PureState state_with_overlap(double f) {
    return normalize({std::sqrt(f), std::sqrt(1 - f)});
}

}  // namespace

TEST_SUITE("interference") {

TEST_CASE("dip probability") {
    CHECK(coincidence_prob_dip(1.0) == 0.0);
    CHECK(coincidence_prob_dip(0.0) == 0.5);
    CHECK(coincidence_prob_dip(0.81) == Approx(0.095).epsilon(1e-15));
    for (double f : {-0.01, 1.01, std::nan("")}) {
        try {
            coincidence_prob_dip(f);
            FAIL("expected DomainError");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DomainError);
        }
    }
    double prev = 1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double f = i / 1000.0;
        const double p = coincidence_prob_dip(f);
        CHECK(p + f / 2 == 0.5);
        CHECK(p <= prev);
        prev = p;
    }
}

TEST_CASE("analytic overlap measurement") {
    HomMeasurementModel model;
    const auto H = polarization('H');
    CHECK(model.measure_overlap(H, H).value == 1.0);
    CHECK(model.measure_overlap(H, polarization('V')).value == 0.0);
    CHECK(model.measure_overlap(H, polarization('D')).value == Approx(0.5));
    CHECK_THROWS_AS(model.measure_overlap(H, PureState::basis(3, 0)), Error);
}

TEST_CASE("sampled overlap concentrates at N = 1e6") {
    HomModelConfig cfg;
    cfg.mode = MeasurementMode::Sampled;
    cfg.pairs_per_setting = 1'000'000;
    cfg.rng_seed = 2024;
    HomMeasurementModel model(cfg);
    const auto truth = polarization('H');
    const auto probe = state_with_overlap(0.5);
    int inside = 0;
    for (int r = 0; r < 1000; ++r) {
        const double f = model.measure_overlap(truth, probe).value;
        if (f >= 0.495 && f <= 0.505) ++inside;
    }
    CHECK(inside >= 990);
}

TEST_CASE("sampled estimates stay in [0, 1] and records are consistent") {
    HomModelConfig cfg;
    cfg.mode = MeasurementMode::Sampled;
    cfg.pairs_per_setting = 20;
    cfg.background_rate = 5;
    cfg.rng_seed = 1;
    HomMeasurementModel model(cfg);
    model.set_recording(true);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
        const auto m = model.measure_overlap(random_state(2, rng), random_state(2, rng));
        CHECK(m.value >= 0.0);
        CHECK(m.value <= 1.0);
        CHECK(m.record.counts_baseline > 0);
        const double raw = 1.0 - static_cast<double>(m.record.counts_dip) / static_cast<double>(m.record.counts_baseline);
        CHECK(m.value == std::clamp(raw, 0.0, 1.0));
        CHECK(m.record.estimated_overlap == m.value);
    }
    REQUIRE(model.records().size() == 500);
    for (std::size_t i = 0; i < 500; ++i) CHECK(model.records()[i].setting_id == i);
}

TEST_CASE("variance shrinks with the pair budget") {
    const auto truth = polarization('H');
    const auto probe = state_with_overlap(0.7);
    std::vector<double> variances;
    for (std::uint64_t n : {100u, 1000u, 10000u}) {
        HomModelConfig cfg;
        cfg.mode = MeasurementMode::Sampled;
        cfg.pairs_per_setting = n;
        cfg.rng_seed = 77;
        HomMeasurementModel model(cfg);
        std::vector<double> xs;
        for (int r = 0; r < 2000; ++r) xs.push_back(model.measure_overlap(truth, probe).value);
        variances.push_back(sample_variance(xs));
    }
    CHECK(variances[1] < variances[0]);
    CHECK(variances[2] < variances[1]);
}

TEST_CASE("degenerate baseline") {
    HomModelConfig cfg;
    cfg.mode = MeasurementMode::Sampled;
    cfg.pairs_per_setting = 1;
    cfg.rng_seed = 0;
    HomMeasurementModel model(cfg);
    // With one pair the baseline is zero half of the time; both draws
    // fail with probability 1/4, so 200 settings hit it almost surely.
    int degenerate = 0;
    for (int i = 0; i < 200; ++i) {
        try {
            model.measure_overlap(polarization('H'), polarization('D'));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DegenerateBaseline);
            ++degenerate;
        }
    }
    CHECK(degenerate > 0);
    CHECK(degenerate < 200);
}

TEST_CASE("invalid model configuration") {
    HomModelConfig cfg;
    cfg.mode = MeasurementMode::Sampled;
    cfg.pairs_per_setting = 0;
    CHECK_THROWS_AS(HomMeasurementModel{cfg}, Error);
    cfg.pairs_per_setting = 10;
    cfg.background_rate = -1;
    CHECK_THROWS_AS(HomMeasurementModel{cfg}, Error);
}

TEST_CASE("same seed gives identical records") {
    HomModelConfig cfg;
    cfg.mode = MeasurementMode::Sampled;
    cfg.background_rate = 3;
    cfg.rng_seed = 9;
    auto run = [&] {
        HomMeasurementModel model(cfg);
        model.set_recording(true);
        std::mt19937_64 rng(12);
        for (int i = 0; i < 100; ++i) model.measure_overlap(random_state(2, rng), random_state(2, rng));
        std::ostringstream os;
        write_records_csv(os, model.records());
        return std::pair{model.records(), os.str()};
    };
    const auto a = run();
    const auto b = run();
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(a.second.rfind("setting_id,counts_dip,counts_baseline,estimated_overlap\n", 0) == 0);
}

TEST_CASE("multiphase probability limits") {
    PhaseScene s;
    s.weights = {0.2, 0.3, 0.5};
    s.psi = {0.1, -2.0, 3.0};
    s.phi = s.psi;
    CHECK(coincidence_prob_multiphase(s, 0.0) == 0.0);
    s.phi = {1.0, 2.0, -0.5};
    CHECK(coincidence_prob_multiphase(s, 1e6) == 0.5);

    PhaseScene one;
    one.weights = {1.0};
    one.psi = {pi};
    one.phi = {0.0};
    CHECK(coincidence_prob_multiphase(one, 0.0) == 1.0);

    PhaseScene two;
    two.weights = {0.5, 0.5};
    two.psi = {pi, 0.0};
    two.phi = {0.0, 0.0};
    HomMeasurementModel model;
    CHECK(model.measure_multiphase(two).value == Approx(0.5).epsilon(1e-15));
    two.phi = two.psi;
    CHECK(model.measure_multiphase(two).value == 0.0);
}

TEST_CASE("multiphase probability matches brute force on random scenes") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> tau(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_scene(rng, 1 + static_cast<std::size_t>(i % 40));
        const double t = tau(rng);
        const double p = coincidence_prob_multiphase(s, t);
        CHECK(std::abs(p - oracle::coincidence_sum(s.weights, s.psi, s.phi, s.sigma, t)) < 1e-12);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);

        // even and 2 pi periodic in each phase difference
        auto mirrored = s;
        for (std::size_t k = 0; k < s.size(); ++k) mirrored.phi[k] = 2 * s.psi[k] - s.phi[k];
        CHECK(std::abs(coincidence_prob_multiphase(mirrored, t) - p) < 1e-12);
        auto shifted = s;
        shifted.phi[0] += 2 * pi;
        CHECK(std::abs(coincidence_prob_multiphase(shifted, t) - p) < 1e-12);
    }
}

TEST_CASE("multiphase scene validation") {
    PhaseScene s;
    s.weights = {0.5, 0.6};
    s.psi = {0, 0};
    s.phi = {0, 0};
    try {
        coincidence_prob_multiphase(s, 0);
        FAIL("expected InvalidAmplitudes");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidAmplitudes);
    }
    s.weights = {1.5, -0.5};
    CHECK_THROWS_AS(coincidence_prob_multiphase(s, 0), Error);
    s.weights = {0.5, 0.5};
    s.phi = {0};
    try {
        coincidence_prob_multiphase(s, 0);
        FAIL("expected LengthMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::LengthMismatch);
    }
    s.phi = {0, 0};
    s.frequencies = std::vector<BinFrequencies>{{1, 2, 3}, {2, 2, 5}};
    try {
        s.validate();
        FAIL("expected DomainError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DomainError);
    }
    s.frequencies = std::vector<BinFrequencies>{{1, 2, 3}, {2, 2, 4}};
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("sampled multiphase mean") {
    PhaseScene s;
    s.weights = {1.0};
    s.psi = {std::acos(0.5)};  // (1 - cos)/2 = 0.25
    s.phi = {0.0};
    REQUIRE(coincidence_prob_multiphase(s, 0) == Approx(0.25).epsilon(1e-14));
    HomModelConfig cfg;
    cfg.mode = MeasurementMode::Sampled;
    cfg.pairs_per_setting = 100'000;
    cfg.rng_seed = 5;
    HomMeasurementModel model(cfg);
    double mean = 0;
    for (int r = 0; r < 100; ++r) mean += model.measure_multiphase(s).value;
    mean /= 100;
    CHECK(std::abs(mean - 0.25) < 0.01);
}

TEST_CASE("phase wrapping") {
    CHECK(wrap_phase(3.3) == Approx(-2.9831853071795864).epsilon(1e-15));
    CHECK(wrap_phase(pi) == pi);
    CHECK(wrap_phase(-pi) == pi);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> x(-50, 50);
    for (int i = 0; i < 1000; ++i) {
        const double v = x(rng);
        const double w = wrap_phase(v);
        CHECK(w > -pi);
        CHECK(w <= pi);
        CHECK(std::abs(w - oracle::wrapped(v)) < 1e-12);
        CHECK(std::abs(std::cos(w) - std::cos(v)) < 1e-12);
    }
}

TEST_CASE("uniform scenes") {
    std::mt19937_64 a(42), b(42);
    const auto s10 = uniform_scene(10, 1.0, a);
    double total = 0;
    for (double w : s10.weights) total += w;
    CHECK(total == Approx(1.0).epsilon(1e-15));
    CHECK(s10.psi == uniform_scene(10, 1.0, b).psi);
    const auto s100 = uniform_scene(100, 1.0, a);
    REQUIRE(s100.psi.size() == 100);
    for (std::size_t k = 0; k < 100; ++k) {
        CHECK(s100.psi[k] > -pi);
        CHECK(s100.psi[k] <= pi);
        CHECK(s100.phi[k] == 0.0);
    }
    CHECK_THROWS_AS(uniform_scene(0, 1.0, a), Error);
}

}  // TEST_SUITE
