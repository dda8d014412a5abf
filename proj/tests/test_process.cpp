#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sgqgan/process.hpp"

using namespace sgqgan;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

template <class M>
double max_abs(const M& m) { return m.cwiseAbs().maxCoeff(); }

Mat2 random_density(std::mt19937_64& rng) {
    // mixture of two random pure states
    std::uniform_real_distribution<double> u;
    const double w = u(rng);
    return w * density(random_state(2, rng)) + (1 - w) * density(random_state(2, rng));
}

void check_chi_invariants(const ProcessMap& p) {
    const auto d = p.diagnostics();
    CHECK(d.hermiticity < 1e-10);
    CHECK(d.trace_preservation < 1e-8);
    CHECK(d.min_eigenvalue >= -1e-8);
    CHECK(p.is_valid());
}

StateLearningTask analytic_learning(std::size_t k, std::uint64_t seed) {
    StateLearningTask t{.target = polarization('H')};
    t.iterations = k;
    t.seed = seed;
    return t;
}

}  // namespace

TEST_SUITE("process-characterizer") {

TEST_CASE("pauli basis") {
    const auto& E = pauli_basis();
    CHECK(pauli_labels()[2] == "Y");
    for (std::size_t m = 0; m < 4; ++m) {
        for (std::size_t n = 0; n < 4; ++n) {
            const cplx tr = (E[m].adjoint() * E[n]).trace();
            CHECK(std::abs(tr - cplx(m == n ? 2.0 : 0.0)) < 1e-15);
        }
    }
}

TEST_CASE("identity and X processes") {
    const ProcessMap id;
    std::mt19937_64 rng(1);
    const Mat2 rho = random_density(rng);
    CHECK(max_abs(apply_process(id, rho) - rho) < 1e-15);

    Mat4 chi = Mat4::Zero();
    chi(1, 1) = 1;
    const Mat2 out = apply_process(ProcessMap(chi), density(polarization('H')));
    CHECK(max_abs(out - density(polarization('V'))) < 1e-15);

    const auto from_id = chi_from_unitary(Mat2::Identity());
    CHECK(max_abs(from_id.chi() - id.chi()) < 1e-15);
    Mat2 x;
    x << 0, 1, 1, 0;
    CHECK(max_abs(chi_from_unitary(x).chi() - chi) < 1e-15);
}

TEST_CASE("half-wave plate at pi/8 maps H to D") {
    const Mat2 out = apply_process(chi_from_unitary(hwp(pi / 8)), density(polarization('H')));
    // oracle: U rho U^dag with the textbook matrix
    const auto h = oracle::half_wave(pi / 8);
    const oracle::Amp2 col{h[0][0], h[1][0]};
    Mat2 expected;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) expected(r, c) = col[static_cast<std::size_t>(r)] * std::conj(col[static_cast<std::size_t>(c)]);
    CHECK(max_abs(out - expected) < 1e-10);
    CHECK(max_abs(out - density(polarization('D'))) < 1e-10);
}

TEST_CASE("chi of random unitaries reproduces U rho U^dag") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const auto u = random_unitary(rng);
        const Mat2 rho = random_density(rng);
        const auto p = chi_from_unitary(u);
        const Mat2 expected = u.matrix() * rho * u.matrix().adjoint();
        const Mat2 out = apply_process(p, rho);
        CHECK(max_abs(out - expected) < 1e-9);
        CHECK(std::abs(out.trace() - cplx(1)) < 1e-10);
        CHECK(max_abs(out - out.adjoint()) < 1e-10);
        check_chi_invariants(p);
        // rank one
        const auto ev = p.diagnostics().eigenvalues;
        CHECK(std::abs(ev[0]) < 1e-9);
        CHECK(std::abs(ev[1]) < 1e-9);
        CHECK(std::abs(ev[2]) < 1e-9);
        CHECK(ev[3] == Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("invalid inputs") {
    Mat2 bad;
    bad << 1, 0, 0, 1;  // trace 2
    try {
        apply_process(ProcessMap{}, bad);
        FAIL("expected InvalidDensityMatrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidDensityMatrix);
    }
    bad << 1.5, 0, 0, -0.5;  // not PSD
    CHECK_THROWS_AS(apply_process(ProcessMap{}, bad), Error);
    bad << 0.5, 0.5, 0, 0.5;  // not Hermitian
    CHECK_THROWS_AS(apply_process(ProcessMap{}, bad), Error);

    Mat2 nu;
    nu << 1, 0, 0, 2;
    try {
        chi_from_unitary(nu);
        FAIL("expected NotUnitary");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotUnitary);
    }

    Mat4 broken = Mat4::Zero();
    broken(0, 0) = 2;
    CHECK_FALSE(ProcessMap(broken).is_valid());
}

TEST_CASE("black box queries are deterministic") {
    std::mt19937_64 rng(3);
    const BlackBoxProcess box(random_unitary(rng));
    const auto s = random_state(2, rng);
    const auto a = box.query(s);
    const auto b = box.query(s);
    CHECK(a.amps() == b.amps());
}

TEST_CASE("fitting exact outputs recovers the unitary") {
    std::mt19937_64 rng(4);
    const auto probes = default_probes();
    for (int i = 0; i < 100; ++i) {
        const auto u = random_unitary(rng);
        std::vector<PureState> outputs;
        for (const auto& p : probes) outputs.push_back(apply_unitary(u, p));
        const auto fit = fit_unitary(probes, outputs);
        CHECK(process_fidelity(fit, u) == Approx(1.0).epsilon(1e-9));
        CHECK(max_abs(fit.matrix().adjoint() * fit.matrix() - Mat2::Identity()) < 1e-8);
        CHECK(std::abs(fit.matrix().determinant() - cplx(1)) < 1e-9);
    }
}

TEST_CASE("probe requirements") {
    const BlackBoxProcess box(hwp(0.3));
    try {
        characterize(box, {polarization('H')}, analytic_learning(30, 0));
        FAIL("expected InsufficientProbes");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InsufficientProbes);
    }
    const auto H = polarization('H');
    try {
        fit_unitary({H, H, H}, {H, H, H});
        FAIL("expected InsufficientProbes");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InsufficientProbes);
    }
    CHECK_THROWS_AS(fit_unitary({H, polarization('V')}, {H}), Error);
}

TEST_CASE("identity process") {
    const BlackBoxProcess box(JonesUnitary{});
    const auto c = characterize(box, default_probes(), analytic_learning(30, 0));
    CHECK(process_fidelity(c.unitary, JonesUnitary{}) >= 0.999);
    check_chi_invariants(c.process);
}

TEST_CASE("half-wave plate at pi/8 over 100 seeds") {
    const auto truth = hwp(pi / 8);
    const BlackBoxProcess box(truth);
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto c = characterize(box, default_probes(), analytic_learning(30, seed));
        if (process_fidelity(c.unitary, truth) >= 0.99) ++good;
        check_chi_invariants(c.process);
        CHECK(max_abs(c.unitary.matrix().adjoint() * c.unitary.matrix() - Mat2::Identity()) < 1e-8);
    }
    MESSAGE("seeds reaching 0.99: " << good);
    CHECK(good >= 90);
}

TEST_CASE("characterization is blind to a global phase") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
        const auto u = random_unitary(rng);
        const JonesUnitary shifted(u.matrix() * std::polar(1.0, 0.77));
        const auto a = characterize(BlackBoxProcess(u), default_probes(), analytic_learning(30, 5));
        const auto b = characterize(BlackBoxProcess(shifted), default_probes(), analytic_learning(30, 5));
        CHECK(process_fidelity(a.unitary, b.unitary) == Approx(1.0).epsilon(1e-6));
        CHECK(process_fidelity(a.unitary, shifted) == Approx(process_fidelity(a.unitary, u)).epsilon(1e-12));
    }
}

TEST_CASE("wave plate specs") {
    CHECK(process_fidelity(parse_waveplates("hwp:22.5"), hwp(pi / 8)) == Approx(1.0).epsilon(1e-12));
    const auto combo = parse_waveplates(" hwp:10 , qwp:45 ");
    const Mat2 expected = qwp(pi / 4).matrix() * hwp(10 * pi / 180).matrix();
    CHECK(max_abs(combo.matrix() - expected) < 1e-12);
    for (const char* bad : {"hwp", "hwp:x", "lens:5", "hwp:1,,qwp:2", "hwp:5deg"}) {
        try {
            parse_waveplates(bad);
            FAIL("expected ParseError for " << bad);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ParseError);
        }
    }
}

TEST_CASE("chi json round trip") {
    std::mt19937_64 rng(10);
    const auto p = chi_from_unitary(random_unitary(rng));
    const auto j = chi_to_json(p);
    CHECK(j.at("basis") == nlohmann::json({"I", "X", "Y", "Z"}));
    CHECK(j.at("chi").size() == 16);
    const auto back = chi_from_json(nlohmann::json::parse(j.dump()));
    CHECK(max_abs(back.chi() - p.chi()) == 0.0);
    CHECK_THROWS_AS(chi_from_json(nlohmann::json{{"chi", {1, 2}}}), Error);
}

}  // TEST_SUITE
