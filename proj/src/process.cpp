#include "sgqgan/process.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "sgqgan/parallel.hpp"

namespace sgqgan {

namespace {

constexpr double kDensityTol = 1e-10;
constexpr double kProbeRankTol = 1e-9;

using Eigen::Index;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

const std::array<Mat2, 4>& pauli_basis() {
    static const std::array<Mat2, 4> basis = [] {
        std::array<Mat2, 4> b;
        b[0] << 1, 0, 0, 1;
        b[1] << 0, 1, 1, 0;
        b[2] << 0, cplx(0, -1), cplx(0, 1), 0;
        b[3] << 1, 0, 0, -1;
        return b;
    }();
    return basis;
}

const std::array<std::string, 4>& pauli_labels() {
    static const std::array<std::string, 4> labels = {"I", "X", "Y", "Z"};
    return labels;
}

ChiDiagnostics ProcessMap::diagnostics() const {
    ChiDiagnostics d;
    d.hermiticity = (chi_ - chi_.adjoint()).cwiseAbs().maxCoeff();
    const auto& e = pauli_basis();
    Mat2 sum = Mat2::Zero();
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) sum += chi_(m, n) * e[n].adjoint() * e[m];
    d.trace_preservation = (sum - Mat2::Identity()).cwiseAbs().maxCoeff();
    const Mat4 herm = (chi_ + chi_.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat4> solver(herm, Eigen::EigenvaluesOnly);
    for (int i = 0; i < 4; ++i) d.eigenvalues[i] = solver.eigenvalues()[i];
    d.min_eigenvalue = d.eigenvalues[0];
    return d;
}

bool ProcessMap::is_valid() const {
    const auto d = diagnostics();
    return d.hermiticity <= 1e-10 && d.trace_preservation <= 1e-8 && d.min_eigenvalue >= -1e-8;
}

Mat2 density(const PureState& s) {
    if (s.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "density() expects a qubit state");
    return s.amps() * s.amps().adjoint();
}

Mat2 apply_process(const ProcessMap& p, const Mat2& rho) {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const cplx tr = rho.trace();
    Eigen::SelfAdjointEigenSolver<Mat2> solver((rho + rho.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    if (herm > kDensityTol || std::abs(tr - 1.0) > kDensityTol || solver.eigenvalues()[0] < -kDensityTol) {
        throw Error(ErrorKind::InvalidDensityMatrix,
                    fmt::format("rho is not a density matrix (hermiticity {:.3g}, trace {}{:+}i, min eigenvalue {:.3g})",
                                herm, tr.real(), tr.imag(), solver.eigenvalues()[0]));
    }
    const auto& e = pauli_basis();
    Mat2 out = Mat2::Zero();
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            if (p.chi()(m, n) != cplx(0)) out += p.chi()(m, n) * e[m] * rho * e[n].adjoint();
    return out;
}

ProcessMap chi_from_unitary(const Mat2& u) {
    JonesUnitary{u};
    const auto& e = pauli_basis();
    Eigen::Vector4cd c;
    for (int m = 0; m < 4; ++m) c[m] = (e[m] * u).trace() / 2.0;
    return ProcessMap(c * c.adjoint());
}

std::vector<PureState> default_probes() { return {polarization('H'), polarization('D'), polarization('R')}; }

JonesUnitary fit_unitary(const std::vector<PureState>& probes, const std::vector<PureState>& outputs) {
    if (probes.size() != outputs.size()) {
        throw Error(ErrorKind::LengthMismatch,
                    fmt::format("{} probes but {} output states", probes.size(), outputs.size()));
    }
    Eigen::MatrixXcd span(2, static_cast<Index>(probes.size()));
    for (std::size_t j = 0; j < probes.size(); ++j) {
        if (probes[j].dim() != 2 || outputs[j].dim() != 2) {
            throw Error(ErrorKind::DimensionMismatch, "process characterization is defined for qubits");
        }
        span.col(static_cast<Index>(j)) = probes[j].amps();
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> probe_svd(span);
    const auto& sv = probe_svd.singularValues();
    if (sv.size() < 2 || sv[1] <= kProbeRankTol) {
        throw Error(ErrorKind::InsufficientProbes, "need at least two linearly independent probe states");
    }

    // Column-major vec(U): (p^T kron P_perp) vec(U) = P_perp U p.
    Eigen::MatrixXcd system(2 * static_cast<Index>(probes.size()), 4);
    for (std::size_t j = 0; j < probes.size(); ++j) {
        const CVector& p = probes[j].amps();
        const CVector& o = outputs[j].amps();
        const Mat2 perp = Mat2::Identity() - o * o.adjoint();
        const Index row = 2 * static_cast<Index>(j);
        system.block(row, 0, 2, 2) = p[0] * perp;
        system.block(row, 2, 2, 2) = p[1] * perp;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeFullV);
    const Eigen::Vector4cd v = svd.matrixV().col(3);
    Mat2 raw;
    raw << v[0], v[2], v[1], v[3];

    Eigen::JacobiSVD<Mat2> polar(raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat2 unitary = polar.matrixU() * polar.matrixV().adjoint();
    // Fix the global phase so that the estimate is canonical up to gauge.
    const cplx det = unitary.determinant();
    unitary *= std::polar(1.0, -std::arg(det) / 2.0);
    return JonesUnitary(unitary);
}

double process_fidelity(const JonesUnitary& estimate, const JonesUnitary& truth) {
    return std::abs((estimate.matrix().adjoint() * truth.matrix()).trace()) / 2.0;
}

Characterization characterize(const BlackBoxProcess& process, const std::vector<PureState>& probes,
                              const StateLearningTask& learn_cfg) {
    if (probes.size() < 2) {
        throw Error(ErrorKind::InsufficientProbes,
                    fmt::format("{} probe state(s) cannot determine a unitary", probes.size()));
    }
    StateLearningTask base = learn_cfg;
    base.trials = 1;
    base.target = process.query(probes.front());
    base.validate();

    auto outcomes = run_trials<TrialOutcome>(probes.size(), [&](std::size_t j) {
        StateLearningTask task = base;
        task.target = process.query(probes[j]);
        return learn_trial(task, j);
    });

    Characterization result;
    std::vector<std::vector<double>> series;
    for (auto& o : outcomes) {
        result.learned_outputs.push_back(o.final_state);
        series.push_back(std::move(o.fidelity));
    }
    result.trajectory = aggregate(std::move(series));
    result.unitary = fit_unitary(probes, result.learned_outputs);
    result.process = chi_from_unitary(result.unitary);
    return result;
}

JonesUnitary parse_waveplates(std::string_view spec) {
    JonesUnitary total;
    std::string_view rest = trim(spec);
    if (rest.empty()) return total;
    while (true) {
        const std::size_t comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw Error(ErrorKind::ParseError, fmt::format("wave plate '{}' is not kind:degrees", item));
        }
        const std::string_view kind = trim(item.substr(0, colon));
        const std::string angle_text(trim(item.substr(colon + 1)));
        double degrees = 0.0;
        try {
            std::size_t used = 0;
            degrees = std::stod(angle_text, &used);
            if (used != angle_text.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, fmt::format("bad wave plate angle '{}'", angle_text));
        }
        const double theta = degrees * std::numbers::pi / 180.0;
        if (kind == "hwp") {
            total = hwp(theta).after(total);
        } else if (kind == "qwp") {
            total = qwp(theta).after(total);
        } else {
            throw Error(ErrorKind::ParseError, fmt::format("unknown wave plate '{}'", kind));
        }
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return total;
}

nlohmann::json chi_to_json(const ProcessMap& p) {
    nlohmann::json entries = nlohmann::json::array();
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) entries.push_back({p.chi()(m, n).real(), p.chi()(m, n).imag()});
    return {{"basis", pauli_labels()}, {"chi", entries}};
}

ProcessMap chi_from_json(const nlohmann::json& j) {
    const auto& entries = j.at("chi");
    if (!entries.is_array() || entries.size() != 16) {
        throw Error(ErrorKind::SchemaError, "chi must hold 16 [re, im] pairs");
    }
    Mat4 chi;
    for (int i = 0; i < 16; ++i) {
        const auto& e = entries[static_cast<std::size_t>(i)];
        chi(i / 4, i % 4) = {e.at(0).get<double>(), e.at(1).get<double>()};
    }
    return ProcessMap(chi);
}

}  // namespace sgqgan
