#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "sgqgan/quantum.hpp"
#include "sgqgan/state_learner.hpp"
#include "sgqgan/trajectory.hpp"

namespace sgqgan {

using Mat4 = Eigen::Matrix4cd;

// Ordered Pauli operator basis {I, X, Y, Z}.
const std::array<Mat2, 4>& pauli_basis();
const std::array<std::string, 4>& pauli_labels();

struct ChiDiagnostics {
    double hermiticity = 0.0;        // max |chi - chi^dag|
    double trace_preservation = 0.0; // max |sum chi_mn E_n^dag E_m - I|
    double min_eigenvalue = 0.0;
    std::array<double, 4> eigenvalues{};  // ascending
};

// Process (chi) matrix of eps(rho) = sum_mn chi_mn E_m rho E_n^dag over the Pauli basis.
class ProcessMap {
public:
    ProcessMap() : chi_(Mat4::Zero()) { chi_(0, 0) = 1.0; }
    explicit ProcessMap(const Mat4& chi) : chi_(chi) {}

    const Mat4& chi() const { return chi_; }
    ChiDiagnostics diagnostics() const;
    // Hermitian within 1e-10, trace preserving within 1e-8, eigenvalues >= -1e-8.
    bool is_valid() const;

private:
    Mat4 chi_;
};

// Throws InvalidDensityMatrix unless rho is Hermitian, unit-trace and PSD
// within 1e-10.
Mat2 apply_process(const ProcessMap& p, const Mat2& rho);

// chi_mn = c_m conj(c_n) with U = sum_m c_m E_m. Throws NotUnitary.
ProcessMap chi_from_unitary(const Mat2& u);
inline ProcessMap chi_from_unitary(const JonesUnitary& u) { return chi_from_unitary(u.matrix()); }

Mat2 density(const PureState& s);

// Unknown unitary process: only output states are observable.
class BlackBoxProcess {
public:
    explicit BlackBoxProcess(JonesUnitary hidden) : hidden_(std::move(hidden)) {}
    PureState query(const PureState& input) const { return apply_unitary(hidden_, input); }

private:
    JonesUnitary hidden_;
};

// |H>, |D>, |R>.
std::vector<PureState> default_probes();

// Unitary best mapping probes onto the rays of `outputs`: the least-squares
// solution of (I - o_j o_j^dag) U p_j = 0, projected onto the unitaries by
// polar decomposition. Throws InsufficientProbes with fewer than two
// linearly independent probes.
JonesUnitary fit_unitary(const std::vector<PureState>& probes, const std::vector<PureState>& outputs);

// |tr(estimate^dag truth)| / 2.
double process_fidelity(const JonesUnitary& estimate, const JonesUnitary& truth);

struct Characterization {
    JonesUnitary unitary;
    ProcessMap process;
    std::vector<PureState> learned_outputs;  // one per probe
    Trajectory trajectory;                   // one fidelity series per probe
};

// Learns the image of each probe with one SPSA run (probe j uses trial
// index j under learn_cfg.seed; learn_cfg.target and .trials are ignored),
// then fits the unitary.
Characterization characterize(const BlackBoxProcess& process, const std::vector<PureState>& probes,
                              const StateLearningTask& learn_cfg);

// "hwp:22.5,qwp:45" (degrees); plates act in the listed order.
JonesUnitary parse_waveplates(std::string_view spec);

// {"basis": ["I","X","Y","Z"], "chi": [[re, im], ...]} row-major.
nlohmann::json chi_to_json(const ProcessMap& p);
ProcessMap chi_from_json(const nlohmann::json& j);

}  // namespace sgqgan
