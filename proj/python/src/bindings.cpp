#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "sgqgan/config.hpp"
#include "sgqgan/interference.hpp"
#include "sgqgan/multiphase.hpp"
#include "sgqgan/process.hpp"
#include "sgqgan/runner.hpp"
#include "sgqgan/state_learner.hpp"

namespace py = pybind11;
using namespace sgqgan;

namespace {

using Amps = std::vector<cplx>;
using Matrix = std::vector<std::vector<cplx>>;

PureState to_state(const Amps& amps) {
    CVector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = amps[i];
    return normalize(UnnormalizedVector{std::move(v)});
}

Amps from_state(const PureState& s) { return {s.amps().data(), s.amps().data() + s.amps().size()}; }

template <class M>
Matrix rows_of(const M& m) {
    Matrix out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r)].push_back(m(r, c));
    return out;
}

Mat2 to_mat2(const Matrix& rows) {
    if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
        throw Error(ErrorKind::DimensionMismatch, "expected a 2x2 matrix");
    Mat2 m;
    m << rows[0][0], rows[0][1], rows[1][0], rows[1][1];
    return m;
}

PhaseScene make_scene(std::vector<double> weights, std::vector<double> psi, std::vector<double> phi, double sigma) {
    PhaseScene s;
    s.weights = std::move(weights);
    s.psi = std::move(psi);
    s.phi = std::move(phi);
    s.sigma = sigma;
    return s;
}

HomModelConfig make_model(const std::string& mode, std::uint64_t pairs, double background) {
    HomModelConfig m;
    if (mode == "analytic") m.mode = MeasurementMode::Analytic;
    else if (mode == "sampled") m.mode = MeasurementMode::Sampled;
    else throw Error(ErrorKind::RangeError, "mode must be 'analytic' or 'sampled'");
    m.pairs_per_setting = pairs;
    m.background_rate = background;
    return m;
}

py::dict trajectory_dict(const Trajectory& t) {
    py::dict d;
    d["mean"] = t.mean;
    d["std"] = t.std;
    d["series"] = t.series;
    d["final_mean"] = t.final_mean();
    d["final_std"] = t.final_std();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Self-guided adversarial learning of photonic states, processes and phases";

    static py::handle error_type = py::exception<Error>(m, "Error", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error_type)(
                std::string(to_string(e.kind())) + ": " + e.what());
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    // states
    m.def("normalize", [](const Amps& a) { return from_state(to_state(a)); }, py::arg("amps"));
    m.def("parse_state", [](const std::string& s) { return from_state(parse_state(s)); }, py::arg("text"));
    m.def("overlap", [](const Amps& a, const Amps& b) { return overlap(to_state(a), to_state(b)); });
    m.def("root_fidelity", [](const Amps& a, const Amps& b) { return root_fidelity(to_state(a), to_state(b)); });
    m.def("bloch_coords", [](const Amps& a) { return bloch_coords(to_state(a)); });
    m.def("hwp", [](double theta) { return rows_of(hwp(theta).matrix()); }, py::arg("theta"));
    m.def("qwp", [](double theta) { return rows_of(qwp(theta).matrix()); }, py::arg("theta"));
    m.def("apply_unitary",
          [](const Matrix& u, const Amps& s) { return from_state(apply_unitary(JonesUnitary(to_mat2(u)), to_state(s))); },
          py::arg("unitary"), py::arg("state"));
    m.def("builtin_targets", [] {
        py::dict d;
        for (const auto& t : builtin_targets()) d[py::str(t.name)] = from_state(t.state);
        return d;
    });

    // interference
    m.def("coincidence_prob_dip", &coincidence_prob_dip, py::arg("f"));
    m.def(
        "coincidence_prob_multiphase",
        [](std::vector<double> w, std::vector<double> psi, std::vector<double> phi, double sigma, double tau) {
            return coincidence_prob_multiphase(make_scene(std::move(w), std::move(psi), std::move(phi), sigma), tau);
        },
        py::arg("weights"), py::arg("psi"), py::arg("phi"), py::arg("sigma") = 1.0, py::arg("tau") = 0.0);
    m.def("accuracy", &accuracy, py::arg("psi"), py::arg("phi"));

    // optimizer gains
    py::class_<GainSchedule>(m, "GainSchedule")
        .def(py::init([](double a, double A, double s, double b, double t) { return GainSchedule{a, A, s, b, t}; }),
             py::arg("a") = 3.0, py::arg("A") = 0.0, py::arg("s") = 0.602, py::arg("b") = 0.1, py::arg("t") = 0.101)
        .def_readwrite("a", &GainSchedule::a)
        .def_readwrite("A", &GainSchedule::A)
        .def_readwrite("s", &GainSchedule::s)
        .def_readwrite("b", &GainSchedule::b)
        .def_readwrite("t", &GainSchedule::t)
        .def("alpha", [](const GainSchedule& g, std::size_t k) { return alpha(g, k); })
        .def("beta", [](const GainSchedule& g, std::size_t k) { return beta(g, k); })
        .def("__repr__", [](const GainSchedule& g) {
            return fmt::format("GainSchedule(a={}, A={}, s={}, b={}, t={})", g.a, g.A, g.s, g.b, g.t);
        });

    // experiments
    m.def(
        "learn_state",
        [](const std::string& target, const std::string& initial, const GainSchedule& gains, const std::string& mode,
           std::uint64_t pairs, double background, std::size_t iterations, std::size_t trials, std::uint64_t seed) {
            StateLearningTask task;
            task.target = resolve_target(target);
            task.initial = resolve_target(initial);
            task.sched = gains;
            task.model = make_model(mode, pairs, background);
            task.iterations = iterations;
            task.trials = trials;
            task.seed = seed;
            LearningResult r;
            {
                py::gil_scoped_release release;
                r = learn(task);
            }
            py::dict d = trajectory_dict(r.trajectory);
            std::vector<Amps> finals;
            for (const auto& s : r.final_states) finals.push_back(from_state(s));
            d["final_states"] = finals;
            return d;
        },
        py::arg("target"), py::arg("initial") = "V", py::arg("gains") = GainSchedule{}, py::arg("mode") = "analytic",
        py::arg("pairs") = 1000, py::arg("background") = 0.0, py::arg("iterations") = 20, py::arg("trials") = 100,
        py::arg("seed") = 0);

    m.def(
        "characterize",
        [](const Matrix& hidden, std::size_t iterations, std::uint64_t seed) {
            const JonesUnitary u(to_mat2(hidden));
            StateLearningTask cfg;
            cfg.target = polarization('H');
            cfg.iterations = iterations;
            cfg.seed = seed;
            Characterization c;
            {
                py::gil_scoped_release release;
                c = characterize(BlackBoxProcess(u), default_probes(), cfg);
            }
            py::dict d;
            d["unitary"] = rows_of(c.unitary.matrix());
            d["chi"] = rows_of(c.process.chi());
            d["process_fidelity"] = process_fidelity(c.unitary, u);
            d["valid"] = c.process.is_valid();
            return d;
        },
        py::arg("hidden"), py::arg("iterations") = 30, py::arg("seed") = 0);
    m.def("chi_from_unitary", [](const Matrix& u) { return rows_of(chi_from_unitary(to_mat2(u)).chi()); });
    m.def("waveplates", [](const std::string& spec) { return rows_of(parse_waveplates(spec).matrix()); },
          py::arg("spec"));

    m.def(
        "estimate_phases",
        [](std::vector<double> psi, std::optional<std::vector<double>> weights, std::optional<GainSchedule> gains,
           const std::string& mode, std::uint64_t pairs, double background, std::size_t iterations,
           std::size_t trials, std::uint64_t seed) {
            const std::size_t n = psi.size();
            MultiphaseTask task;
            task.scene = make_scene(weights ? *weights : std::vector<double>(n, 1.0 / static_cast<double>(n)),
                                    std::move(psi), std::vector<double>(n, 0.0), 1.0);
            if (gains) task.sched = *gains;
            task.model = make_model(mode, pairs, background);
            task.iterations = iterations;
            task.trials = trials;
            task.seed = seed;
            MultiphaseResult r;
            {
                py::gil_scoped_release release;
                r = estimate(task);
            }
            py::dict d = trajectory_dict(r.trajectory);
            d["final_phases"] = r.final_phases;
            return d;
        },
        py::arg("psi"), py::arg("weights") = py::none(), py::arg("gains") = py::none(), py::arg("mode") = "analytic",
        py::arg("pairs") = 1000, py::arg("background") = 0.0, py::arg("iterations") = kDefaultMultiphaseIterations,
        py::arg("trials") = kDefaultMultiphaseTrials, py::arg("seed") = 0);
    m.def(
        "uniform_psi",
        [](std::size_t n, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return uniform_scene(n, 1.0, rng).psi;
        },
        py::arg("n"), py::arg("seed") = 0);

    // config-driven runs, same as the CLI
    m.def("resolve_config", [](const std::string& text) { return to_json(parse_config(text)).dump(); },
          py::arg("config_json"));
    m.def(
        "run_config",
        [](const std::string& text) {
            const auto cfg = parse_config(text);
            ExecuteResult r;
            {
                py::gil_scoped_release release;
                r = execute(cfg);
            }
            py::dict d;
            d["files"] = r.files;
            d["mean"] = r.metric.mean;
            d["std"] = r.metric.std;
            return d;
        },
        py::arg("config_json"));
}
