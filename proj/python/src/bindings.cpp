#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavsim/experiments.hpp"
#include "cavsim/gates.hpp"
#include "cavsim/scattering.hpp"
#include "cavsim/spectral.hpp"

namespace py = pybind11;
using namespace cavsim;

namespace {

PhotonQubit make_photon(Complex c_h, Complex c_v, const Envelope& shape) {
    return PhotonQubit(c_h, c_v, shape);
}

std::vector<std::pair<std::string, double>> outcome_probs(
    const std::vector<MeasurementOutcome>& outcomes) {
    std::vector<std::pair<std::string, double>> v;
    for (const MeasurementOutcome& o : outcomes) v.emplace_back(o.label, o.probability);
    return v;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "cavity-assisted single-photon gate simulator core";

    py::enum_<AtomLabel>(m, "AtomLabel")
        .value("g0", AtomLabel::g0)
        .value("g1", AtomLabel::g1);
    py::enum_<LossModel>(m, "LossModel")
        .value("standard_decay", LossModel::standard_decay)
        .value("paper_literal", LossModel::paper_literal);
    py::enum_<GateMode>(m, "GateMode")
        .value("ideal", GateMode::ideal)
        .value("simulated", GateMode::simulated);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init(&make_grid), py::arg("t_start"), py::arg("dt"), py::arg("n_bins"))
        .def_readonly("t_start", &TimeGrid::t_start)
        .def_readonly("dt", &TimeGrid::dt)
        .def_readonly("n_bins", &TimeGrid::n_bins)
        .def("t_center", &TimeGrid::t_center)
        .def("span", &TimeGrid::span);

    py::class_<Envelope>(m, "Envelope")
        .def(py::init<TimeGrid, std::vector<Complex>>(), py::arg("grid"), py::arg("samples"))
        .def_property_readonly("grid", &Envelope::grid)
        .def_property_readonly(
            "samples", [](const Envelope& e) { return e.samples(); })
        .def("__len__", &Envelope::size);
    m.def("squared_norm", &squared_norm);
    m.def("inner_product", &inner_product);
    m.def("shape_overlap", &shape_overlap);

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init([](double g, double kappa, double gamma_s, double delta,
                         LossModel loss_model) {
                 CavityParams p{g, kappa, gamma_s, delta, loss_model};
                 p.validate();
                 return p;
             }),
             py::arg("g"), py::arg("kappa") = 1.0, py::arg("gamma_s") = 0.0,
             py::arg("delta") = 0.0, py::arg("loss_model") = LossModel::standard_decay)
        .def_readwrite("g", &CavityParams::g)
        .def_readwrite("kappa", &CavityParams::kappa)
        .def_readwrite("gamma_s", &CavityParams::gamma_s)
        .def_readwrite("delta", &CavityParams::delta)
        .def_readwrite("loss_model", &CavityParams::loss_model);

    py::class_<ReflectionResult>(m, "ReflectionResult")
        .def_readonly("out", &ReflectionResult::out)
        .def_readonly("loss_prob", &ReflectionResult::loss_prob)
        .def_readonly("residual_excitation", &ReflectionResult::residual_excitation)
        .def_readonly("conditional_phase", &ReflectionResult::conditional_phase);

    m.def("default_reflection_grid", &default_reflection_grid, py::arg("params"),
          py::arg("pulse_duration"), py::arg("settle") = kDefaultSettleWindow);
    m.def(
        "make_gaussian_pulse",
        [](double T, const TimeGrid& grid) {
            return make_gaussian_pulse(PulseSpec{T, PulseShape::gaussian_paper}, grid);
        },
        py::arg("T"), py::arg("grid"));
    m.def("reflect", &reflect, py::arg("input"), py::arg("atom"), py::arg("params"));
    m.def("reflect_spectral", &reflect_spectral, py::arg("input"), py::arg("atom"),
          py::arg("params"));
    m.def("reflection_coefficient", &reflection_coefficient, py::arg("omega"),
          py::arg("atom"), py::arg("params"));

    py::class_<AtomPhotonGateResult>(m, "AtomPhotonGateResult")
        .def_readonly("conditional_fidelity", &AtomPhotonGateResult::conditional_fidelity)
        .def_readonly("unconditional_fidelity", &AtomPhotonGateResult::unconditional_fidelity)
        .def_readonly("success_prob", &AtomPhotonGateResult::success_prob);
    m.def("atom_photon_gate_fidelity", &atom_photon_gate_fidelity, py::arg("params"),
          py::arg("T"), py::arg("dt_override") = 0.0);

    py::class_<GateReport>(m, "GateReport")
        .def_readonly("fidelity", &GateReport::fidelity)
        .def_readonly("success_prob", &GateReport::success_prob)
        .def_readonly("phases", &GateReport::phases);
    m.def(
        "two_photon_gate",
        [](Complex ch1, Complex cv1, Complex ch2, Complex cv2, const Envelope& shape,
           const CavityParams& params, GateMode mode) {
            JointState input = JointState::product(
                AtomQubit::plus(), {PhotonQubit(ch1, cv1, shape), PhotonQubit(ch2, cv2, shape)});
            auto [out, report] = cpf_photon_photon(input, params, mode);
            return py::make_tuple(report, out.lost_weight());
        },
        py::arg("c_h1"), py::arg("c_v1"), py::arg("c_h2"), py::arg("c_v2"),
        py::arg("shape"), py::arg("params"), py::arg("mode"));

    m.def(
        "qnd_photon_number",
        [](Complex c_h, Complex c_v, const Envelope& shape, const CavityParams& params,
           GateMode mode) {
            return outcome_probs(qnd_photon_number(make_photon(c_h, c_v, shape), params, mode));
        },
        py::arg("c_h"), py::arg("c_v"), py::arg("shape"), py::arg("params"), py::arg("mode"));
    m.def(
        "qnd_parity",
        [](const std::vector<std::pair<Complex, Complex>>& amps, const Envelope& shape,
           const CavityParams& params, GateMode mode) {
            std::vector<PhotonQubit> pulses;
            for (const auto& [ch, cv] : amps) pulses.push_back(make_photon(ch, cv, shape));
            return outcome_probs(qnd_parity(pulses, params, mode));
        },
        py::arg("amplitudes"), py::arg("shape"), py::arg("params"), py::arg("mode"));
    m.def(
        "qnd_total_number",
        [](std::optional<std::pair<Complex, Complex>> amps, const Envelope& shape,
           const CavityParams& params, GateMode mode) {
            std::optional<PhotonQubit> pulse;
            if (amps) pulse = make_photon(amps->first, amps->second, shape);
            return outcome_probs(qnd_total_number(pulse, params, mode));
        },
        py::arg("amplitudes"), py::arg("shape"), py::arg("params"), py::arg("mode"));
}
