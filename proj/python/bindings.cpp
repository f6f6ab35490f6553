#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gm/cli.hpp"
#include "gm/dicke.hpp"
#include "gm/oracle.hpp"
#include "gm/rank2.hpp"
#include "gm/state_io.hpp"
#include "gm/sym3q.hpp"
#include "gm/wmax.hpp"

namespace py = pybind11;
using namespace gm;

namespace {

OracleConfig config(int restarts, std::optional<std::uint64_t> seed) {
    OracleConfig cfg = cli::oracle_config_from_env();
    cfg.restarts = restarts;
    if (seed) cfg.seed = *seed;
    cfg.validate();
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Geometric measure of entanglement (C++ core)";

    // ValidationError, CapacityError and UnsupportedInputError derive from
    // std::invalid_argument / length_error / domain_error, all of which
    // surface as ValueError.

    py::class_<CandidateRecord>(m, "CandidateRecord")
        .def_readonly("phi", &CandidateRecord::phi)
        .def_readonly("theta", &CandidateRecord::theta)
        .def_readonly("lam", &CandidateRecord::lambda)
        .def_readonly("G_j_squared", &CandidateRecord::G_j_squared)
        .def_property_readonly("case", [](const CandidateRecord& c) { return std::string(to_string(c.case_tag)); })
        .def_readonly("residual", &CandidateRecord::residual);

    py::class_<GmResult>(m, "GmResult")
        .def_readonly("G", &GmResult::G)
        .def_readonly("G_squared", &GmResult::G_squared)
        .def_readonly("E_G", &GmResult::E_G)
        .def_property_readonly("method", [](const GmResult& r) { return std::string(to_string(r.method)); })
        .def_readonly("warning", &GmResult::warning)
        .def_property_readonly("closest_product",
                               [](const GmResult& r) {
                                   std::vector<Vec3> out;
                                   for (const auto& s : r.closest_product) out.push_back(s.s());
                                   return out;
                               })
        .def_readonly("candidates", &GmResult::candidates)
        .def_readonly("diagnostics", &GmResult::diagnostics)
        .def("to_json", [](const GmResult& r) { return to_json(r).dump(); })
        .def("__repr__", [](const GmResult& r) {
            return "GmResult(method=" + std::string(to_string(r.method)) + ", G_squared=" + format_number(r.G_squared) + ")";
        });

    m.def(
        "gm_dicke", [](const Eigen::VectorXcd& amps) { return gm_dicke_nonneg(SymmetricDickeState(amps)); },
        py::arg("amplitudes"), "G of a symmetric state with non-negative Dicke amplitudes a_0..a_N.");

    m.def(
        "gm_sym3q",
        [](double g, double t, double h, double gamma, bool renorm) {
            const auto s = renorm ? SymThreeQubitCanonical::projected(g, t, h, gamma) : SymThreeQubitCanonical(g, t, h, gamma);
            return gm_sym3q(s, cli::oracle_config_from_env());
        },
        py::arg("g"), py::arg("t"), py::arg("h"), py::arg("gamma"), py::arg("renorm") = false);

    m.def(
        "gm_rank2",
        [](double gamma1, double gamma2, Vec3 x, bool closed_form) {
            return gm_rank2(RankTwoCanonical(gamma1, gamma2, x), closed_form);
        },
        py::arg("gamma1"), py::arg("gamma2"), py::arg("x"), py::arg("closed_form") = false,
        "GmResult whose G_squared is g(rho) of the canonical rank-two state.");

    m.def("g_closed_form", &g_closed_form, py::arg("x3"), py::arg("gamma1"), py::arg("gamma2"));
    m.def(
        "g_numeric", [](double gamma1, double gamma2, Vec3 x) { return g_numeric(RankTwoCanonical(gamma1, gamma2, x)); },
        py::arg("gamma1"), py::arg("gamma2"), py::arg("x"));

    m.def(
        "gm_pure_oracle",
        [](const Eigen::VectorXcd& amps, int restarts, std::optional<std::uint64_t> seed) {
            const PureState psi(amps);
            const OracleConfig cfg = config(restarts, seed);
            py::gil_scoped_release release;
            return gm_pure_oracle(psi, cfg);
        },
        py::arg("amplitudes"), py::arg("restarts") = 32, py::arg("seed") = py::none());

    m.def(
        "gm_symmetric_oracle",
        [](const Eigen::VectorXcd& amps) {
            const SymmetricDickeState s(amps);
            py::gil_scoped_release release;
            return gm_symmetric_oracle(s);
        },
        py::arg("amplitudes"));

    m.def(
        "g_mixed_oracle",
        [](const Eigen::Matrix4cd& rho) {
            py::gil_scoped_release release;
            return g_mixed_oracle(rho);
        },
        py::arg("rho"));

    m.def(
        "scan_global_min",
        [](int resolution) {
            GlobalMinReport rep;
            {
                py::gil_scoped_release release;
                rep = scan_global_min(resolution);
            }
            py::dict d;
            d["min_g"] = rep.min_g;
            d["gamma1"] = rep.gamma1;
            d["gamma2"] = rep.gamma2;
            d["x3"] = rep.x3;
            d["margin"] = rep.margin;
            d["resolution"] = rep.resolution;
            d["grid_spec"] = rep.grid_spec;
            return d;
        },
        py::arg("resolution") = 64);

    m.def("verify_w_uniqueness", &verify_w_uniqueness);

    m.def(
        "crosscheck",
        [](const std::string& state_json) {
            const StateDescriptor s = state_from_json(nlohmann::json::parse(state_json));
            std::vector<std::pair<std::string, double>> out;
            for (const auto& e : cli::crosscheck(s, cli::oracle_config_from_env())) out.emplace_back(e.solver, e.G_squared);
            return out;
        },
        py::arg("state_json"), "(solver, G^2) for every solver that applies to the state.");

    m.def(
        "normalize_state_json",
        [](const std::string& state_json) { return state_to_json(state_from_json(nlohmann::json::parse(state_json))).dump(); },
        py::arg("state_json"), "Parses and re-emits a state file, validating it.");
}
