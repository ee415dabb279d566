#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gwi/closed_form.hpp"
#include "gwi/decision.hpp"
#include "gwi/diffusion.hpp"
#include "gwi/entropy.hpp"
#include "gwi/fixed_point.hpp"
#include "gwi/oracle.hpp"
#include "gwi/recursion.hpp"

namespace py = pybind11;
using namespace gwi;

namespace {

py::dict components_dict(const EntropyComponents& c) {
    py::dict d;
    d["tan_at_ystar"] = c.tan_at_ystar;
    d["best_tan"] = c.best_tan;
    d["best_sec"] = c.best_sec;
    d["horizontal"] = c.horizontal;
    d["tan_infinity"] = c.tan_infinity;
    d["sec_zero"] = c.sec_zero;
    return d;
}

}  // namespace

PYBIND11_MODULE(_gwi, m) {
    m.doc() = "Hellinger integrals, divergences and decision bounds for Poisson Galton-Watson processes with immigration";

    static py::exception<Error> gwi_error(m, "GwiError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = gwi_error;
            py::object inst = err(e.what());
            inst.attr("code") = static_cast<int>(e.code());
            inst.attr("name") = error_name(e.code());
            PyErr_SetObject(err.ptr(), inst.ptr());
        }
    });

    py::class_<ParamSet>(m, "ParamSet")
        .def(py::init([](double bA, double bH, double aA, double aH) { return ParamSet{bA, bH, aA, aH}; }),
             py::arg("beta_A"), py::arg("beta_H"), py::arg("alpha_A"), py::arg("alpha_H"))
        .def_readwrite("beta_A", &ParamSet::beta_A)
        .def_readwrite("beta_H", &ParamSet::beta_H)
        .def_readwrite("alpha_A", &ParamSet::alpha_A)
        .def_readwrite("alpha_H", &ParamSet::alpha_H)
        .def("__repr__", [](const ParamSet& p) {
            return "ParamSet(" + std::to_string(p.beta_A) + ", " + std::to_string(p.beta_H) + ", " +
                   std::to_string(p.alpha_A) + ", " + std::to_string(p.alpha_H) + ")";
        });

    py::class_<SDEParams>(m, "SDEParams")
        .def(py::init([](double eta, double kA, double kH, double sigma, double x0) {
                 return SDEParams{eta, kA, kH, sigma, x0};
             }),
             py::arg("eta"), py::arg("kappa_A"), py::arg("kappa_H"), py::arg("sigma") = 1.0,
             py::arg("x0_tilde") = 1.0)
        .def_readwrite("eta", &SDEParams::eta)
        .def_readwrite("kappa_A", &SDEParams::kappa_A)
        .def_readwrite("kappa_H", &SDEParams::kappa_H)
        .def_readwrite("sigma", &SDEParams::sigma)
        .def_readwrite("x0_tilde", &SDEParams::x0_tilde);

    py::class_<DecisionConfig>(m, "DecisionConfig")
        .def(py::init([](double lA, double lH, double prior, double level) {
                 return DecisionConfig{lA, lH, prior, level};
             }),
             py::arg("loss_A") = 1.0, py::arg("loss_H") = 1.0, py::arg("prior_H") = 0.5, py::arg("level") = 0.05)
        .def_readwrite("loss_A", &DecisionConfig::loss_A)
        .def_readwrite("loss_H", &DecisionConfig::loss_H)
        .def_readwrite("prior_H", &DecisionConfig::prior_H)
        .def_readwrite("level", &DecisionConfig::level);

    m.def("classify", [](const ParamSet& p, double lambda) {
        auto c = classify_detail(p, lambda);
        py::dict d;
        d["case"] = to_string(c.tag);
        d["x_star"] = c.x_star;
        d["phi_prime_zero"] = c.phi_prime_zero;
        d["near_tie"] = c.near_tie;
        return d;
    }, py::arg("params"), py::arg("lam"));

    m.def("phi", &phi, py::arg("params"), py::arg("lam"), py::arg("x"));

    m.def("solve_fixed_point", [](double q, double beta_lambda) {
        auto f = solve_fixed_point(q, beta_lambda);
        py::dict d;
        d["x0"] = f.x0;
        d["x0_under"] = f.x0_under;
        d["x0_over"] = f.x0_over;
        d["d_T"] = f.d_T;
        d["d_S"] = f.d_S;
        d["gamma"] = f.gamma_cap;
        return d;
    }, py::arg("q"), py::arg("beta_lambda"));

    m.def("coefficients", [](const ParamSet& p, double lambda, const std::string& role) {
        auto c = select_coeffs(p, lambda, role_from_string(role));
        return py::make_tuple(c.p, c.q);
    }, py::arg("params"), py::arg("lam"), py::arg("role"));

    m.def("exact_log_hellinger", &exact_log_hellinger, py::arg("params"), py::arg("lam"), py::arg("omega0"),
          py::arg("n"));

    m.def("hellinger", [](const ParamSet& p, double lambda, int omega0, int n) {
        auto r = hellinger_report(p, lambda, omega0, n);
        py::dict d;
        d["case"] = to_string(r.tag);
        d["log_lower"] = r.log_lower;
        d["log_upper"] = r.log_upper;
        d["log_exact"] = r.log_exact;
        d["method"] = r.method;
        return d;
    }, py::arg("params"), py::arg("lam"), py::arg("omega0"), py::arg("n"));

    m.def("bound_series", [](const ParamSet& p, double lambda, int omega0, int n) {
        auto s = recursive_log_bound_series(p, lambda, omega0, n);
        return py::make_tuple(s.lower, s.upper);
    }, py::arg("params"), py::arg("lam"), py::arg("omega0"), py::arg("n"));

    m.def("closed_form_log_lower", [](const ParamSet& p, double lambda, int omega0, int n, bool explicit_x0) {
        return closed_form_log_lower(p, lambda, omega0, n, {explicit_x0});
    }, py::arg("params"), py::arg("lam"), py::arg("omega0"), py::arg("n"), py::arg("explicit_x0") = false);
    m.def("closed_form_log_upper", [](const ParamSet& p, double lambda, int omega0, int n, bool explicit_x0) {
        return closed_form_log_upper(p, lambda, omega0, n, {explicit_x0});
    }, py::arg("params"), py::arg("lam"), py::arg("omega0"), py::arg("n"), py::arg("explicit_x0") = false);

    m.def("divergences", [](double log_H, double lambda) {
        auto d = divergence_from_log_hellinger(log_H, lambda);
        return py::make_tuple(d.power_div, d.renyi_div);
    }, py::arg("log_H"), py::arg("lam"));

    m.def("distinguishability", [](const ParamSet& p) {
        auto v = distinguishability(p);
        py::dict d;
        d["contiguous_A_to_H"] = v.contiguous_A_to_H;
        d["contiguous_H_to_A"] = v.contiguous_H_to_A;
        d["entirely_separated"] = v.entirely_separated;
        return d;
    }, py::arg("params"));

    m.def("entropy", [](const ParamSet& p, int omega0, int n) {
        auto r = entropy_report(p, omega0, n);
        py::dict d;
        d["case"] = to_string(r.tag);
        d["exact"] = r.exact;
        d["lower"] = r.lower;
        d["upper"] = r.upper;
        d["simplified_lower"] = r.simplified_lower;
        d["components"] = components_dict(r.components);
        d["degenerate"] = r.degenerate;
        d["notes"] = r.notes;
        return d;
    }, py::arg("params"), py::arg("omega0"), py::arg("n"));

    m.def("minimal_admissible_m", &minimal_admissible_m, py::arg("sde"));
    m.def("prelimit_log_bounds", [](const SDEParams& s, double lambda, double t, long long mm, long long x0_count) {
        auto b = prelimit_log_bounds(s, lambda, t, mm, x0_count);
        return py::make_tuple(b.log_lower, b.log_upper);
    }, py::arg("sde"), py::arg("lam"), py::arg("t"), py::arg("m"), py::arg("x0_count"));
    m.def("limit_log_bounds", [](const SDEParams& s, double lambda, double t) {
        auto b = limit_log_bounds(s, lambda, t);
        return py::make_tuple(b.log_lower, b.log_upper);
    }, py::arg("sde"), py::arg("lam"), py::arg("t"));
    m.def("limit_entropy", &limit_entropy, py::arg("sde"), py::arg("t"));
    m.def("scaling_checks", [](const SDEParams& s, double lambda, long long mm, double t) {
        py::dict d;
        for (const auto& c : scaling_checks(s, lambda, mm, t)) d[py::str(c.name)] = py::make_tuple(c.measured, c.target);
        return d;
    }, py::arg("sde"), py::arg("lam"), py::arg("m"), py::arg("t"));

    m.def("bayes_risk_bounds", [](const ParamSet& p, double lambda, int omega0, int n, const DecisionConfig& cfg) {
        auto b = bayes_risk_bounds(p, lambda, omega0, n, cfg);
        return py::make_tuple(b.lower, b.upper);
    }, py::arg("params"), py::arg("lam"), py::arg("omega0"), py::arg("n"), py::arg("config") = DecisionConfig{});
    m.def("np_type2_bound", [](const ParamSet& p, double lambda, int omega0, int n, const DecisionConfig& cfg) {
        return np_type2_bound(p, lambda, omega0, n, cfg).bound;
    }, py::arg("params"), py::arg("lam"), py::arg("omega0"), py::arg("n"), py::arg("config") = DecisionConfig{});

    m.def("enum_hellinger", [](const ParamSet& p, double lambda, int omega0, int n, double budget) {
        TruncationPolicy pol;
        pol.tail_budget = budget;
        auto e = enum_log_hellinger(p, lambda, omega0, n, pol);
        return py::make_tuple(e.value, e.error_bound);
    }, py::arg("params"), py::arg("lam"), py::arg("omega0"), py::arg("n"), py::arg("tail_budget") = 1e-9);
    m.def("mc_hellinger", [](const ParamSet& p, double lambda, int omega0, int n, long long reps, std::uint64_t seed) {
        MCResult r;
        {
            py::gil_scoped_release release;
            r = mc_log_hellinger(p, lambda, omega0, n, reps, seed);
        }
        return py::make_tuple(r.estimate, r.std_error);
    }, py::arg("params"), py::arg("lam"), py::arg("omega0"), py::arg("n"), py::arg("reps"), py::arg("seed"));
    m.def("enum_bayes_risk", [](const ParamSet& p, int omega0, int n, const DecisionConfig& cfg) {
        auto r = enum_bayes_risk(p, omega0, n, cfg);
        return py::make_tuple(r.risk, r.error_bound);
    }, py::arg("params"), py::arg("omega0"), py::arg("n"), py::arg("config") = DecisionConfig{});
    m.def("enum_np_type2", [](const ParamSet& p, int omega0, int n, double level) {
        auto r = enum_np_type2(p, omega0, n, level);
        return py::make_tuple(r.type2, r.error_bound);
    }, py::arg("params"), py::arg("omega0"), py::arg("n"), py::arg("level"));
    m.def("enum_relative_entropy", [](const ParamSet& p, int omega0, int n) {
        auto r = enum_relative_entropy(p, omega0, n);
        return py::make_tuple(r.value, r.error_bound);
    }, py::arg("params"), py::arg("omega0"), py::arg("n"));
}
