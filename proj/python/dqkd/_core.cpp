#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dqkd/field.hpp"
#include "dqkd/montecarlo.hpp"
#include "dqkd/mub.hpp"
#include "dqkd/pauli.hpp"
#include "dqkd/protocol.hpp"

namespace py = pybind11;
using namespace dqkd;

namespace {

Field field_for(int d) {
    const auto pp = factor_prime_power(d);
    if (!pp) throw std::invalid_argument("not a prime power");
    return make_field(pp->p, pp->m);
}

ProtocolConfig make_config(int d, double c, const std::string& attack,
                           std::uint64_t seed, bool ir_independent_bases,
                           std::optional<int> fixed_message) {
    const auto pp = factor_prime_power(d);
    if (!pp) throw std::invalid_argument("not a prime power");
    ProtocolConfig cfg;
    cfg.p = pp->p;
    cfg.m = pp->m;
    cfg.c = c;
    cfg.attack = parse_attack(attack);
    cfg.seed = seed;
    cfg.ir_independent_bases = ir_independent_bases;
    cfg.fixed_message = fixed_message;
    return cfg;
}

py::object opt_int(int v) {
    if (v < 0) return py::none();
    return py::int_(v);
}

py::dict record_dict(const RunRecord& r) {
    py::dict d;
    d["mode"] = mode_name(r.mode);
    d["bob_k"] = r.bob_k;
    d["bob_t"] = r.bob_t;
    d["alice_basis"] = opt_int(r.alice_basis);
    d["alice_outcome"] = opt_int(r.alice_outcome);
    d["encoded_a"] = opt_int(r.encoded_a);
    d["bob_outcome"] = r.bob_outcome;
    d["decoded_a"] = opt_int(r.decoded_a);
    d["eve_basis"] = opt_int(r.eve_basis);
    d["eve_decoded"] = opt_int(r.eve_decoded);
    d["coincident"] = r.coincident;
    d["detected"] = r.detected;
    return d;
}

py::dict stats_dict(const SessionStats& s) {
    py::dict d;
    d["d"] = s.d;
    d["attack"] = attack_name(s.attack);
    d["c"] = s.c;
    d["seed"] = s.seed;
    d["n_runs"] = s.n_runs;
    d["n_control"] = s.n_control;
    d["n_message"] = s.n_message;
    d["n_coincident"] = s.n_coincident;
    d["n_detected"] = s.n_detected;
    d["n_eve_correct_message"] = s.n_eve_correct_message;
    d["n_coincident_dual"] = s.n_coincident_dual;
    d["n_detected_dual"] = s.n_detected_dual;
    d["n_coincident_higher"] = s.n_coincident_higher;
    d["n_alice_mismatch_higher"] = s.n_alice_mismatch_higher;
    d["pe_hat"] = s.pe_hat;
    d["ci_lo"] = s.ci_lo;
    d["ci_hi"] = s.ci_hi;
    d["pe_hat_coincident"] = s.pe_hat_coincident;
    d["ci_lo_coincident"] = s.ci_lo_coincident;
    d["ci_hi_coincident"] = s.ci_hi_coincident;
    d["eve_message_accuracy"] = s.eve_message_accuracy;
    d["pe_analytic"] = s.pe_analytic;
    d["ir_analytic"] = s.ir_analytic;
    d["i_e"] = s.i_e;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "simulator and verifier for a deterministic qudit "
                "key-distribution protocol over mutually unbiased bases";

    mod.def(
        "factor_prime_power",
        [](int d) -> py::object {
            const auto pp = factor_prime_power(d);
            if (!pp) return py::none();
            return py::make_tuple(pp->p, pp->m);
        },
        py::arg("d"), "Factor d as (p, m) with p prime, or None.");

    py::class_<Field>(mod, "Field", "Arithmetic on GF(p^m) element labels.")
        .def(py::init([](int p, int m) { return make_field(p, m); }), py::arg("p"),
             py::arg("m") = 1)
        .def_property_readonly("p", &Field::p)
        .def_property_readonly("m", &Field::m)
        .def_property_readonly("d", &Field::d)
        .def_property_readonly("reduction_poly", &Field::reduction_poly)
        .def("add", &Field::add)
        .def("sub", &Field::sub)
        .def("neg", &Field::neg)
        .def("mul", &Field::mul)
        .def("inv", &Field::inv)
        .def("div", &Field::div)
        .def("digits", &Field::digits)
        .def("__repr__", [](const Field& f) {
            return "Field(p=" + std::to_string(f.p()) + ", m=" + std::to_string(f.m()) +
                   ")";
        });

    mod.def(
        "mub_vector",
        [](int d, int k, int t) {
            const Field f = field_for(d);
            return mub_vector(f, k, t).amp;
        },
        py::arg("d"), py::arg("k"), py::arg("t"),
        "Amplitudes of vector t of basis k (0 = computational, 1..d dual).");

    mod.def(
        "verify_mub",
        [](int d, double tol) {
            const Field f = field_for(d);
            const MubCheck chk = verify_mub(build_mub(f), tol);
            py::dict out;
            out["d"] = f.d();
            out["p"] = f.p();
            out["m"] = f.m();
            out["tol"] = chk.tol;
            out["max_deviation"] = chk.max_deviation;
            out["pass"] = chk.pass;
            return out;
        },
        py::arg("d"), py::arg("tol") = 1e-9,
        "Check that the d+1 bases are mutually unbiased.");

    mod.def(
        "verify_appendix",
        [](int d, double tol, bool wrong_sign) {
            const IdentityReport rep = verify_appendix(field_for(d), tol, wrong_sign);
            py::dict out;
            out["d"] = rep.d;
            out["tol"] = rep.tol;
            out["wrong_sign"] = rep.wrong_sign;
            out["all_pass"] = rep.all_pass();
            py::list checks;
            for (const auto& c : rep.checks) {
                py::dict e;
                e["name"] = c.name;
                e["skipped"] = c.skipped;
                e["max_deviation"] = c.max_dev;
                e["pass"] = c.pass;
                checks.append(e);
            }
            out["checks"] = checks;
            return out;
        },
        py::arg("d"), py::arg("tol") = 1e-9, py::arg("wrong_sign") = false,
        "Audit the operator and phase identities; wrong_sign runs the "
        "negative control.");

    mod.def("analytic_pe", &analytic_pe, py::arg("d"),
            "Controlled-shift detection rate per control run, (d-1)^2/d^3.");
    mod.def("analytic_ir_detect", &analytic_ir_detect, py::arg("d"),
            "Intercept-resend detection rate per control run.");
    mod.def("eve_info", &eve_info, py::arg("d"), "Bits per message symbol, log2(d).");

    mod.def("qdc_undetected", &qdc_undetected, py::arg("c"), py::arg("pe"),
            "Probability the attacker survives until the next message run.");
    mod.def("qdc_success", &qdc_success, py::arg("c"), py::arg("pe"), py::arg("i_bits"),
            py::arg("ie_bits"),
            "Probability the attacker reads i_bits before being detected.");
    mod.def(
        "qdc_curve",
        [](double c, int d, int bits) {
            py::list out;
            for (const QdcPoint& pt : qdc_curve(c, d, bits)) {
                py::dict e;
                e["i_bits"] = pt.i_bits;
                e["qdc_undetected"] = pt.undetected;
                e["qdc_success"] = pt.success;
                out.append(e);
            }
            return out;
        },
        py::arg("c") = 0.5, py::arg("d") = 3, py::arg("bits") = 128,
        "Survival curve over message sizes 0..bits.");

    mod.def(
        "run_session",
        [](int d, std::int64_t runs, double c, const std::string& attack,
           std::uint64_t seed, int workers, bool ir_independent_bases,
           std::optional<int> fixed_message) {
            const ProtocolConfig cfg =
                make_config(d, c, attack, seed, ir_independent_bases, fixed_message);
            SessionStats s;
            {
                py::gil_scoped_release release;
                s = run_session(cfg, runs, workers);
            }
            return stats_dict(s);
        },
        py::arg("d"), py::arg("runs") = 100000, py::arg("c") = 0.5,
        py::arg("attack") = "none", py::arg("seed") = 1, py::arg("workers") = 1,
        py::arg("ir_independent_bases") = false, py::arg("fixed_message") = py::none(),
        "Aggregate statistics over protocol runs. Equal seeds give equal "
        "results for any worker count.");

    mod.def(
        "run_records",
        [](int d, std::int64_t runs, double c, const std::string& attack,
           std::uint64_t seed, bool ir_independent_bases,
           std::optional<int> fixed_message) {
            const ProtocolConfig cfg =
                make_config(d, c, attack, seed, ir_independent_bases, fixed_message);
            std::vector<RunRecord> transcript;
            {
                py::gil_scoped_release release;
                run_session(cfg, runs, 1, &transcript);
            }
            py::list out;
            for (const RunRecord& r : transcript) out.append(record_dict(r));
            return out;
        },
        py::arg("d"), py::arg("runs") = 100, py::arg("c") = 0.5,
        py::arg("attack") = "none", py::arg("seed") = 1,
        py::arg("ir_independent_bases") = false, py::arg("fixed_message") = py::none(),
        "Per-run records of a session, in trial order.");

    mod.def(
        "scan_dimensions",
        [](const std::vector<int>& dims, std::int64_t runs_per_dim, double c,
           std::uint64_t seed, int workers) {
            std::vector<ScanRow> rows;
            {
                py::gil_scoped_release release;
                rows = scan_dimensions(dims, runs_per_dim, c, seed, workers);
            }
            py::list out;
            for (const ScanRow& r : rows) {
                py::dict e;
                e["d"] = r.d;
                e["pe_analytic"] = r.pe_analytic;
                e["pe_hat"] = r.pe_hat;
                e["ci_lo"] = r.ci_lo;
                e["ci_hi"] = r.ci_hi;
                e["n_control"] = r.n_control;
                out.append(e);
            }
            return out;
        },
        py::arg("dims"), py::arg("runs_per_dim") = 20000, py::arg("c") = 0.5,
        py::arg("seed") = 1, py::arg("workers") = 1,
        "Controlled-shift detection-rate scan across dimensions.");
}
