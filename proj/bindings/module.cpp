#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relcx/jsonio.hpp"

namespace py = pybind11;
using namespace relcx;

namespace {

GroupSpec make_group(const std::string& name, int n, long long q,
                     long long d, int e) {
    auto F = field_create_q(q);
    if (name == "PSL" || name == "SL") return GroupSpec::SL(n, F);
    if (name == "PGL" || name == "GL") return GroupSpec::GL(n, F);
    if (name == "PSigmaL" || name == "SigmaL") return GroupSpec::SigmaL(n, F);
    if (name == "PGammaL" || name == "GammaL") return GroupSpec::GammaL(n, F);
    if (name == "param") return GroupSpec::parametric(n, F, d, e);
    throw std::invalid_argument("unknown group preset: " + name);
}

py::dict json_to_dict(const nlohmann::json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact relational complexity computations for linear groups on subspaces";

    py::class_<Field, std::shared_ptr<Field>>(m, "Field")
        .def_property_readonly("p", &Field::p)
        .def_property_readonly("f", &Field::f)
        .def_property_readonly("q", &Field::q)
        .def_property_readonly("omega", &Field::omega)
        .def_property_readonly("modulus", &Field::modulus)
        .def("add", &Field::add)
        .def("sub", &Field::sub)
        .def("mul", &Field::mul)
        .def("div", &Field::div)
        .def("inv", &Field::inv)
        .def("pow", &Field::pow)
        .def("frobenius", &Field::frobenius)
        .def("power_subgroup_member", &Field::power_subgroup_member)
        .def("__repr__", [](const Field& F) {
            return "Field(GF(" + std::to_string(F.q()) + "))";
        });

    m.def(
        "field",
        [](long long p, int f, long long max_q) {
            return std::const_pointer_cast<Field>(field_create(p, f, max_q));
        },
        py::arg("p"), py::arg("f"), py::arg("max_q") = Field::kDefaultMaxQ,
        "GF(p^f) with the canonical modulus and primitive element");

    m.def("omega_primes", &omega_primes, py::arg("k"),
          "number of distinct prime divisors");

    m.def(
        "subspace_count",
        [](long long q, int n, int mm) { return subspace_count(q, n, mm).str(); },
        py::arg("q"), py::arg("n"), py::arg("m"),
        "number of m-subspaces of F_q^n, as a decimal string");

    m.def(
        "group_order",
        [](const std::string& g, int n, long long q) {
            return make_group(g, n, q, 0, 0).order().str();
        },
        py::arg("group"), py::arg("n"), py::arg("q"));

    m.def(
        "projective_order",
        [](const std::string& g, int n, long long q) {
            return make_group(g, n, q, 0, 0).projective_order().str();
        },
        py::arg("group"), py::arg("n"), py::arg("q"));

    m.def(
        "theorem_bounds",
        [](const std::string& g, int n, long long q, int mm) {
            return json_to_dict(bounds_to_json(theorem_bounds(make_group(g, n, q, 0, 0), mm)));
        },
        py::arg("group"), py::arg("n"), py::arg("q"), py::arg("m") = 1,
        "published interval for RC with provenance tags");

    m.def(
        "rc_compute",
        [](const std::string& g, int n, long long q, int mm, int threads,
           double budget_secs, bool ibase, long long max_omega) {
            ActionHandle act(make_group(g, n, q, 0, 0), mm, max_omega);
            RCOptions opts;
            opts.threads = threads;
            opts.budget_secs = budget_secs;
            opts.compute_ibase = ibase;
            return json_to_dict(report_to_json(rc_compute(act, opts)));
        },
        py::arg("group"), py::arg("n"), py::arg("q"), py::arg("m") = 1,
        py::arg("threads") = 1, py::arg("budget_secs") = 0.0,
        py::arg("ibase") = false, py::arg("max_omega") = kDefaultOmegaBound,
        "exact relational complexity (or a bracketing interval under budget)");

    m.def(
        "height",
        [](const std::string& g, int n, long long q, int mm) {
            ActionHandle act(make_group(g, n, q, 0, 0), mm);
            return height_compute(act);
        },
        py::arg("group"), py::arg("n"), py::arg("q"), py::arg("m") = 1);

    m.def(
        "ibase",
        [](const std::string& g, int n, long long q, int mm) {
            ActionHandle act(make_group(g, n, q, 0, 0), mm);
            return ibase_compute(act);
        },
        py::arg("group"), py::arg("n"), py::arg("q"), py::arg("m") = 1);

    m.def(
        "witness_package",
        [](const std::string& tag, int n, long long q, int mm, int psi,
           const std::string& group) {
            auto F = field_create_q(q);
            WitnessPackage pkg = [&]() -> WitnessPackage {
                auto H = [&](const std::string& dflt) {
                    return make_group(group.empty() ? dflt : group, n, q, 0, 0);
                };
                if (tag == "general-n") return w_general_n(n, F, H("PSL"));
                if (tag == "n2-case-a")
                    return w_n2_case_a(F, H(F->p() == 2 ? "PSL" : "PGL"));
                if (tag == "n2-case-b") return w_n2_case_b(F, H("PSL"));
                if (tag == "psl3") return w_psl3(F, H("PSL"));
                if (tag == "gl-lower") return w_gl_lower(n, F);
                if (tag == "gammal") return w_gammal(n, F, psi);
                if (tag == "general-np2") return w_general_np2(n, F, H("PSigmaL"));
                if (tag == "psl-lower") return w_psl_lower(n, F, H("PSL"));
                if (tag == "mspaces") return w_mspaces(n, mm, F, H("PSL"));
                throw std::invalid_argument("unknown witness tag: " + tag);
            }();
            VerifyReport rep = verify(pkg);
            py::dict out;
            out["package"] = json_to_dict(package_to_json(pkg));
            out["report"] = json_to_dict(verify_to_json(rep));
            out["pass"] = rep.pass();
            return out;
        },
        py::arg("tag"), py::arg("n") = 0, py::arg("q") = 0, py::arg("m") = 1,
        py::arg("psi") = 1, py::arg("group") = std::string(),
        "build a lower-bound witness package and machine-verify it");

    m.def(
        "verify_package_json",
        [](const std::string& text) {
            WitnessPackage pkg = package_from_json(nlohmann::json::parse(text));
            return json_to_dict(verify_to_json(verify(pkg)));
        },
        py::arg("package_json"), "re-verify a serialized witness package");

    m.def(
        "rc_bruteforce",
        [](const std::string& g, int n, long long q, int mm, int k_max) {
            ActionHandle act(make_group(g, n, q, 0, 0), mm);
            return rc_bruteforce(act, k_max);
        },
        py::arg("group"), py::arg("n"), py::arg("q"), py::arg("m") = 1,
        py::arg("k_max") = 4, "literal-definition oracle for tiny actions");
}
