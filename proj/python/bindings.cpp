#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dlt/correspondence.hpp"
#include "dlt/errors.hpp"
#include "dlt/io.hpp"

namespace py = pybind11;
using namespace dlt;
using io::json;

// Structured objects cross the boundary as JSON text; dlt/__init__.py wraps them in dicts.
namespace {

std::string dump(const json& j) { return j.dump(); }

json parse(const std::string& s) { return json::parse(s); }

Matrix int_matrix(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) return Matrix(RingSpec::integers(), 0, 0);
    return Matrix::from_ints(RingSpec::integers(), rows);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact double L-theory kernels";

    static py::exception<Error> err(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetObject(err.ptr(), py::make_tuple(e.code(), e.what()).ptr());
        } catch (const json::exception& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<Laurent>(m, "Laurent")
        .def(py::init<long>(), py::arg("c") = 0)
        .def_static("parse", [](const std::string& s) { return Laurent::parse(s); })
        .def_static("z", &Laurent::z, py::arg("k") = 1)
        .def("lo", &Laurent::lo)
        .def("hi", &Laurent::hi)
        .def("is_zero", &Laurent::is_zero)
        .def("involute", &Laurent::involute)
        .def("coeff", [](const Laurent& p, int k) { return p.coeff(k).get_str(); })
        .def("eval", [](const Laurent& p, long q) { return p.eval(q).get_str(); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("__str__", [](const Laurent& p) { return p.str(); })
        .def("__repr__", [](const Laurent& p) { return "Laurent('" + p.str() + "')"; });

    m.def("alexander_polynomial", [](const std::vector<std::vector<long>>& V, int eps) {
        return alexander_polynomial(int_matrix(V), eps).str();
    }, py::arg("seifert"), py::arg("eps") = -1);
    m.def("levine_tristram", [](const std::vector<std::vector<long>>& V, const std::string& angle) {
        return levine_tristram(int_matrix(V), Angle::parse(angle));
    }, py::arg("seifert"), py::arg("angle"));
    m.def("fox_milnor_holds", [](const std::string& p) { return fox_milnor_holds(Laurent::parse(p)); });

    m.def("knot_report", [](const std::string& record, long budget) {
        return dump(io::to_json(knot_report(io::record_from_json(parse(record)), budget)));
    }, py::arg("record"), py::arg("budget") = 20000);
    m.def("dw_invariants", [](const std::string& form) {
        return dump(io::to_json(dw_invariants(io::seifert_from_json(parse(form)))));
    });
    m.def("lagrangian_search", [](const std::string& form, bool hyperbolic, long budget) -> py::object {
        SearchOptions opts;
        opts.budget = budget;
        auto r = lagrangian_search(io::seifert_from_json(parse(form)),
                                   hyperbolic ? SearchMode::Hyperbolic : SearchMode::Metabolic, opts);
        if (!r) return py::none();
        json out = json::array();
        for (const auto& L : *r) out.push_back(io::to_json(L.inclusion));
        return py::str(dump(out));
    }, py::arg("form"), py::arg("hyperbolic") = true, py::arg("budget") = 20000);

    m.def("reduce", [](const std::string& structure, bool effects) {
        return dump(io::to_json(reduce(io::structure_from_json(parse(structure)), {effects})));
    }, py::arg("structure"), py::arg("compute_effects") = true);
    m.def("dl_invariants", [](const std::string& structure) {
        return dump(io::to_json(dl_invariants(io::structure_from_json(parse(structure)))));
    });
    m.def("skew_suspend", [](const std::string& structure) {
        return dump(io::to_json(skew_suspend(io::structure_from_json(parse(structure)))));
    });
    m.def("is_poincare", [](const std::string& structure) {
        return is_poincare(io::structure_from_json(parse(structure)));
    });
    m.def("verify", [](const std::string& cert) {
        Verdict v = verify_double_cobordism(io::certificate_from_json(parse(cert)));
        return py::make_tuple(v.valid, v.reason);
    });
    m.def("p_acyclic", [](const std::string& complex) { return p_acyclic_test(io::complex_from_json(parse(complex))); });
}
