#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kcollapse/bounds.hpp"
#include "kcollapse/cli.hpp"
#include "kcollapse/errors.hpp"
#include "kcollapse/family.hpp"
#include "kcollapse/json_io.hpp"

namespace py = pybind11;
using namespace kcollapse;

namespace {

std::string verify_json(const std::string& family_json, int k)
{
    Json j = Json::parse(family_json);
    if (family_is_float(j)) {
        return report_to_json(check_k_collapsing(family_from_json<double>(j), k)).dump();
    }
    return report_to_json(check_k_collapsing(family_from_json<Rational>(j), k)).dump();
}

} // namespace

PYBIND11_MODULE(_kcollapse, m)
{
    m.doc() = "k-collapsing vector families: verification, bounds and constructions";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<InexactError>(m, "InexactError", PyExc_ArithmeticError);

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a command-line invocation; returns (exit_code, stdout, stderr).");

    m.def("gamma", [](int k) { return gamma_k(k).gamma; }, py::arg("k"));

    m.def(
        "best_bounds", [](int k, int d) { return best_bounds_to_json(best_bounds(k, d)).dump(); }, py::arg("k"),
        py::arg("d"), "Best known bounds as a JSON string.");

    m.def("verify", &verify_json, py::arg("family_json"), py::arg("k"),
          "Check the k-collapsing condition of a family given as JSON; returns the report as JSON.");
}
