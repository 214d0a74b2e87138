#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hallpair/pipeline.hpp"
#include "hallpair/verify.hpp"

namespace py = pybind11;
using namespace hallpair;

namespace {

Geometry geometry_for(const std::string& name_or_path, int degree, const std::string& chi) {
    return resolve_geometry(name_or_path, degree, chi);
}

py::dict line_to_dict(const ConsistencyLine& l) {
    py::dict d;
    d["name"] = l.name;
    d["available"] = l.available;
    d["value"] = l.available ? l.value.str() : "";
    d["error"] = l.error;
    return d;
}

}  // namespace

PYBIND11_MODULE(_hallpair, m) {
    m.doc() = "exact Hall-algebra stack-function calculator for rank-2 stable-pair invariants";

    py::register_exception<CalcError>(m, "CalcError");

    m.def(
        "compute",
        [](const std::string& geometry, int degree, int rank, const std::string& chi) {
            Geometry g = geometry_for(geometry, degree, chi);
            if (rank == 2) return compute_direct(g.pair_class(degree, rank), g).invariant.value.str();
            return wallcrossing_general(g.pair_class(degree, 0), rank, g).value.str();
        },
        py::arg("geometry") = "conifold", py::arg("degree") = 1, py::arg("rank") = 2,
        py::arg("chi") = "", "invariant of the (degree, rank) class as a canonical polynomial");

    m.def(
        "trace",
        [](const std::string& geometry, int degree, const std::string& chi) {
            Geometry g = geometry_for(geometry, degree, chi);
            DirectResult r = compute_direct(g.pair_class(degree, 2), g);
            return r.trace.render_text();
        },
        py::arg("geometry") = "conifold", py::arg("degree") = 1, py::arg("chi") = "",
        "full derivation trace of the rank-2 computation");

    m.def(
        "wallcrossing",
        [](const std::string& geometry, int degree, int rank, const std::string& chi) {
            Geometry g = geometry_for(geometry, degree, chi);
            if (rank == 2) return wallcrossing_rank2(g.pair_class(degree, 2), g).value.str();
            return wallcrossing_general(g.pair_class(degree, 0), rank, g).value.str();
        },
        py::arg("geometry") = "conifold", py::arg("degree") = 1, py::arg("rank") = 2,
        py::arg("chi") = "", "the DT wall-crossing sum for the class");

    m.def(
        "consistency",
        [](const std::string& geometry, int degree, const std::string& chi) {
            Geometry g = geometry_for(geometry, degree, chi);
            ConsistencyReport rep = consistency_report(g.pair_class(degree, 2), g);
            py::dict d;
            d["class"] = rep.cls.str();
            d["all_agree"] = rep.all_agree;
            py::list lines;
            for (const auto& l : rep.lines) lines.append(line_to_dict(l));
            d["lines"] = lines;
            py::list verdicts;
            for (const auto& v : rep.verdicts) verdicts.append(v);
            d["verdicts"] = verdicts;
            return d;
        },
        py::arg("geometry") = "conifold", py::arg("degree") = 1, py::arg("chi") = "",
        "direct / formula / wall-crossing comparison table");

    m.def(
        "euler_pairing",
        [](const std::string& geometry, int degree, const std::string& chi, int deg_a, int rank_a,
           int deg_b, int rank_b) {
            Geometry g = geometry_for(geometry, degree, chi);
            return g.euler_pairing(g.pair_class(deg_a, rank_a), g.pair_class(deg_b, rank_b)).str();
        },
        py::arg("geometry") = "conifold", py::arg("degree") = 1, py::arg("chi") = "",
        py::arg("deg_a") = 0, py::arg("rank_a") = 1, py::arg("deg_b") = 1, py::arg("rank_b") = 1);

    m.def(
        "verify",
        [](const std::string& only) {
            py::list out;
            for (const auto& c : run_verify(only)) {
                py::dict d;
                d["suite"] = c.suite;
                d["name"] = c.name;
                d["status"] = c.status == CheckResult::Status::Pass   ? "pass"
                              : c.status == CheckResult::Status::Warn ? "warn"
                                                                      : "fail";
                d["detail"] = c.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("only") = "", "run the built-in golden checks");
}
