// Thin Python bindings: matrices cross the boundary as objects, structured
// results (verdicts, trees, witnesses) as JSON strings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "json.hpp"
#include "slackmat/decompose.hpp"
#include "slackmat/graph.hpp"
#include "slackmat/json_io.hpp"
#include "slackmat/matrix.hpp"
#include "slackmat/matroid.hpp"
#include "slackmat/polyhedra.hpp"
#include "slackmat/products.hpp"
#include "slackmat/stab.hpp"

namespace py = pybind11;
using namespace slackmat;
using nlohmann::json;

namespace {

RowSet rowset_from(const std::vector<int>& rows) { return RowSet(rows); }

json verdict_json(const SlackVerdict& v) {
  json j;
  j["status"] = v.status == SlackStatus::yes    ? "yes"
                : v.status == SlackStatus::no   ? "no"
                                                : "too_large";
  if (v.status == SlackStatus::yes) j["dim"] = v.dim;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

}  // namespace

PYBIND11_MODULE(pyslackmat, m) {
  m.doc() = "slack matrices, k-products, and their recognition";

  py::class_<RationalMatrix>(m, "Matrix")
      .def_static("from_text",
                  [](const std::string& s) {
                    std::istringstream in(s);
                    return RationalMatrix::read(in);
                  })
      .def_static("from_json",
                  [](const std::string& s) { return matrix_from_json(json::parse(s)); })
      .def("to_text", &RationalMatrix::to_text)
      .def("to_json", [](const RationalMatrix& S) { return matrix_to_json(S).dump(); })
      .def_property_readonly("rows", &RationalMatrix::rows)
      .def_property_readonly("cols", &RationalMatrix::cols)
      .def("rank", &RationalMatrix::rank)
      .def("at", [](const RationalMatrix& S, int i, int j) { return format_rational(S.at(i, j)); })
      .def("row_labels", &RationalMatrix::row_labels)
      .def("col_labels", &RationalMatrix::col_labels)
      .def("__eq__", [](const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
      })
      .def("__repr__", [](const RationalMatrix& S) {
        return "Matrix(" + std::to_string(S.rows()) + "x" + std::to_string(S.cols()) + ")";
      });

  m.def("hypersimplex_slack", &hypersimplex_slack, py::arg("n"), py::arg("k"));
  m.def("one_product", &one_product, py::arg("s1"), py::arg("s2"));
  m.def(
      "k_product",
      [](const RationalMatrix& s1, const std::vector<int>& left, const RationalMatrix& s2,
         const std::vector<int>& right) {
        return k_product(s1, SpecialRowTuple{left}, s2, SpecialRowTuple{right});
      },
      py::arg("s1"), py::arg("special_left"), py::arg("s2"), py::arg("special_right"));

  m.def(
      "verify_slack",
      [](const RationalMatrix& S, unsigned long long max_candidates) {
        return verdict_json(is_slack_matrix(S, max_candidates)).dump();
      },
      py::arg("matrix"), py::arg("max_candidates") = 2000000ULL);

  m.def(
      "mutual_information",
      [](const RationalMatrix& S, const std::vector<int>& rows) {
        return mutual_information(S, rowset_from(rows));
      },
      py::arg("matrix"), py::arg("rows"));
  m.def(
      "is_independent_partition",
      [](const RationalMatrix& S, const std::vector<int>& rows) {
        return is_independent_partition(S, rowset_from(rows));
      },
      py::arg("matrix"), py::arg("rows"));

  m.def(
      "decompose_kproduct",
      [](const RationalMatrix& S, int k) -> py::object {
        auto kp = recognize_kproduct(S, k);
        if (!kp) return py::none();
        return py::str(tree_to_json(tree_from_kproduct(S, *kp)).dump());
      },
      py::arg("matrix"), py::arg("k"));

  m.def(
      "irreducible_blocks",
      [](const RationalMatrix& S) {
        std::vector<std::vector<std::string>> out;
        for (const RowSet& b : irreducible_partition(S)) {
          std::vector<std::string> labels;
          for (int i : b.indices()) labels.push_back(S.row_label(i));
          out.push_back(std::move(labels));
        }
        return out;
      },
      py::arg("matrix"));

  m.def(
      "base_polytope_slack",
      [](const std::string& tree_json) {
        return base_polytope_slack(matroid_from_json(json::parse(tree_json))).matrix;
      },
      py::arg("tree_json"));
  m.def(
      "recognize_matroid",
      [](const RationalMatrix& S) -> py::object {
        MatroidRecognition r = recognize_matroid_slack(S);
        if (!r.ok) return py::none();
        json j{{"tree", matroid_to_json(r.tree)},
               {"ground", ground_set(r.tree)},
               {"rank", matroid_rank(r.tree)},
               {"bases", r.bases}};
        return py::str(j.dump());
      },
      py::arg("matrix"));

  m.def(
      "stab_slack",
      [](const std::string& graph_text) {
        std::istringstream in(graph_text);
        return stab_slack(Graph::read(in));
      },
      py::arg("graph_text"));
  m.def(
      "recognize_perfect_stab",
      [](const RationalMatrix& S) -> py::object {
        auto w = recognize_stab_slack(S);
        if (!w) return py::none();
        return py::str(stab_witness_to_json(*w).dump());
      },
      py::arg("matrix"));
}
