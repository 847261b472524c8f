#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "diagcx/cli.hpp"
#include "diagcx/errors.hpp"
#include "diagcx/forests.hpp"
#include "diagcx/homcalc.hpp"
#include "diagcx/present.hpp"
#include "diagcx/series.hpp"

namespace py = pybind11;
using namespace dcx;

namespace {

std::vector<FiniteGroup> cyclic_factors(int n, const std::vector<int>& orders) {
  std::vector<FiniteGroup> gs;
  for (int m : orders) gs.push_back(cyclic_group(m));
  if (gs.size() == 1) gs.resize(static_cast<std::size_t>(n), gs.front());
  return gs;
}

}  // namespace

PYBIND11_MODULE(_diagcx, m) {
  m.doc() = "Diagonal complexes, planted forests and their series";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);

  m.def(
      "enumerate_forests",
      [](int n, bool include_empty, unsigned workers) {
        std::vector<std::vector<int>> out;
        for (const auto& f : enumerate_forests(n, include_empty, workers)) out.push_back(f.parent());
        return out;
      },
      py::arg("n"), py::arg("include_empty") = false, py::arg("workers") = 1,
      "Parent arrays (0-based, -1 for roots) of all planted forests on n vertices.");

  m.def(
      "prufer_encode", [](int n, const std::vector<int>& parent) { return prufer_encode(PlantedForest(n, parent)); },
      py::arg("n"), py::arg("parent"));
  m.def(
      "prufer_decode", [](const std::vector<int>& word) { return prufer_decode(word).parent(); }, py::arg("word"));

  m.def(
      "orbits",
      [](int n, const std::vector<int>& multiplicities) {
        std::vector<py::dict> out;
        for (const auto& o : orbit_decomposition(n, multiplicities)) {
          py::dict d;
          d["parent"] = o.representative.forest.parent();
          d["coloring"] = o.representative.coloring;
          d["orbit_size"] = o.orbit_size;
          d["stabilizer_order"] = o.stabilizer_order;
          out.push_back(d);
        }
        return out;
      },
      py::arg("n"), py::arg("multiplicities"));

  m.def(
      "series_wh_free", [](int n) { return series_Wh_free(n).to_string(); }, py::arg("n"));
  m.def("wh_free_euler_characteristic", &wh_free_euler_characteristic, py::arg("n"));
  m.def(
      "series_wh_zp", [](int n, int p, int degree) { return series_Wh_Zp(n, p, degree).to_string(); }, py::arg("n"),
      py::arg("p"), py::arg("degree"));
  m.def(
      "hilbert_polynomial", [](int n) { return hilbert_polynomial(build_gamma_Fn(n)).to_string(); }, py::arg("n"));

  m.def(
      "torus_betti", [](int n, unsigned workers) { return torus_model_betti(build_gamma_Fn(n), {}, workers); },
      py::arg("n"), py::arg("workers") = 1);

  m.def(
      "smith_normal_form",
      [](const std::vector<std::vector<long>>& rows) {
        std::vector<std::string> out;
        for (const auto& d : smith_normal_form(IntegerMatrix::from_rows(rows))) out.push_back(d.get_str());
        return out;
      },
      py::arg("rows"), "Nonzero invariant factors, as decimal strings.");

  m.def(
      "verify_presentation",
      [](int n, const std::vector<int>& orders, const std::string& relations, unsigned workers) {
        const auto groups = cyclic_factors(n, orders);
        Presentation p;
        if (relations == "fr") p = fr_presentation(n, groups);
        else if (relations == "full") p = dc_presentation(build_gamma_Fn(n), groups, n);
        else if (relations == "flat") p = fr_flat_presentation(n, groups, true);
        else if (relations == "flat-literal") p = fr_flat_presentation(n, groups, false);
        else throw std::invalid_argument("relations must be fr, full, flat or flat-literal");
        const FreeProduct fp(groups);
        const auto rep = verify_relations(p, fp, forest_realization(n, fp), workers);
        py::dict d;
        d["generators"] = p.generators.size();
        d["relations"] = p.relations.size();
        d["test_words"] = rep.test_words;
        d["failures"] = rep.failures();
        return d;
      },
      py::arg("n"), py::arg("orders"), py::arg("relations") = "fr", py::arg("workers") = 1,
      "Checks a presentation over cyclic factors; one order is repeated for every factor.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line tool in process; returns (exit code, stdout, stderr).");
}
