#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thinville/report.hpp"

namespace py = pybind11;
using namespace thinville;

namespace {

using Exponents = std::vector<int>;

GroupElement to_element(const PcGroup& g, const Exponents& e) {
  if (static_cast<int>(e.size()) != g.rank()) throw py::value_error("expected " + std::to_string(g.rank()) + " exponents");
  std::vector<std::uint8_t> v;
  for (int x : e) v.push_back(static_cast<std::uint8_t>(((x % g.prime()) + g.prime()) % g.prime()));
  return g.element(std::move(v));
}

Exponents to_list(const GroupElement& x) { return Exponents(x.exponents.begin(), x.exponents.end()); }

py::dict triple_dict(const GeneratingTriple& t) {
  py::dict d;
  d["x"] = to_list(t.x);
  d["y"] = to_list(t.y);
  d["xy"] = to_list(t.xy);
  d["orders"] = std::vector<std::uint64_t>(t.orders.begin(), t.orders.end());
  return d;
}

py::dict certificate_dict(const BeauvilleCertificate& c) {
  py::dict d;
  d["outcome"] = to_string(c.outcome);
  d["mode"] = to_string(c.mode);
  d["reason"] = c.reason;
  d["first"] = c.first ? py::object(triple_dict(*c.first)) : py::none();
  d["second"] = c.second ? py::object(triple_dict(*c.second)) : py::none();
  d["pairs_examined"] = c.stats.pairs_examined;
  return d;
}

// Groups keep their own copy of the presentation; Python objects own them.
struct Group {
  explicit Group(PcPresentation p, std::string id = {}) : g(std::move(p)), id(std::move(id)) {}
  PcGroup g;
  std::string id;
};

Group load(const std::string& target) {
  const auto e = resolve(target);
  return Group(e.presentation, e.id);
}

}  // namespace

PYBIND11_MODULE(_thinville, m) {
  m.doc() = "Finite p-groups given by power-commutator presentations";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<PreconditionError>(m, "PreconditionError", error);

  py::class_<Group>(m, "Group")
      .def(py::init([](const std::string& text) { return Group(parse_presentation(text)); }), py::arg("presentation"))
      .def_readonly("id", &Group::id)
      .def_property_readonly("prime", [](const Group& s) { return s.g.prime(); })
      .def_property_readonly("rank", [](const Group& s) { return s.g.rank(); })
      .def_property_readonly("order", [](const Group& s) { return s.g.order(); })
      .def("presentation", [](const Group& s) { return format_presentation(s.g.presentation()); })
      .def("generator", [](const Group& s, int i) { return to_list(s.g.generator(i)); })
      .def("multiply", [](const Group& s, const Exponents& a, const Exponents& b) {
        return to_list(s.g.multiply(to_element(s.g, a), to_element(s.g, b)));
      })
      .def("inverse", [](const Group& s, const Exponents& a) { return to_list(s.g.inverse(to_element(s.g, a))); })
      .def("power", [](const Group& s, const Exponents& a, long long k) {
        return to_list(s.g.power(to_element(s.g, a), k));
      })
      .def("commutator", [](const Group& s, const Exponents& a, const Exponents& b) {
        return to_list(s.g.commutator(to_element(s.g, a), to_element(s.g, b)));
      })
      .def("element_order", [](const Group& s, const Exponents& a) { return s.g.element_order(to_element(s.g, a)); })
      .def("collect", [](const Group& s, const std::vector<std::pair<int, long long>>& word) {
        std::vector<Term> w;
        for (auto [gen, e] : word) w.push_back({gen, e});
        return to_list(s.g.collect(w));
      })
      .def("nilpotency_class", [](const Group& s) { return nilpotency_class(s.g); })
      .def("widths", [](const Group& s) { return lower_central_series(s.g).widths; })
      .def("center_order", [](const Group& s) { return center(s.g).order(s.g); })
      .def("is_metabelian", [](const Group& s) { return is_metabelian(s.g); })
      .def("is_maximal_class", [](const Group& s) { return is_maximal_class(s.g); })
      .def("is_thin", [](const Group& s) { return is_thin(s.g).thin; })
      .def("normal_subgroup_count", [](const Group& s, std::uint64_t budget) { return normal_subgroups(s.g, budget).size(); },
           py::arg("budget") = kDefaultBudget)
      .def("lattice_profile", [](const Group& s) { return format_profile(lattice_profile(s.g)); })
      .def("lattice_dot", [](const Group& s) { return lattice_dot(s.g); })
      .def("beauville", [](const Group& s, const std::string& mode, std::uint64_t budget) {
        if (mode != "automatic" && mode != "exhaustive" && mode != "guided")
          throw py::value_error("mode must be automatic, exhaustive or guided");
        BeauvilleCertificate c;
        {
          py::gil_scoped_release release;
          if (mode == "automatic") {
            c = automatic_search(s.g, budget);
          } else {
            SearchOptions o;
            o.mode = mode == "exhaustive" ? SearchMode::exhaustive : SearchMode::guided;
            o.budget = budget;
            c = find_beauville_structure(s.g, o);
          }
        }
        auto d = certificate_dict(c);
        d["verified"] = c.outcome == Outcome::found && verify_certificate(s.g, c);
        return d;
      }, py::arg("mode") = "automatic", py::arg("budget") = kDefaultBudget)
      .def("case_classification", [](const Group& s) {
        const auto c = classify_theorem_a(s.g);
        py::dict d;
        d["case"] = to_string(c.tag);
        d["predicted_beauville"] = c.predicted_beauville;
        d["exponent_p_maximal"] = c.exponent_p_maximal;
        return d;
      })
      .def("analyze", [](const Group& s, bool search) {
        AnalyzeOptions o;
        o.beauville = search ? BeauvilleMode::automatic : BeauvilleMode::skip;
        const auto r = analyze(s.g, s.id.empty() ? "input" : s.id, o);
        py::dict d;
        const auto flat = format_flat(r);
        std::size_t start = 0;
        while (start < flat.size()) {
          const auto end = flat.find('\n', start);
          const auto line = flat.substr(start, end - start);
          const auto eq = line.find('=');
          if (eq != std::string::npos) d[py::str(line.substr(0, eq))] = line.substr(eq + 1);
          start = end == std::string::npos ? flat.size() : end + 1;
        }
        return d;
      }, py::arg("search") = true)
      .def("__repr__", [](const Group& s) {
        return "<Group " + (s.id.empty() ? std::string("order ") : s.id + " order ") + std::to_string(s.g.prime()) +
               "^" + std::to_string(s.g.rank()) + ">";
      });

  m.def("load", &load, py::arg("target"), "Builtin id, catalog id or presentation file");
  m.def("builtin", [](const std::string& id) { return Group(builtin(id), id); });
  m.def("catalog_ids", [] {
    std::vector<std::string> ids;
    for (const auto& e : load_catalog(catalog_directory())) ids.push_back(e.id);
    return ids;
  });
  m.def("check_consistency", [](const std::string& text) { return check_consistency(parse_presentation(text)).consistent; });
  m.def("cij", &cij, py::arg("i"), py::arg("j"), py::arg("p"));
  m.def("quadratic_nonresidues", &quadratic_nonresidues);
  m.def("catanese_check", &catanese_check);
  m.def("formulas", [](int p) {
    const auto r = formulas_suite(p);
    return py::make_tuple(!r.failed(), r.format());
  });
}
