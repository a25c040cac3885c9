#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slogic/zoodb.hpp"

namespace py = pybind11;
using namespace slogic;

namespace {

  Theory theory_of(const std::vector<std::string>& formulas) {
    Theory t;
    for (const auto& f: formulas) t.insert(parse_sformula(f));
    return t;
  }

  Database database_of(const std::string& text) {
    auto r = ingest(text, "<python>");
    if (!r.ok()) {
      std::string msg;
      for (const auto& d: r.diagnostics) msg += d.render() + "\n";
      throw py::value_error(msg);
    }
    return std::move(*r.db);
  }

  Engine engine_of(const std::string& name) {
    auto e = parse_engine(name);
    if (!e) throw py::value_error("unknown engine '" + name + "'");
    return *e;
  }

  std::string lower(std::string s) {
    for (auto& c: s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  std::string decide_json(const std::vector<std::string>& formulas, const std::string& q) {
    auto d = decide(theory_of(formulas), parse_sformula(q));
    nlohmann::json j{{"verdict", d.kind == VerdictKind::Consequence ? "consequence" : "not_consequence"},
                     {"tableau", tableau_to_json(d.tableau)}};
    if (d.countermodel) j["countermodel"] = frame_to_json(*d.countermodel);
    return j.dump();
  }

  std::string oracle_json(const std::vector<std::string>& formulas, const std::string& q) {
    auto v = oracle_consequence(theory_of(formulas), parse_sformula(q));
    nlohmann::json j{{"verdict", v.kind == VerdictKind::Consequence ? "consequence" : "not_consequence"}};
    if (v.countermodel) j["countermodel"] = frame_to_json(*v.countermodel);
    return j.dump();
  }

  std::string query_json(const std::string& text, const std::string& q, const std::string& engine) {
    Database db = database_of(text);
    QueryAnswer a = query(db, parse_sformula(q), engine_of(engine));
    nlohmann::json j{{"verdict", lower(answer_name(a.kind))}};
    if (a.evidence) {
      j["engine"] = engine_name(a.evidence->engine);
      if (a.evidence->trace) j["trace"] = trace_to_json(*a.evidence->trace);
      if (a.evidence->tableau) j["tableau"] = tableau_to_json(*a.evidence->tableau);
    }
    if (a.frame_for) j["frame_for"] = frame_to_json(*a.frame_for);
    if (a.frame_against) j["frame_against"] = frame_to_json(*a.frame_against);
    if (a.inconsistency) j["conflict"] = render_conflict(*a.inconsistency);
    return j.dump();
  }

  std::string check_json(const std::string& text, const std::string& engine) {
    Database db = database_of(text);
    CheckResult c = check(db, engine_of(engine));
    nlohmann::json j{{"consistent", c.consistent}, {"engine", engine_name(c.engine)},
                     {"fragment", fragment_name(db.fragment_class())}};
    if (c.model) j["model"] = frame_to_json(*c.model);
    if (!c.consistent) j["conflict"] = render_conflict(c);
    return j.dump();
  }

  std::string matrix_json(const std::string& text, const std::string& engine) {
    auto m = matrix(database_of(text), engine_of(engine));
    auto j = matrix_to_json(m);
    j["dot"] = export_dot(m);
    return j.dump();
  }

  std::string saturate_json(const std::string& text, std::size_t max_ante) {
    Database db = database_of(text);
    return closure_to_json(saturate_database(db, text, max_ante)).dump();
  }

} // namespace

PYBIND11_MODULE(_slogic, m) {
  m.doc() = "Decision procedures for strict implication and nonimplication";
  m.attr("ENGINE_VERSION") = kEngineVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<FragmentError>(m, "FragmentError", PyExc_ValueError);
  py::register_exception<EngineError>(m, "EngineError", PyExc_ValueError);

  m.def("normalize", [](const std::string& s) { return render(parse_sformula(s)); },
        "Parse an s-formula and render it canonically.", py::arg("formula"));
  m.def("strict_negation", [](const std::string& s) { return render(strict_negation(parse_sformula(s))); },
        py::arg("formula"));
  m.def("satisfies", [](const std::string& frame, const std::vector<std::string>& formulas) {
          return satisfies_theory(frame_from_json(nlohmann::json::parse(frame)), theory_of(formulas));
        }, "Whether a frame (JSON) satisfies every formula.", py::arg("frame_json"), py::arg("formulas"));
  m.def("decide_json", &decide_json, py::arg("theory"), py::arg("query"));
  m.def("oracle_json", &oracle_json, py::arg("theory"), py::arg("query"));
  m.def("query_json", &query_json, py::arg("slt_text"), py::arg("query"), py::arg("engine") = "auto");
  m.def("check_json", &check_json, py::arg("slt_text"), py::arg("engine") = "auto");
  m.def("matrix_json", &matrix_json, py::arg("slt_text"), py::arg("engine") = "auto");
  m.def("saturate_json", &saturate_json, py::arg("slt_text"), py::arg("max_ante") = 3);
}
