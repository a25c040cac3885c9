#include "slogic/zoodb.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace slogic {

  const char* fragment_name(FragmentClass c) noexcept {
    switch (c) {
      case FragmentClass::F1: return "F1";
      case FragmentClass::F2: return "F2";
      case FragmentClass::General: return "general";
    }
    return "?";
  }

  std::string Diagnostic::render() const {
    std::string out = where.render();
    if (column) out += ":" + std::to_string(column);
    out += severity == Severity::Error ? ": error: " : ": warning: ";
    return out + message;
  }

  // ---- Database ----

  std::vector<F2Fact> Database::fragment_facts() const {
    std::vector<F2Fact> res;
    for (const auto& r: records_) {
      if (!r.fragment) throw FragmentError(FragmentError::Code::NotInFragment, render(r.fact) + " is not in F2");
      F2Fact f = *r.fragment;
      f.provenance = r.provenance;
      res.push_back(std::move(f));
    }
    return res;
  }

  void Database::add(FactRecord record) {
    if (!record.fragment) record.fragment = to_f2(record.fact);
    if (!record.fragment) class_ = FragmentClass::General;
    else if (!record.fragment->in_f1() && class_ == FragmentClass::F1) class_ = FragmentClass::F2;
    auto vs = record.fact.vars();
    declared_.insert(vs.begin(), vs.end());
    theory_.insert(record.fact);
    records_.push_back(std::move(record));
  }

  bool operator==(const Database& a, const Database& b) {
    if (a.declared_ != b.declared_ || a.records_.size() != b.records_.size()) return false;
    for (std::size_t i = 0; i < a.records_.size(); i++)
      if (a.records_[i].fact != b.records_[i].fact || a.records_[i].provenance != b.records_[i].provenance) return false;
    return true;
  }

  namespace {

    std::string trim(std::string_view s) {
      std::size_t b = 0, e = s.size();
      while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) b++;
      while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) e--;
      return std::string(s.substr(b, e - b));
    }

    // Position of the first `#` outside a double-quoted string.
    std::size_t comment_start(std::string_view line) {
      bool quoted = false;
      for (std::size_t i = 0; i < line.size(); i++) {
        if (quoted && line[i] == '\\') { i++; continue; }
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == '#' && !quoted) return i;
      }
      return line.size();
    }

    std::optional<std::string> parse_quoted(std::string_view s) {
      if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::nullopt;
      std::string out;
      for (std::size_t i = 1; i + 1 < s.size(); i++) {
        if (s[i] == '\\') {
          if (i + 2 >= s.size()) return std::nullopt;
          out += s[++i];
        } else if (s[i] == '"') {
          return std::nullopt;
        } else {
          out += s[i];
        }
      }
      return out;
    }

    std::string quote(std::string_view s) {
      std::string out = "\"";
      for (char c: s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }

  } // namespace

  IngestResult ingest(std::string_view text, const std::string& source_name) {
    IngestResult res;
    Database db;
    bool errors = false;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view raw = text.substr(pos, eol - pos);
      pos = eol + 1;
      line_no++;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      SourceLine where{source_name, line_no};
      auto error = [&](std::size_t col, std::string msg) {
        res.diagnostics.push_back({Diagnostic::Severity::Error, where, col, std::move(msg)});
        errors = true;
      };

      std::string_view body = raw.substr(0, comment_start(raw));
      std::string line = trim(body);
      if (line.empty()) continue;
      std::size_t indent = body.find_first_not_of(" \t");

      bool has_strict = line.find("=>") != std::string::npos || line.find("=/>") != std::string::npos;
      if (!has_strict && (line == "vars" || line.rfind("vars ", 0) == 0 || line.rfind("vars\t", 0) == 0)) {
        std::istringstream in(line.substr(4));
        std::string v;
        while (in >> v) {
          if (!is_valid_var_name(v)) error(indent + 1, "invalid variable name '" + v + "'");
          else db.declare(v);
        }
        continue;
      }

      std::string formula = line;
      std::optional<std::string> provenance;
      if (auto at = line.find('@'); at != std::string::npos) {
        formula = trim(std::string_view(line).substr(0, at));
        std::string cite = trim(std::string_view(line).substr(at + 1));
        provenance = parse_quoted(cite);
        if (!provenance) {
          error(indent + at + 2, "citation must be a double-quoted string");
          continue;
        }
      }
      try {
        SFormula f = parse_sformula(formula);
        if (db.theory().contains(f)) {
          res.diagnostics.push_back({Diagnostic::Severity::Warning, where, 0, "duplicate fact " + render(f) + " ignored"});
          continue;
        }
        db.add({f, std::nullopt, std::move(provenance), where});
      } catch (const ParseError& e) {
        error(indent + e.offset() + 1, e.what());
      }
    }
    if (!errors) res.db = std::move(db);
    return res;
  }

  std::string render_slt(const Database& db) {
    std::string out;
    if (!db.declared_vars().empty()) {
      out += "vars";
      for (const auto& v: db.declared_vars()) out += " " + v;
      out += "\n";
    }
    for (const auto& r: db.records()) {
      out += render(r.fact);
      if (r.provenance) out += " @ " + quote(*r.provenance);
      out += "\n";
    }
    return out;
  }

  // ---- Engines ----

  const char* engine_name(Engine e) noexcept {
    switch (e) {
      case Engine::Auto: return "auto";
      case Engine::Tableau: return "tableau";
      case Engine::F1: return "f1";
      case Engine::F2: return "f2";
      case Engine::Oracle: return "oracle";
    }
    return "?";
  }

  std::optional<Engine> parse_engine(std::string_view s) {
    for (Engine e: {Engine::Auto, Engine::Tableau, Engine::F1, Engine::F2, Engine::Oracle})
      if (s == engine_name(e)) return e;
    return std::nullopt;
  }

  Engine route(const Database& db, const SFormula& q) {
    auto f = to_f2(q);
    if (!f || db.fragment_class() == FragmentClass::General) return Engine::Tableau;
    if (db.fragment_class() == FragmentClass::F1 && f->in_f1()) return Engine::F1;
    return Engine::F2;
  }

  EngineResult run_engine(const Database& db, const SFormula& q, Engine engine) {
    if (engine == Engine::Auto) engine = route(db, q);
    switch (engine) {
      case Engine::Tableau: {
        auto d = decide(db.theory(), q);
        return {d.kind, engine, std::make_shared<const Tableau>(std::move(d.tableau)), std::nullopt, std::move(d.countermodel)};
      }
      case Engine::Oracle: {
        VarSet vs = db.theory().vars();
        auto qv = q.vars();
        vs.insert(qv.begin(), qv.end());
        if (vs.size() > kOracleMaxVars) throw EngineError(OracleLimitExceeded(vs.size()).what());
        auto v = oracle_consequence(db.theory(), q);
        return {v.kind, engine, nullptr, std::nullopt, std::move(v.countermodel)};
      }
      case Engine::F1:
      case Engine::F2: {
        auto f = to_f2(q);
        if (!f) throw EngineError("query " + render(q) + " is outside the conjunctive fragment");
        if (db.fragment_class() == FragmentClass::General)
          throw EngineError("database has facts outside the conjunctive fragment");
        try {
          auto facts = db.fragment_facts();
          auto v = engine == Engine::F1 ? f1_decide(facts, *f) : f2_decide(facts, *f);
          return {v.kind, engine, nullptr, std::move(v.trace), std::move(v.countermodel)};
        } catch (const FragmentError& e) {
          throw EngineError(e.what());
        }
      }
      case Engine::Auto: break;
    }
    throw EngineError("no engine selected");
  }

  CheckResult check(const Database& db, Engine engine) {
    if (engine == Engine::Auto) {
      switch (db.fragment_class()) {
        case FragmentClass::F1: engine = Engine::F1; break;
        case FragmentClass::F2: engine = Engine::F2; break;
        case FragmentClass::General: engine = Engine::Tableau; break;
      }
    }
    CheckResult res;
    res.engine = engine;
    switch (engine) {
      case Engine::F1:
      case Engine::F2: {
        if (db.fragment_class() == FragmentClass::General)
          throw EngineError("database has facts outside the conjunctive fragment");
        if (engine == Engine::F1 && db.fragment_class() != FragmentClass::F1)
          throw EngineError("database has facts outside F1");
        auto facts = db.fragment_facts();
        auto rep = engine == Engine::F1 ? f1_consistency(facts, db.declared_vars())
                                        : f2_consistency(facts, db.declared_vars());
        res.consistent = rep.consistent;
        res.model = std::move(rep.model);
        res.conflict = std::move(rep.conflict);
        return res;
      }
      case Engine::Oracle: {
        if (db.declared_vars().size() > kOracleMaxVars) throw EngineError(OracleLimitExceeded(db.declared_vars().size()).what());
        auto frame = oracle_satisfiable(db.theory(), db.declared_vars());
        res.consistent = frame.has_value();
        res.model = std::move(frame);
        return res;
      }
      default: {
        Tableau t = build_systematic(db.theory());
        res.engine = Engine::Tableau;
        res.consistent = !is_closed(t);
        if (res.consistent) {
          VarSet atoms = db.declared_vars();
          res.model = extract_frame(t.branch_to(*t.open_leaf()), t.atoms());
          // Variables declared but unused read false.
          Frame padded;
          for (auto w: res.model->worlds()) {
            for (const auto& v: atoms) w.emplace(v, false);
            padded.add(std::move(w));
          }
          res.model = std::move(padded);
        } else {
          res.refutation = std::make_shared<const Tableau>(std::move(t));
        }
        return res;
      }
    }
  }

  std::string render_conflict(const CheckResult& r) {
    if (r.consistent) return {};
    if (r.conflict) {
      return "conflict: " + r.conflict->nonimp.render() + " contradicts the derivable " +
             F2Fact::imp(r.conflict->nonimp.ante, r.conflict->nonimp.cons).render() + "\n" +
             (r.conflict->derivation.steps.empty() ? std::string("(given)\n") : render_trace(r.conflict->derivation));
    }
    if (r.refutation) return render_tableau(*r.refutation);
    return "no frame satisfies the theory\n";
  }

  const char* answer_name(AnswerKind k) noexcept {
    switch (k) {
      case AnswerKind::Proved: return "PROVED";
      case AnswerKind::Refuted: return "REFUTED";
      case AnswerKind::Independent: return "INDEPENDENT";
      case AnswerKind::Inconsistent: return "INCONSISTENT";
    }
    return "?";
  }

  QueryAnswer query(const Database& db, const SFormula& q, Engine engine) {
    Engine check_engine = Engine::Auto;
    if (engine == Engine::Oracle || engine == Engine::Tableau) check_engine = engine;
    CheckResult c = check(db, check_engine);
    if (!c.consistent) return {AnswerKind::Inconsistent, q, std::nullopt, std::nullopt, std::nullopt, std::move(c)};

    EngineResult pos = run_engine(db, q, engine);
    if (pos.kind == VerdictKind::Consequence) return {AnswerKind::Proved, q, std::move(pos), std::nullopt, std::nullopt, std::nullopt};
    EngineResult neg = run_engine(db, strict_negation(q), engine);
    if (neg.kind == VerdictKind::Consequence) return {AnswerKind::Refuted, q, std::move(neg), std::nullopt, std::nullopt, std::nullopt};
    // A countermodel of -q satisfies q and vice versa.
    return {AnswerKind::Independent, q, std::nullopt, std::move(neg.countermodel), std::move(pos.countermodel), std::nullopt};
  }

  // ---- Matrix / DOT ----

  AnswerKind ImplicationMatrix::at(const VarName& a, const VarName& b) const {
    auto i = std::lower_bound(vars.begin(), vars.end(), a) - vars.begin();
    auto j = std::lower_bound(vars.begin(), vars.end(), b) - vars.begin();
    return cells.at(i).at(j);
  }

  ImplicationMatrix matrix(const Database& db, Engine engine) {
    ImplicationMatrix m;
    m.vars.assign(db.declared_vars().begin(), db.declared_vars().end());
    if (!check(db, engine == Engine::Oracle || engine == Engine::Tableau ? engine : Engine::Auto).consistent)
      throw EngineError("matrix needs a consistent database");
    for (const auto& a: m.vars) {
      auto& row = m.cells.emplace_back();
      for (const auto& b: m.vars) {
        SFormula q = SFormula::imp(PropFormula::var(a), PropFormula::var(b));
        EngineResult pos = run_engine(db, q, engine);
        if (pos.kind == VerdictKind::Consequence) { row.push_back(AnswerKind::Proved); continue; }
        EngineResult neg = run_engine(db, strict_negation(q), engine);
        row.push_back(neg.kind == VerdictKind::Consequence ? AnswerKind::Refuted : AnswerKind::Independent);
      }
    }
    return m;
  }

  std::string render_matrix(const ImplicationMatrix& m) {
    std::size_t width = 4;
    for (const auto& v: m.vars) width = std::max(width, v.size());
    auto pad = [&](std::string s) { s.resize(width + 2, ' '); return s; };
    auto cell = [](AnswerKind k) -> std::string {
      switch (k) {
        case AnswerKind::Proved: return "=>";
        case AnswerKind::Refuted: return "=/>";
        case AnswerKind::Independent: return "?";
        case AnswerKind::Inconsistent: return "!";
      }
      return "";
    };
    std::string out = pad("");
    for (const auto& v: m.vars) out += pad(v);
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
    for (std::size_t i = 0; i < m.vars.size(); i++) {
      std::string line = pad(m.vars[i]);
      for (std::size_t j = 0; j < m.vars.size(); j++) line += pad(cell(m.cells[i][j]));
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + '\n';
    }
    return out;
  }

  nlohmann::json matrix_to_json(const ImplicationMatrix& m) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& row: m.cells) {
      nlohmann::json r = nlohmann::json::array();
      for (AnswerKind k: row) {
        std::string s = answer_name(k);
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        r.push_back(s);
      }
      cells.push_back(std::move(r));
    }
    return {{"vars", m.vars}, {"cells", std::move(cells)}};
  }

  std::string export_dot(const ImplicationMatrix& m) {
    std::size_t n = m.vars.size();
    auto proved = [&](std::size_t i, std::size_t j) { return m.cells[i][j] == AnswerKind::Proved; };
    auto equivalent = [&](std::size_t i, std::size_t j) { return proved(i, j) && proved(j, i); };
    std::string out = "digraph implications {\n  rankdir=BT;\n";
    for (const auto& v: m.vars) out += "  \"" + v + "\";\n";
    for (std::size_t i = 0; i < n; i++) {
      for (std::size_t j = 0; j < n; j++) {
        if (i == j || !proved(i, j)) continue;
        bool implied = false;
        for (std::size_t k = 0; k < n && !implied; k++)
          implied = k != i && k != j && proved(i, k) && proved(k, j) && !equivalent(k, i) && !equivalent(k, j);
        if (!implied) out += "  \"" + m.vars[i] + "\" -> \"" + m.vars[j] + "\";\n";
      }
    }
    for (std::size_t i = 0; i < n; i++)
      for (std::size_t j = 0; j < n; j++)
        if (m.cells[i][j] == AnswerKind::Refuted)
          out += "  \"" + m.vars[i] + "\" -> \"" + m.vars[j] + "\" [style=dashed, label=\"=/>\"];\n";
    return out + "}\n";
  }

  // ---- Saturation reports ----

  std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, data.data(), data.size());
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; i++) {
      out += hex[digest[i] >> 4];
      out += hex[digest[i] & 15];
    }
    return out;
  }

  ClosureReport saturate_database(const Database& db, std::string_view source_text, std::size_t max_ante) {
    ClosureReport r;
    r.input_digest = sha256_hex(source_text);
    r.max_ante = max_ante;
    r.facts = saturate(db.fragment_facts(), max_ante, db.declared_vars());
    return r;
  }

  nlohmann::json closure_to_json(const ClosureReport& r) {
    nlohmann::json facts = nlohmann::json::array();
    for (const auto& d: r.facts) facts.push_back({{"fact", d.fact.render()}, {"trace", trace_to_json(d.trace)}});
    return {{"engine_version", r.engine_version},
            {"input_digest", r.input_digest},
            {"max_ante", r.max_ante},
            {"facts", std::move(facts)}};
  }

  namespace {

    F2Fact parse_fact(const std::string& s) {
      auto f = to_f2(parse_sformula(s));
      if (!f) throw ClosureError(ClosureError::Code::Malformed, "fact outside the conjunctive fragment: " + s);
      return *f;
    }

    FragmentRule parse_rule(const std::string& s) {
      for (FragmentRule r: {FragmentRule::I, FragmentRule::W, FragmentRule::HS, FragmentRule::N})
        if (s == rule_name(r)) return r;
      throw ClosureError(ClosureError::Code::Malformed, "unknown rule " + s);
    }

  } // namespace

  ClosureReport closure_from_json(const nlohmann::json& j) {
    try {
      ClosureReport r;
      r.engine_version = j.at("engine_version").get<std::string>();
      r.input_digest = j.at("input_digest").get<std::string>();
      r.max_ante = j.at("max_ante").get<std::size_t>();
      for (const auto& item: j.at("facts")) {
        DerivedFact d{parse_fact(item.at("fact").get<std::string>()), {}};
        for (const auto& s: item.at("trace")) {
          TraceStep step{parse_rule(s.at("rule").get<std::string>()), {}, parse_fact(s.at("derive").get<std::string>())};
          for (const auto& p: s.at("from")) step.premises.push_back(parse_fact(p.get<std::string>()));
          d.trace.steps.push_back(std::move(step));
        }
        r.facts.push_back(std::move(d));
      }
      return r;
    } catch (const nlohmann::json::exception& e) {
      throw ClosureError(ClosureError::Code::Malformed, std::string("malformed closure report: ") + e.what());
    } catch (const ParseError& e) {
      throw ClosureError(ClosureError::Code::Malformed, std::string("malformed fact in closure report: ") + e.what());
    }
  }

  std::string render_closure(const ClosureReport& r) {
    std::string out;
    for (const auto& d: r.facts) {
      out += d.fact.render() + "\n";
      std::istringstream lines(render_trace(d.trace));
      for (std::string line; std::getline(lines, line);) out += "    " + line + "\n";
    }
    return out;
  }

  void save_closure(const std::filesystem::path& path, const ClosureReport& r) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ClosureError(ClosureError::Code::IOFailure, "cannot write " + path.string());
    out << closure_to_json(r).dump(2) << '\n';
    if (!out) throw ClosureError(ClosureError::Code::IOFailure, "write failed for " + path.string());
  }

  ClosureReport load_closure(const std::filesystem::path& path, std::string_view current_text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ClosureError(ClosureError::Code::IOFailure, "cannot read " + path.string());
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ClosureError(ClosureError::Code::IOFailure, path.string() + ": " + e.what());
    }
    ClosureReport r = closure_from_json(j);
    if (r.input_digest != sha256_hex(current_text))
      throw ClosureError(ClosureError::Code::Stale, "stale closure report: " + path.string() + " was computed from a different fact file");
    return r;
  }

} // namespace slogic
