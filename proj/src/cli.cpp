#include "slogic/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "slogic/zoodb.hpp"

namespace slogic::cli {

  namespace {

    struct UsageError: std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    struct InvariantFailure: std::logic_error {
      using std::logic_error::logic_error;
    };

    struct Options {
      std::string file;
      std::string query;
      std::string engine = "auto";
      std::string format = "text";
      bool model = false;
      bool proof = false;
      bool dot = false;
      std::size_t max_ante = 3;
      std::string out_path;
      std::string cached_path;
    };

    std::string read_file(const std::string& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw UsageError("cannot read " + path);
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    void write_file(const std::string& path, const std::string& text) {
      std::ofstream out(path, std::ios::binary);
      if (!out || !(out << text)) throw UsageError("cannot write " + path);
    }

    Database load(const std::string& path, const std::string& text, std::ostream& err) {
      IngestResult r = ingest(text, path);
      for (const auto& d: r.diagnostics) err << d.render() << '\n';
      if (!r.ok()) throw UsageError(path + ": not loaded (" + std::to_string(r.diagnostics.size()) + " diagnostics)");
      return std::move(*r.db);
    }

    SFormula parse_query(const std::string& text) {
      try {
        return parse_sformula(text);
      } catch (const ParseError& e) {
        throw UsageError("query:" + std::to_string(e.offset() + 1) + ": " + e.what());
      }
    }

    Engine engine_of(const Options& o) {
      auto e = parse_engine(o.engine);
      if (!e) throw UsageError("unknown engine '" + o.engine + "' (auto, tableau, f1, f2, oracle)");
      return *e;
    }

    bool json_format(const Options& o) {
      if (o.format != "text" && o.format != "json") throw UsageError("unknown format '" + o.format + "' (text, json)");
      return o.format == "json";
    }

    std::string lower(std::string s) {
      for (auto& c: s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      return s;
    }

    // Countermodels are re-verified before they are printed.
    void verify_countermodel(const Theory& theory, const SFormula& q, const Frame& frame) {
      if (frame.empty() || !satisfies_theory(frame, theory) || satisfies_frame(frame, q))
        throw InvariantFailure("countermodel for " + render(q) + " failed verification");
    }

    void verify_answer(const Database& db, const QueryAnswer& a) {
      if (a.kind == AnswerKind::Independent) {
        verify_countermodel(db.theory(), strict_negation(a.query), *a.frame_for);
        verify_countermodel(db.theory(), a.query, *a.frame_against);
      }
      if (a.evidence) {
        SFormula goal = a.kind == AnswerKind::Refuted ? strict_negation(a.query) : a.query;
        if (a.evidence->tableau) {
          auto r = replay(*a.evidence->tableau);
          if (!r.ok) throw InvariantFailure("tableau proof failed replay: " + r.error);
        }
        if (a.evidence->trace) {
          auto f = to_f2(goal);
          auto r = replay_trace(*a.evidence->trace, db.fragment_facts(), *f);
          if (!r.ok) throw InvariantFailure("rule trace failed replay: " + r.error);
        }
      }
    }

    // ---- decide ----

    int cmd_decide(const Options& o, std::ostream& out, std::ostream& err) {
      bool json = json_format(o);
      Engine engine = engine_of(o);
      std::string text = read_file(o.file);
      Database db = load(o.file, text, err);
      SFormula q = parse_query(o.query);
      QueryAnswer a = query(db, q, engine);
      verify_answer(db, a);

      nlohmann::json j;
      j["query"] = render(q);
      j["verdict"] = lower(answer_name(a.kind));
      std::ostringstream t;
      t << answer_name(a.kind) << '\n';

      if (a.evidence) {
        j["engine"] = engine_name(a.evidence->engine);
        t << "engine: " << engine_name(a.evidence->engine) << '\n';
        if (a.evidence->trace) {
          j["trace"] = trace_to_json(*a.evidence->trace);
          t << "derivation" << (a.kind == AnswerKind::Refuted ? " of " + render(strict_negation(q)) : std::string()) << ":\n";
          t << (a.evidence->trace->steps.empty() ? std::string("(given)\n") : render_trace(*a.evidence->trace));
        }
        if (a.evidence->tableau && o.proof) {
          j["tableau"] = tableau_to_json(*a.evidence->tableau);
          t << "closed tableau for the theory plus " << render(a.kind == AnswerKind::Refuted ? q : strict_negation(q)) << ":\n";
          t << render_tableau(*a.evidence->tableau);
        }
      }
      if (a.kind == AnswerKind::Inconsistent) {
        j["conflict"] = render_conflict(*a.inconsistency);
        t << render_conflict(*a.inconsistency);
      }
      if (a.kind == AnswerKind::Independent && o.model) {
        j["frame_for"] = frame_to_json(*a.frame_for);
        j["frame_against"] = frame_to_json(*a.frame_against);
        t << "frame satisfying the query:\n" << render_frame(*a.frame_for);
        t << "frame satisfying its negation:\n" << render_frame(*a.frame_against);
      }
      out << (json ? j.dump(2) + "\n" : t.str());
      return a.kind == AnswerKind::Proved ? kSuccess : kNegative;
    }

    // ---- check ----

    int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
      bool json = json_format(o);
      Engine engine = engine_of(o);
      std::string text = read_file(o.file);
      Database db = load(o.file, text, err);
      CheckResult c = check(db, engine);
      if (c.consistent && (!c.model || !satisfies_theory(*c.model, db.theory())))
        throw InvariantFailure("consistency model failed verification");
      if (c.refutation) {
        auto r = replay(*c.refutation);
        if (!r.ok) throw InvariantFailure("tableau refutation failed replay: " + r.error);
      }

      nlohmann::json j{{"verdict", c.consistent ? "consistent" : "inconsistent"},
                       {"engine", engine_name(c.engine)},
                       {"fragment", fragment_name(db.fragment_class())}};
      std::ostringstream t;
      t << (c.consistent ? "CONSISTENT" : "INCONSISTENT") << '\n';
      if (c.consistent && o.model) {
        j["model"] = frame_to_json(*c.model);
        t << "model:\n" << render_frame(*c.model);
      }
      if (!c.consistent) {
        if (c.conflict) {
          j["conflict"] = {{"nonimplication", c.conflict->nonimp.render()},
                           {"source", [&] {
                              for (const auto& r: db.records())
                                if (r.fragment == c.conflict->nonimp) return r.source.render();
                              return std::string();
                            }()},
                           {"derivation", trace_to_json(c.conflict->derivation)}};
        }
        if (c.refutation) j["tableau"] = tableau_to_json(*c.refutation);
        t << render_conflict(c);
      }
      out << (json ? j.dump(2) + "\n" : t.str());
      return c.consistent ? kSuccess : kNegative;
    }

    // ---- saturate ----

    int cmd_saturate(const Options& o, std::ostream& out, std::ostream& err) {
      bool json = json_format(o);
      if (o.max_ante == 0) throw UsageError("--max-ante must be at least 1");
      std::string text = read_file(o.file);
      Database db = load(o.file, text, err);
      if (db.fragment_class() == FragmentClass::General)
        throw UsageError("saturate needs a database in the conjunctive fragment");

      ClosureReport r;
      if (!o.cached_path.empty()) {
        try {
          r = load_closure(o.cached_path, text);
        } catch (const ClosureError& e) {
          throw UsageError(e.what());
        }
      } else {
        CheckResult c = check(db);
        if (!c.consistent) {
          out << "INCONSISTENT\n" << render_conflict(c);
          return kNegative;
        }
        r = saturate_database(db, text, o.max_ante);
        auto facts = db.fragment_facts();
        for (const auto& d: r.facts) {
          auto chk = replay_trace(d.trace, facts, d.fact);
          if (!chk.ok) throw InvariantFailure("trace for " + d.fact.render() + " failed replay: " + chk.error);
        }
      }
      if (!o.out_path.empty()) {
        try {
          save_closure(o.out_path, r);
        } catch (const ClosureError& e) {
          throw UsageError(e.what());
        }
      }
      out << (json ? closure_to_json(r).dump(2) + "\n" : render_closure(r));
      return kSuccess;
    }

    // ---- tableau ----

    int cmd_tableau(const Options& o, std::ostream& out, std::ostream& err) {
      bool json = json_format(o);
      std::string text = read_file(o.file);
      Database db = load(o.file, text, err);
      Theory theory = db.theory();
      if (!o.query.empty()) theory = theory.with(strict_negation(parse_query(o.query)));
      Tableau t = build_systematic(theory);
      auto r = replay(t);
      if (!r.ok) throw InvariantFailure("tableau failed replay: " + r.error);
      if (json) {
        auto j = tableau_to_json(t);
        if (!is_closed(t)) j["model"] = frame_to_json(extract_frame(t.branch_to(*t.open_leaf()), t.atoms()));
        out << j.dump(2) << '\n';
      } else {
        out << render_tableau(t);
        if (!is_closed(t)) out << "model from the open branch:\n" << render_frame(extract_frame(t.branch_to(*t.open_leaf()), t.atoms()));
      }
      return kSuccess;
    }

    // ---- matrix ----

    int cmd_matrix(const Options& o, std::ostream& out, std::ostream& err) {
      bool json = json_format(o);
      Engine engine = engine_of(o);
      std::string text = read_file(o.file);
      Database db = load(o.file, text, err);
      CheckResult c = check(db, engine == Engine::Oracle || engine == Engine::Tableau ? engine : Engine::Auto);
      if (!c.consistent) {
        out << "INCONSISTENT\n" << render_conflict(c);
        return kNegative;
      }
      ImplicationMatrix m = matrix(db, engine);
      std::string dot = export_dot(m);
      if (!o.out_path.empty()) write_file(o.out_path, dot);
      if (json) {
        auto j = matrix_to_json(m);
        if (o.dot) j["dot"] = dot;
        out << j.dump(2) << '\n';
      } else {
        out << render_matrix(m);
        if (o.dot) out << '\n' << dot;
      }
      return kSuccess;
    }

  } // namespace

  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"slogic: decide strict implications and nonimplications over fact files"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool engine) {
      sub->add_option("file", o.file, "fact file (.slt)")->required();
      sub->add_option("--format", o.format, "text or json");
      if (engine) sub->add_option("--engine", o.engine, "auto, tableau, f1, f2 or oracle");
    };

    auto* decide_cmd = app.add_subcommand("decide", "decide whether a query follows from the facts");
    add_common(decide_cmd, true);
    decide_cmd->add_option("query", o.query, "s-formula, e.g. \"A & B => C\"")->required();
    decide_cmd->add_flag("--model", o.model, "print countermodels for independent queries");
    decide_cmd->add_flag("--proof", o.proof, "print the closed tableau when the tableau engine is used");

    auto* check_cmd = app.add_subcommand("check", "check that the facts are consistent");
    add_common(check_cmd, true);
    check_cmd->add_flag("--model", o.model, "print a satisfying frame");

    auto* sat_cmd = app.add_subcommand("saturate", "list the strongest derivable facts");
    add_common(sat_cmd, false);
    sat_cmd->add_option("--max-ante", o.max_ante, "largest antecedent considered (default 3)");
    sat_cmd->add_option("--out", o.out_path, "write the closure report here");
    sat_cmd->add_option("--cached", o.cached_path, "reuse a saved closure report if it matches the file");

    auto* tab_cmd = app.add_subcommand("tableau", "print the systematic tableau");
    add_common(tab_cmd, false);
    tab_cmd->add_option("query", o.query, "refute the theory plus the negation of this query");

    auto* mat_cmd = app.add_subcommand("matrix", "implication matrix over all declared variables");
    add_common(mat_cmd, true);
    mat_cmd->add_flag("--dot", o.dot, "also print a DOT graph");
    mat_cmd->add_option("--out", o.out_path, "write the DOT graph here");

    std::vector<const char*> argv{"slogic"};
    for (const auto& a: args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e, out, err);
      return code == 0 ? kSuccess : kUsage;
    }

    try {
      if (decide_cmd->parsed()) return cmd_decide(o, out, err);
      if (check_cmd->parsed()) return cmd_check(o, out, err);
      if (sat_cmd->parsed()) return cmd_saturate(o, out, err);
      if (tab_cmd->parsed()) return cmd_tableau(o, out, err);
      if (mat_cmd->parsed()) return cmd_matrix(o, out, err);
    } catch (const UsageError& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const EngineError& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const FragmentError& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const InvariantFailure& e) {
      err << "internal error: " << e.what() << '\n';
      return kInternal;
    } catch (const TableauError& e) {
      err << "internal error: " << e.what() << '\n';
      return kInternal;
    }
    return kUsage;
  }

} // namespace slogic::cli
