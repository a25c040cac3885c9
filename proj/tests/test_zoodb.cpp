#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "slogic/zoodb.hpp"
#include "support/gen.hpp"

using namespace slogic;

namespace {
  std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  const std::string kRt22Text = slurp(SLOGIC_TEST_DATA "/rt22.slt");

  Database db_of(const std::string& text) {
    auto r = ingest(text, "t.slt");
    REQUIRE(r.ok());
    return *r.db;
  }

  std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("slogic_test_" + name);
  }

  // Random database text in the .slt surface syntax.
  std::string random_slt(gen::Rng& r, bool fragment) {
    std::string text = "# generated\n";
    auto vars = gen::alphabet(4);
    if (r.coin()) text += "vars " + vars[0] + " " + vars[3] + "\n";
    std::size_t n = r.between(0, 6);
    for (std::size_t i = 0; i < n; i++) {
      text += fragment ? gen::f2_fact(r, vars, 2).render() : render(gen::sformula(r, vars, 2));
      if (r.coin(0.3)) text += " @ \"Ref " + std::to_string(i) + ", p. 3\"";
      text += "\n";
    }
    return text;
  }
}

TEST_CASE("ingest the RT22 file") {
  auto r = ingest(kRt22Text, "rt22.slt");
  REQUIRE(r.ok());
  CHECK(r.diagnostics.empty());
  const Database& db = *r.db;
  CHECK(db.records().size() == 5);
  CHECK(db.fragment_class() == FragmentClass::F2);
  CHECK(db.declared_vars() == VarSet{"COH", "RT22", "SRT22"});
  REQUIRE(db.records()[0].provenance);
  CHECK(*db.records()[0].provenance == "Cholak, Jockusch, Slaman 2001");
  CHECK(db.records()[0].source.line == 3);
  CHECK(db.records()[0].source.file == "rt22.slt");
}

TEST_CASE("ingest diagnostics") {
  SUBCASE("duplicates warn") {
    auto r = ingest("X => Y\nX=>Y\n", "d.slt");
    REQUIRE(r.ok());
    CHECK(r.db->records().size() == 1);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].severity == Diagnostic::Severity::Warning);
    CHECK(r.diagnostics[0].where.line == 2);
  }
  SUBCASE("incomplete fact is an error") {
    auto r = ingest("A => B\nX => \n", "e.slt");
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].severity == Diagnostic::Severity::Error);
    CHECK(r.diagnostics[0].where.line == 2);
    CHECK(r.diagnostics[0].render().rfind("e.slt:2:", 0) == 0);
  }
  SUBCASE("other errors") {
    CHECK_FALSE(ingest("A => B @ unquoted\n").ok());
    CHECK_FALSE(ingest("A => B @ \"open\n").ok());
    CHECK_FALSE(ingest("vars 1X\n").ok());
    CHECK_FALSE(ingest("A & B\n").ok());
  }
  SUBCASE("comments and blank lines") {
    auto r = ingest("\n   # only a comment\nA => B # trailing\nB => C @ \"has # inside\"\n");
    REQUIRE(r.ok());
    CHECK(r.db->records().size() == 2);
    CHECK(*r.db->records()[1].provenance == "has # inside");
  }
}

TEST_CASE("fragment classes") {
  CHECK(db_of("").fragment_class() == FragmentClass::F1);
  CHECK(db_of("A => B\nB =/> A\n").fragment_class() == FragmentClass::F1);
  CHECK(db_of("A & C => B\n").fragment_class() == FragmentClass::F2);
  CHECK(db_of("A | C => B\n").fragment_class() == FragmentClass::General);
}

TEST_CASE("check") {
  auto ok = check(db_of(kRt22Text));
  CHECK(ok.consistent);
  REQUIRE(ok.model);
  CHECK(ok.model->size() == 2);
  auto bad = check(db_of("X => Y\nX =/> Y\n"));
  CHECK_FALSE(bad.consistent);
  REQUIRE(bad.conflict);
  CHECK(render_conflict(bad).find("X =/> Y") != std::string::npos);
  auto general = check(db_of("X | ~X => Y & ~Y\n"));
  CHECK_FALSE(general.consistent);
  CHECK(general.engine == Engine::Tableau);
  REQUIRE(general.refutation);
  CHECK(general.refutation->seeded());
  auto by_oracle = check(db_of(kRt22Text), Engine::Oracle);
  CHECK(by_oracle.consistent);
}

TEST_CASE("query trichotomy examples") {
  Database db = db_of(kRt22Text);
  auto proved = query(db, parse_sformula("COH =/> SRT22"));
  CHECK(proved.kind == AnswerKind::Proved);
  REQUIRE(proved.evidence);
  REQUIRE(proved.evidence->trace);
  CHECK(proved.evidence->trace->steps.back().rule == FragmentRule::N);
  CHECK(query(db, parse_sformula("COH => SRT22")).kind == AnswerKind::Refuted);
  CHECK(query(db, parse_sformula("RT22 => COH")).kind == AnswerKind::Proved);
  CHECK(query(db, parse_sformula("COH => RT22")).kind == AnswerKind::Refuted);
  CHECK(query(db, parse_sformula("SRT22 =/> COH")).kind == AnswerKind::Proved);

  auto ind = query(db_of("A => B\nA => C\n"), parse_sformula("B => C"));
  REQUIRE(ind.kind == AnswerKind::Independent);
  Theory t = db_of("A => B\nA => C\n").theory();
  CHECK(satisfies_theory(*ind.frame_for, t));
  CHECK(satisfies_frame(*ind.frame_for, parse_sformula("B => C")));
  CHECK(satisfies_theory(*ind.frame_against, t));
  CHECK(satisfies_frame(*ind.frame_against, parse_sformula("B =/> C")));

  auto inc = query(db_of("X => Y\nX =/> Y\n"), parse_sformula("A => B"));
  CHECK(inc.kind == AnswerKind::Inconsistent);
  CHECK(inc.inconsistency);
}

TEST_CASE("engine routing and overrides") {
  Database f1 = db_of("A => B\n");
  Database f2 = db_of(kRt22Text);
  Database general = db_of("A | B => C\n");
  CHECK(route(f1, parse_sformula("B => A")) == Engine::F1);
  CHECK(route(f1, parse_sformula("A & B => C")) == Engine::F2);
  CHECK(route(f2, parse_sformula("RT22 => COH")) == Engine::F2);
  CHECK(route(f2, parse_sformula("RT22 => COH | SRT22")) == Engine::Tableau);
  CHECK(route(general, parse_sformula("A => C")) == Engine::Tableau);
  CHECK_THROWS_AS(run_engine(general, parse_sformula("A => C"), Engine::F2), EngineError);
  CHECK_THROWS_AS(run_engine(f2, parse_sformula("RT22 => COH"), Engine::F1), EngineError);
  for (Engine e: {Engine::Tableau, Engine::F2, Engine::Oracle})
    CHECK(run_engine(f2, parse_sformula("COH =/> SRT22"), e).kind == VerdictKind::Consequence);
  CHECK(parse_engine("tableau") == Engine::Tableau);
  CHECK_FALSE(parse_engine("magic"));
}

TEST_CASE("matrix") {
  Database db = db_of(kRt22Text);
  auto m = matrix(db);
  CHECK(m.vars == std::vector<VarName>{"COH", "RT22", "SRT22"});
  CHECK(m.at("RT22", "SRT22") == AnswerKind::Proved);
  CHECK(m.at("SRT22", "RT22") == AnswerKind::Refuted);
  for (const auto& v: m.vars) CHECK(m.at(v, v) == AnswerKind::Proved);
  auto ab = matrix(db_of("A => B\n"));
  CHECK(ab.at("A", "B") == AnswerKind::Proved);
  CHECK(ab.at("B", "A") == AnswerKind::Independent);
  auto x = matrix(db_of("vars X\n"));
  CHECK(x.at("X", "X") == AnswerKind::Proved);
  CHECK_THROWS(matrix(db_of("X => Y\nX =/> Y\n")));
  auto j = matrix_to_json(m);
  CHECK(j["cells"][1][2] == "proved");
}

TEST_CASE("matrix cells equal pairwise queries") {
  gen::Rng r(606);
  for (int i = 0; i < 150; i++) {
    Database db = db_of(random_slt(r, i % 2 == 0));
    if (!check(db).consistent) continue;
    auto m = matrix(db);
    for (const auto& a: m.vars)
      for (const auto& b: m.vars) {
        auto q = SFormula::imp(PropFormula::var(a), PropFormula::var(b));
        REQUIRE(m.at(a, b) == query(db, q).kind);
      }
  }
}

TEST_CASE("DOT export") {
  auto dot = export_dot(matrix(db_of(kRt22Text)));
  CHECK(dot.find("\"RT22\" -> \"SRT22\";") != std::string::npos);
  CHECK(dot.find("\"RT22\" -> \"COH\";") != std::string::npos);
  CHECK(dot.find("\"SRT22\" -> \"RT22\" [style=dashed") != std::string::npos);
  CHECK(dot.find("\"COH\" -> \"SRT22\";") == std::string::npos);

  auto single = export_dot(matrix(db_of("A => B\n")));
  CHECK(single.find("\"A\" -> \"B\";") != std::string::npos);
  CHECK(single.find("->", single.find("\"A\" -> \"B\";") + 5) == std::string::npos);

  auto empty = export_dot(matrix(db_of("vars P Q\n")));
  CHECK(empty.find("->") == std::string::npos);
  CHECK(empty.find("\"P\";") != std::string::npos);

  // Transitive edges are dropped.
  auto chain = export_dot(matrix(db_of("A => B\nB => C\n")));
  CHECK(chain.find("\"A\" -> \"C\"") == std::string::npos);
  CHECK(chain.find("\"A\" -> \"B\";") != std::string::npos);
}

TEST_CASE("trichotomy holds and evidence verifies") {
  gen::Rng r(99);
  for (int i = 0; i < 400; i++) {
    Database db = db_of(random_slt(r, i % 3 != 0));
    if (!check(db).consistent) continue;
    Theory t = db.theory();
    auto q = gen::sformula(r, gen::alphabet(4), i % 3 != 0 ? 0 : 2);
    auto a = query(db, q);
    bool pro = oracle_consequence(t, q).kind == VerdictKind::Consequence;
    bool con = oracle_consequence(t, strict_negation(q)).kind == VerdictKind::Consequence;
    REQUIRE_FALSE((pro && con));
    AnswerKind expected = pro ? AnswerKind::Proved : con ? AnswerKind::Refuted : AnswerKind::Independent;
    REQUIRE(a.kind == expected);
    if (a.kind == AnswerKind::Independent) {
      CHECK(satisfies_theory(*a.frame_for, t));
      CHECK(satisfies_frame(*a.frame_for, q));
      CHECK(satisfies_theory(*a.frame_against, t));
      CHECK(satisfies_frame(*a.frame_against, strict_negation(q)));
    } else if (a.evidence->tableau) {
      CHECK(replay(*a.evidence->tableau).ok);
    } else {
      REQUIRE(a.evidence->trace);
      auto goal = a.kind == AnswerKind::Proved ? q : strict_negation(q);
      CHECK(replay_trace(*a.evidence->trace, db.fragment_facts(), *to_f2(goal)).ok);
    }
  }
}

TEST_CASE("render_slt round-trips") {
  gen::Rng r(4);
  for (int i = 0; i < 300; i++) {
    Database db = db_of(random_slt(r, i % 2 == 0));
    auto again = ingest(render_slt(db), "again.slt");
    REQUIRE(again.ok());
    CHECK(*again.db == db);
  }
  Database rt = db_of(kRt22Text);
  CHECK(*ingest(render_slt(rt)).db == rt);
}

TEST_CASE("closure reports persist and detect staleness") {
  Database db = db_of(kRt22Text);
  auto report = saturate_database(db, kRt22Text, 2);
  CHECK(report.input_digest == sha256_hex(kRt22Text));
  CHECK(report.engine_version == kEngineVersion);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  auto path = temp_path("closure.json");
  save_closure(path, report);
  auto loaded = load_closure(path, kRt22Text);
  CHECK(closure_to_json(loaded) == closure_to_json(report));
  CHECK(render_closure(loaded) == render_closure(report));

  auto code = [&](std::string_view text) {
    try {
      load_closure(path, text);
    } catch (const ClosureError& e) {
      return static_cast<int>(e.code());
    }
    return -1;
  };
  CHECK(code(kRt22Text + "RT22 => RT22\n") == static_cast<int>(ClosureError::Code::Stale));

  std::string full = slurp(path.string());
  {
    std::ofstream out(path, std::ios::trunc);
    out << full.substr(0, full.size() / 2);
  }
  CHECK(code(kRt22Text) == static_cast<int>(ClosureError::Code::IOFailure));
  std::filesystem::remove(path);
  CHECK(code(kRt22Text) == static_cast<int>(ClosureError::Code::IOFailure));
  CHECK_THROWS_AS(closure_from_json(nlohmann::json{{"facts", 3}}), ClosureError);

  CHECK_THROWS_AS(saturate_database(db_of("A | B => C\n"), "", 2), FragmentError);
}
