// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "slogic/zoodb.hpp"
#include "support/gen.hpp"

using namespace slogic;
using Clock = std::chrono::steady_clock;

namespace {

  struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
      if (ok) detail = why;
      ok = false;
    }
  };

  double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }

  std::string fmt_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f ms", ms);
    return buf;
  }

  Theory th(std::initializer_list<const char*> fs) {
    Theory t;
    for (auto f: fs) t.insert(parse_sformula(f));
    return t;
  }

  // Shared by every suite: NotConsequence frames must verify and proofs must replay.
  struct EvidenceLedger {
    std::size_t frames = 0, proofs = 0, bad = 0;
    std::string first_bad;

    void frame(const Theory& g, const SFormula& q, const std::optional<Frame>& f) {
      frames++;
      if (!f || f->empty() || !satisfies_theory(*f, g) || satisfies_frame(*f, q)) note("countermodel for " + render(q));
    }
    void tableau(const Tableau& t) {
      proofs++;
      auto r = replay(t);
      if (!r.ok || !is_closed(t)) note("tableau proof: " + r.error);
    }
    void trace(const RuleTrace& t, const std::vector<F2Fact>& given, const F2Fact& goal) {
      proofs++;
      auto r = replay_trace(t, given, goal);
      if (!r.ok) note("trace for " + goal.render() + ": " + r.error);
    }
    void note(const std::string& s) {
      if (!bad++) first_bad = s;
    }
  };

  EvidenceLedger ledger;

  Outcome criterion1() {
    Outcome o;
    auto t0 = Clock::now();
    Theory g = th({"X =/> Y", "X => A", "B => Y"});
    auto q = parse_sformula("A =/> B");
    auto d = decide(g, q);
    Tableau root = build_systematic(th({"X =/> Y", "X => A", "B => Y", "A => B"}));
    double ms = ms_since(t0);
    if (d.kind != VerdictKind::Consequence) o.fail("verdict is not Consequence");
    if (!is_closed(root)) o.fail("tableau for the 4-formula root is open");
    if (root.world_count() != 1) o.fail("tableau uses " + std::to_string(root.world_count()) + " worlds");
    ledger.tableau(d.tableau);
    ledger.tableau(root);
    if (ms >= 10) o.fail("took " + fmt_ms(ms));
    if (o.ok) o.detail = std::to_string(root.nodes().size()) + " nodes, 1 world, " + fmt_ms(ms);
    return o;
  }

  Outcome criterion2() {
    Outcome o;
    Theory chain = th({"X => A", "A => B", "B => Y"});
    auto c = decide(chain, parse_sformula("X => Y"));
    if (c.kind != VerdictKind::Consequence) o.fail("X => Y not a consequence of the chain");
    else ledger.tableau(c.tableau);
    Theory fork = th({"A => B", "A => C"});
    for (auto s: {"B => C", "B =/> C"}) {
      auto q = parse_sformula(s);
      auto d = decide(fork, q);
      if (d.kind != VerdictKind::NotConsequence) o.fail(std::string(s) + " reported as a consequence");
      else ledger.frame(fork, q, d.countermodel);
      if (oracle_consequence(fork, q).kind != VerdictKind::NotConsequence) o.fail(std::string("oracle disagrees on ") + s);
    }
    if (o.ok) o.detail = "chain proved; both fork queries refuted with verified countermodels";
    return o;
  }

  Outcome criterion3() {
    Outcome o;
    std::ifstream in(SLOGIC_TEST_DATA "/rt22.slt");
    std::stringstream ss;
    ss << in.rdbuf();
    auto t0 = Clock::now();
    auto ing = ingest(ss.str(), "rt22.slt");
    if (!ing.ok() || ing.db->records().size() != 5) {
      o.fail("ingest failed");
      return o;
    }
    const Database& db = *ing.db;
    auto c = check(db);
    if (!c.consistent) o.fail("theory reported inconsistent");
    else ledger.frame(db.theory(), parse_sformula("RT22 =/> RT22"), c.model);
    struct Want {
      const char* q;
      AnswerKind kind;
    };
    std::vector<Want> wants{{"RT22 => COH", AnswerKind::Proved}, {"COH => RT22", AnswerKind::Refuted},
                            {"COH =/> SRT22", AnswerKind::Proved}, {"SRT22 =/> COH", AnswerKind::Proved}};
    for (const auto& w: wants) {
      auto q = parse_sformula(w.q);
      auto a = query(db, q);
      if (a.kind != w.kind) o.fail(std::string(w.q) + " answered " + answer_name(a.kind));
      auto goal = a.kind == AnswerKind::Refuted ? strict_negation(q) : q;
      if (a.evidence && a.evidence->trace) ledger.trace(*a.evidence->trace, db.fragment_facts(), *to_f2(goal));
      if (oracle_consequence(db.theory(), goal).kind != VerdictKind::Consequence) o.fail(std::string("oracle rejects ") + w.q);
    }
    double ms = ms_since(t0);
    if (ms >= 100) o.fail("took " + fmt_ms(ms));
    if (o.ok) o.detail = "consistent; 4 verdicts oracle-confirmed in " + fmt_ms(ms);
    return o;
  }

  Outcome criterion4() {
    Outcome o;
    gen::Rng r(20240404);
    std::size_t worst = 0, max_nodes = 0;
    double worst_ratio = 0;
    auto t0 = Clock::now();
    for (int i = 0; i < 10000; i++) {
      Theory g = gen::theory(r, 5, 8, 4);
      try {
        Tableau t = build_systematic(g);
        const auto& s = t.stats();
        if (s.max_branch_length > s.branch_length_ceiling) o.fail("branch ceiling exceeded on case " + std::to_string(i));
        worst = std::max(worst, s.max_branch_length);
        max_nodes = std::max(max_nodes, s.nodes);
        worst_ratio = std::max(worst_ratio, double(s.max_branch_length) / double(s.branch_length_ceiling));
      } catch (const TableauError& e) {
        o.fail("case " + std::to_string(i) + ": " + e.what());
      }
    }
    double s = ms_since(t0) / 1000;
    if (s >= 60) o.fail("sweep took " + std::to_string(s) + " s");
    if (o.ok) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "10000 theories in %.2f s; longest branch %zu (%.0f%% of ceiling), largest tableau %zu nodes",
                    s, worst, worst_ratio * 100, max_nodes);
      o.detail = buf;
    }
    return o;
  }

  // Compares the tableau with the oracle on one theory/query pair.
  void agree(Outcome& o, const Theory& g, const SFormula& q, std::size_t& cases) {
    cases++;
    auto d = decide(g, q);
    auto v = oracle_consequence(g, q);
    if (d.kind != v.kind) {
      std::string s;
      for (const auto& f: g) s += render(f) + "; ";
      o.fail("disagreement on {" + s + "} |- " + render(q));
      return;
    }
    if (d.kind == VerdictKind::Consequence) ledger.tableau(d.tableau);
    else {
      ledger.frame(g, q, d.countermodel);
      ledger.frame(g, q, v.countermodel);
    }
  }

  Outcome criterion5() {
    Outcome o;
    auto pool = gen::shallow_sformulas();
    std::size_t exhaustive = 0, randomized = 0;
    // Every theory of at most two distinct pool formulas, against every pool query:
    // each refutation attempt sees at most three formulas.
    for (std::size_t i = 0; i <= pool.size(); i++)
      for (std::size_t j = i; j <= pool.size(); j++) {
        if (j == i && i != pool.size()) continue;
        Theory g;
        if (i < pool.size()) g.insert(pool[i]);
        if (j < pool.size()) g.insert(pool[j]);
        for (const auto& q: pool) agree(o, g, q, exhaustive);
      }
    gen::Rng r(5150);
    for (int k = 0; k < 10000; k++) {
      Theory g = gen::theory(r, 4, 6, 3);
      agree(o, g, gen::sformula(r, gen::alphabet(4), 3), randomized);
    }
    if (o.ok) o.detail = std::to_string(exhaustive) + " exhaustive + " + std::to_string(randomized) + " random cases, 0 disagreements";
    return o;
  }

  Outcome criterion6() {
    Outcome o;
    gen::Rng r(6006);
    std::size_t cases = 0, f1_cases = 0, proved = 0, skipped_inconsistent = 0;
    while (cases < 10000) {
      auto facts = gen::f2_theory(r, 4, 6, 2);
      auto q = gen::f2_fact(r, gen::alphabet(4), 2, 0.5);
      Theory g = gen::to_theory(facts);
      bool consistent = f2_consistency(facts).consistent;
      if (consistent != oracle_satisfiable(g).has_value()) o.fail("consistency disagrees with the oracle");
      if (!consistent) {
        skipped_inconsistent++;
        continue;
      }
      cases++;
      auto sq = q.to_sformula();
      auto oracle = oracle_consequence(g, sq).kind;
      auto f2 = f2_decide(facts, q);
      auto tab = decide(g, sq);
      if (f2.kind != oracle || tab.kind != oracle) o.fail("engines disagree on " + q.render());
      bool in_f1 = q.in_f1() && std::all_of(facts.begin(), facts.end(), [](const F2Fact& f) { return f.in_f1(); });
      std::optional<FragmentVerdict> f1;
      if (in_f1) {
        f1_cases++;
        f1 = f1_decide(facts, q);
        if (f1->kind != oracle) o.fail("f1 disagrees on " + q.render());
      }
      if (oracle == VerdictKind::Consequence) {
        proved++;
        for (const auto* v: {&f2, f1 ? &*f1 : nullptr}) {
          if (!v) continue;
          if (!v->trace) {
            o.fail("consequence without a trace");
            continue;
          }
          ledger.trace(*v->trace, facts, q);
          for (const auto& s: v->trace->steps) {
            if (v->trace->system == RuleSystem::F1 && s.rule == FragmentRule::W) o.fail("F1 trace uses (W)");
          }
        }
        ledger.tableau(tab.tableau);
      } else {
        ledger.frame(g, sq, f2.countermodel);
        ledger.frame(g, sq, tab.countermodel);
        if (f1) ledger.frame(g, sq, f1->countermodel);
      }
    }
    if (o.ok)
      o.detail = std::to_string(cases) + " consistent theories (" + std::to_string(f1_cases) + " in F1, " + std::to_string(proved) +
                 " consequences), " + std::to_string(skipped_inconsistent) + " inconsistent ones matched the oracle";
    return o;
  }

  Outcome criterion7() {
    Outcome o;
    if (ledger.bad) o.fail(std::to_string(ledger.bad) + " invalid, first: " + ledger.first_bad);
    if (ledger.frames == 0 || ledger.proofs == 0) o.fail("no evidence collected");
    if (o.ok) o.detail = std::to_string(ledger.frames) + " countermodels and " + std::to_string(ledger.proofs) + " proofs verified";
    return o;
  }

  Outcome criterion8() {
    Outcome o;
    gen::Rng r(8888);
    auto vars6 = gen::alphabet(6);
    for (int i = 0; i < 10000; i++) {
      auto f = gen::sformula(r, vars6, 6);
      if (strict_negation(strict_negation(f)) != f) o.fail("strict negation is not an involution");
      auto p = gen::prop(r, vars6, 8);
      if (parse_prop(render(p)) != p) o.fail("round-trip failed on " + render(p));
      if (parse_sformula(render(f)) != f) o.fail("round-trip failed on " + render(f));
    }
    auto vars5 = gen::alphabet(5);
    for (int i = 0; i < 1000; i++) {
      std::vector<F2Fact> imps;
      for (auto& f: gen::f2_theory(r, 5, 8, 3))
        if (f.is_imp()) imps.push_back(f);
      VarSet s, t;
      for (const auto& v: vars5) {
        bool in = r.coin(0.3);
        if (in) s.insert(v);
        if (in || r.coin(0.3)) t.insert(v);
      }
      auto cs = horn_closure(imps, s), ct = horn_closure(imps, t);
      if (!std::includes(ct.begin(), ct.end(), cs.begin(), cs.end())) o.fail("closure not monotone");
      if (horn_closure(imps, cs) != cs) o.fail("closure not idempotent");
      if (!std::includes(cs.begin(), cs.end(), s.begin(), s.end())) o.fail("closure not extensive");
    }
    auto ing = ingest("X | ~X => Y & ~Y\n");
    if (!ing.ok()) o.fail("ingest failed");
    else {
      auto c = check(*ing.db);
      if (c.consistent) o.fail("tautology-to-contradiction theory reported consistent");
      else if (c.refutation) ledger.tableau(*c.refutation);
    }
    if (o.ok) o.detail = "involution, 20000 round-trips, 1000 closure instances, nonempty-frame refutation";
    return o;
  }

} // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  // Criterion 7 audits the evidence gathered by the others, so it runs last.
  std::vector<Entry> entries{{1, "one-world example refutation", criterion1},
                             {2, "chain and fork examples", criterion2},
                             {3, "RT22 database", criterion3},
                             {4, "termination sweep", criterion4},
                             {5, "tableau equals oracle", criterion5},
                             {6, "fragment engines agree", criterion6},
                             {8, "property suite", criterion8},
                             {7, "countermodel and proof validity", criterion7}};
  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const auto& e: entries) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, " [%.2f s]", ms_since(t0) / 1000);
    all = all && o.ok;
    lines.emplace_back(e.id, std::string(o.ok ? "PASS" : "FAIL") + " criterion " + std::to_string(e.id) + " (" + e.name + "): " + o.detail + buf);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line]: lines) std::cout << line << '\n';
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << std::endl;
  return all ? 0 : 1;
}
