#include "slogic/fragments.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace slogic {

  // ---- Conjunction / F2Fact ----

  Conjunction::Conjunction(std::vector<VarName> vs): conjuncts_(std::move(vs)) {
    std::sort(conjuncts_.begin(), conjuncts_.end());
    conjuncts_.erase(std::unique(conjuncts_.begin(), conjuncts_.end()), conjuncts_.end());
  }

  bool Conjunction::contains(const VarName& v) const {
    return std::binary_search(conjuncts_.begin(), conjuncts_.end(), v);
  }

  bool Conjunction::subset_of(const Conjunction& other) const {
    return std::includes(other.conjuncts_.begin(), other.conjuncts_.end(), conjuncts_.begin(), conjuncts_.end());
  }

  Conjunction Conjunction::with(const VarName& v) const {
    auto vs = conjuncts_;
    vs.push_back(v);
    return Conjunction(std::move(vs));
  }

  Conjunction Conjunction::without(const VarName& v) const {
    auto vs = conjuncts_;
    vs.erase(std::remove(vs.begin(), vs.end(), v), vs.end());
    return Conjunction(std::move(vs));
  }

  Conjunction Conjunction::united(const Conjunction& other) const {
    auto vs = conjuncts_;
    vs.insert(vs.end(), other.conjuncts_.begin(), other.conjuncts_.end());
    return Conjunction(std::move(vs));
  }

  PropFormula Conjunction::to_formula() const {
    if (conjuncts_.empty()) throw FragmentError(FragmentError::Code::NotInFragment, "empty conjunction");
    PropFormula res = PropFormula::var(conjuncts_.front());
    for (std::size_t i = 1; i < conjuncts_.size(); i++)
      res = PropFormula::conjunction(std::move(res), PropFormula::var(conjuncts_[i]));
    return res;
  }

  std::string Conjunction::render() const {
    std::string out;
    for (std::size_t i = 0; i < conjuncts_.size(); i++) out += (i ? " & " : "") + conjuncts_[i];
    return out;
  }

  VarSet F2Fact::vars() const {
    VarSet res = ante.as_set();
    res.insert(cons);
    return res;
  }

  SFormula F2Fact::to_sformula() const {
    return {is_imp() ? StrictKind::Imp : StrictKind::NonImp, ante.to_formula(), PropFormula::var(cons)};
  }

  std::string F2Fact::render() const { return ante.render() + (is_imp() ? " => " : " =/> ") + cons; }

  F2Fact negate(const F2Fact& f) {
    return {f.is_imp() ? FactKind::NonImp : FactKind::Imp, f.ante, f.cons, std::nullopt};
  }

  namespace {

    bool collect_conjuncts(const PropFormula& f, std::vector<VarName>& out) {
      if (f.is_var()) {
        out.push_back(f.name());
        return true;
      }
      if (f.kind() != Connective::And) return false;
      return collect_conjuncts(f.lhs(), out) && collect_conjuncts(f.rhs(), out);
    }

  } // namespace

  std::optional<F2Fact> to_f2(const SFormula& f) {
    if (!f.rhs.is_var()) return std::nullopt;
    std::vector<VarName> ante;
    if (!collect_conjuncts(f.lhs, ante)) return std::nullopt;
    return F2Fact{f.is_imp() ? FactKind::Imp : FactKind::NonImp, Conjunction(std::move(ante)), f.rhs.name(), std::nullopt};
  }

  const char* rule_name(FragmentRule r) noexcept {
    switch (r) {
      case FragmentRule::I: return "I";
      case FragmentRule::W: return "W";
      case FragmentRule::HS: return "HS";
      case FragmentRule::N: return "N";
    }
    return "?";
  }

  // ---- Trace replay ----

  namespace {

    std::string check_f2_step(const TraceStep& s) {
      const auto& c = s.conclusion;
      const auto& p = s.premises;
      switch (s.rule) {
        case FragmentRule::I:
          if (!p.empty() || !c.is_imp() || c.ante != Conjunction{c.cons}) return "(I) must conclude X => X from nothing";
          return {};
        case FragmentRule::W:
          if (p.size() != 1 || !p[0].is_imp() || !c.is_imp() || p[0].cons != c.cons || !p[0].ante.subset_of(c.ante))
            return "(W) must weaken the antecedent of one implication";
          return {};
        case FragmentRule::HS: {
          if (p.size() != 2 || !p[0].is_imp() || !p[1].is_imp() || !c.is_imp() || p[0].cons != c.cons)
            return "(HS) needs implications X & B => Y and A => X concluding A & B => Y";
          const VarName& x = p[1].cons;
          if (!p[0].ante.contains(x)) return "(HS) cut variable is not a conjunct of the first premise";
          Conjunction narrow = p[1].ante.united(p[0].ante.without(x)), wide = p[1].ante.united(p[0].ante);
          if (c.ante != narrow && c.ante != wide) return "(HS) conclusion antecedent is not A & B";
          return {};
        }
        case FragmentRule::N: {
          if (p.size() < 2 || c.is_imp() || p[0].is_imp() || !p[1].is_imp())
            return "(N) needs A =/> X, A & Z => X and A => Y per conjunct, concluding B =/> Z";
          const Conjunction& a = p[0].ante;
          if (p[1].cons != p[0].cons || p[1].ante != a.with(c.cons)) return "(N) second premise is not A & Z => X";
          if (p.size() - 2 != c.ante.size()) return "(N) needs one premise per conjunct of B";
          for (std::size_t i = 0; i < c.ante.size(); i++) {
            const auto& q = p[i + 2];
            if (!q.is_imp() || q.ante != a || q.cons != c.ante.conjuncts()[i])
              return "(N) premise " + std::to_string(i + 3) + " is not A => Y for conjunct Y of B";
          }
          return {};
        }
      }
      return "unknown rule";
    }

    std::string check_f1_step(const TraceStep& s) {
      const auto& c = s.conclusion;
      const auto& p = s.premises;
      auto single = [](const F2Fact& f) { return f.ante.size() == 1; };
      if (!single(c) || !std::all_of(p.begin(), p.end(), single)) return "F1 rules only use single variables";
      auto v = [](const F2Fact& f) -> const VarName& { return f.ante.conjuncts().front(); };
      switch (s.rule) {
        case FragmentRule::I:
          if (!p.empty() || !c.is_imp() || v(c) != c.cons) return "(I) must conclude X => X from nothing";
          return {};
        case FragmentRule::HS:
          if (p.size() != 2 || !p[0].is_imp() || !p[1].is_imp() || !c.is_imp() || p[0].cons != v(p[1]) ||
              v(c) != v(p[0]) || c.cons != p[1].cons)
            return "(HS) must chain X => Y and Y => Z into X => Z";
          return {};
        case FragmentRule::N:
          // X =/> Y, X => W, Z => Y  gives  W =/> Z
          if (p.size() != 3 || p[0].is_imp() || !p[1].is_imp() || !p[2].is_imp() || c.is_imp() ||
              v(p[1]) != v(p[0]) || p[2].cons != p[0].cons || v(c) != p[1].cons || c.cons != v(p[2]))
            return "(N) must take X =/> Y, X => W, Z => Y to W =/> Z";
          return {};
        case FragmentRule::W:
          return "(W) is not an F1 rule";
      }
      return "unknown rule";
    }

  } // namespace

  TraceCheck replay_trace(const RuleTrace& trace, const std::vector<F2Fact>& given, const F2Fact& goal) {
    std::set<F2Fact> known(given.begin(), given.end());
    if (trace.steps.empty()) {
      if (known.contains(goal)) return {};
      return {false, "empty derivation but the goal is not given"};
    }
    for (std::size_t i = 0; i < trace.steps.size(); i++) {
      const auto& s = trace.steps[i];
      for (const auto& p: s.premises)
        if (!known.contains(p)) return {false, "step " + std::to_string(i + 1) + ": premise " + p.render() + " unavailable"};
      std::string err = trace.system == RuleSystem::F1 ? check_f1_step(s) : check_f2_step(s);
      if (!err.empty()) return {false, "step " + std::to_string(i + 1) + ": " + err};
      known.insert(s.conclusion);
    }
    if (trace.steps.back().conclusion != goal) return {false, "derivation does not end in the goal"};
    return {};
  }

  std::string render_trace(const RuleTrace& trace) {
    std::string out;
    for (const auto& s: trace.steps) {
      out += "derive " + s.conclusion.render() + " by (" + rule_name(s.rule) + ")";
      if (!s.premises.empty()) {
        out += " from ";
        for (std::size_t i = 0; i < s.premises.size(); i++) out += (i ? "; " : "") + s.premises[i].render();
      }
      out += '\n';
    }
    return out;
  }

  nlohmann::json trace_to_json(const RuleTrace& trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s: trace.steps) {
      nlohmann::json premises = nlohmann::json::array();
      for (const auto& p: s.premises) premises.push_back(p.render());
      steps.push_back({{"derive", s.conclusion.render()}, {"rule", rule_name(s.rule)}, {"from", std::move(premises)}});
    }
    return steps;
  }

  // ---- Horn closure ----

  HornClosure horn_closure_detail(const std::vector<F2Fact>& imps, const VarSet& seed) {
    HornClosure res;
    res.members = seed;
    std::map<VarName, std::vector<std::size_t>> watching;
    std::vector<std::size_t> missing(imps.size(), 0);
    std::deque<VarName> queue;
    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < imps.size(); i++) {
      if (!imps[i].is_imp()) continue;
      for (const auto& u: imps[i].ante.conjuncts()) {
        if (seed.contains(u)) continue;
        missing[i]++;
        watching[u].push_back(i);
      }
      if (missing[i] == 0) ready.push_back(i);
    }
    auto fire = [&](std::size_t i) {
      res.steps++;
      const auto& v = imps[i].cons;
      if (res.members.insert(v).second) {
        res.reason[v] = i;
        queue.push_back(v);
      }
    };
    while (!ready.empty() || !queue.empty()) {
      while (!ready.empty()) {
        fire(ready.front());
        ready.pop_front();
      }
      if (queue.empty()) break;
      VarName v = queue.front();
      queue.pop_front();
      auto it = watching.find(v);
      if (it == watching.end()) continue;
      for (std::size_t i: it->second) {
        res.steps++;
        if (--missing[i] == 0) ready.push_back(i);
      }
    }
    return res;
  }

  VarSet horn_closure(const std::vector<F2Fact>& imps, const VarSet& seed) {
    return horn_closure_detail(imps, seed).members;
  }

  namespace {

    Valuation valuation_of(const VarSet& trues, const VarSet& all) {
      Valuation w;
      for (const auto& v: all) w[v] = trues.contains(v);
      for (const auto& v: trues) w[v] = true;
      return w;
    }

    struct TraceBuilder {
      std::set<F2Fact> known;
      RuleTrace trace;

      TraceBuilder(const std::vector<F2Fact>& given, RuleSystem system): known(given.begin(), given.end()) {
        trace.system = system;
      }

      void add(FragmentRule rule, std::vector<F2Fact> premises, F2Fact conclusion) {
        if (known.contains(conclusion)) return;
        known.insert(conclusion);
        trace.steps.push_back({rule, std::move(premises), std::move(conclusion)});
      }
    };

    class F2Engine {
    public:
      explicit F2Engine(const std::vector<F2Fact>& theory): theory_(theory) {
        for (const auto& f: theory_) {
          if (f.ante.empty()) throw FragmentError(FragmentError::Code::NotInFragment, "empty antecedent");
          (f.is_imp() ? imps_ : nonimps_).push_back(f);
          auto vs = f.vars();
          vars_.insert(vs.begin(), vs.end());
        }
      }

      const VarSet& vars() const { return vars_; }
      std::size_t steps() const { return steps_; }

      const HornClosure& closure(const Conjunction& c) {
        auto it = cache_.find(c);
        if (it != cache_.end()) return it->second;
        auto res = horn_closure_detail(imps_, c.as_set());
        steps_ += res.steps;
        return cache_.emplace(c, std::move(res)).first->second;
      }

      // Derives C => z, which must be in the closure of C.
      void derive_imp(TraceBuilder& tb, const Conjunction& c, const VarName& z) {
        const HornClosure& cl = closure(c);
        std::function<void(const VarName&)> derive = [&](const VarName& v) {
          F2Fact target = F2Fact::imp(c, v);
          if (tb.known.contains(target)) return;
          if (c.contains(v)) {
            F2Fact id = F2Fact::imp(Conjunction{v}, v);
            tb.add(FragmentRule::I, {}, id);
            tb.add(FragmentRule::W, {id}, target);
            return;
          }
          const F2Fact& rule = imps_.at(cl.reason.at(v));
          for (const auto& u: rule.ante.conjuncts())
            if (!c.contains(u)) derive(u);
          Conjunction s = rule.ante;
          for (const auto& u: rule.ante.conjuncts()) {
            if (c.contains(u)) continue;
            Conjunction next = c.united(s.without(u));
            tb.add(FragmentRule::HS, {F2Fact::imp(s, v), F2Fact::imp(c, u)}, F2Fact::imp(next, v));
            s = std::move(next);
          }
          if (s != c) tb.add(FragmentRule::W, {F2Fact::imp(s, v)}, target);
        };
        derive(z);
      }

      ConsistencyReport consistency(const VarSet& extra) {
        ConsistencyReport rep;
        VarSet all = vars_;
        all.insert(extra.begin(), extra.end());
        Frame model;
        for (const auto& d: nonimps_) {
          const HornClosure& cl = closure(d.ante);
          if (cl.members.contains(d.cons)) {
            TraceBuilder tb(theory_, RuleSystem::F2);
            derive_imp(tb, d.ante, d.cons);
            rep.consistent = false;
            rep.conflict = Conflict{d, std::move(tb.trace)};
            return rep;
          }
          model.add(valuation_of(cl.members, all));
        }
        if (nonimps_.empty()) model.add(valuation_of({}, all));
        rep.model = std::move(model);
        return rep;
      }

      FragmentVerdict decide(const F2Fact& q) {
        if (q.ante.empty()) throw FragmentError(FragmentError::Code::NotInFragment, "query has an empty antecedent");
        if (!consistent_) consistent_ = consistency({}).consistent;
        if (!*consistent_)
          throw FragmentError(FragmentError::Code::InconsistentTheory, "theory is inconsistent");
        VarSet all = vars_;
        auto qv = q.vars();
        all.insert(qv.begin(), qv.end());

        TraceBuilder tb(theory_, RuleSystem::F2);
        FragmentVerdict res{VerdictKind::NotConsequence, std::nullopt, std::nullopt, 0};
        Frame frame;
        if (q.is_imp()) {
          const HornClosure& cl = closure(q.ante);
          if (cl.members.contains(q.cons)) {
            derive_imp(tb, q.ante, q.cons);
            res.kind = VerdictKind::Consequence;
          } else {
            for (const auto& d: nonimps_) frame.add(valuation_of(closure(d.ante).members, all));
            frame.add(valuation_of(cl.members, all));
          }
        } else {
          for (const auto& d: nonimps_) {
            const HornClosure& cld = closure(d.ante);
            if (!std::includes(cld.members.begin(), cld.members.end(), q.ante.conjuncts().begin(), q.ante.conjuncts().end())) {
              frame.add(valuation_of(cld.members, all));
              continue;
            }
            Conjunction dz = d.ante.with(q.cons);
            const HornClosure& cldz = closure(dz);
            if (cldz.members.contains(d.cons)) {
              if (!tb.known.contains(q)) {
                derive_imp(tb, dz, d.cons);
                std::vector<F2Fact> premises{d, F2Fact::imp(dz, d.cons)};
                for (const auto& u: q.ante.conjuncts()) {
                  derive_imp(tb, d.ante, u);
                  premises.push_back(F2Fact::imp(d.ante, u));
                }
                tb.add(FragmentRule::N, std::move(premises), F2Fact::nonimp(q.ante, q.cons));
              }
              res.kind = VerdictKind::Consequence;
              break;
            }
            frame.add(valuation_of(cldz.members, all));
          }
          if (res.kind == VerdictKind::NotConsequence && nonimps_.empty()) frame.add(valuation_of({}, all));
        }
        if (res.kind == VerdictKind::Consequence) res.trace = std::move(tb.trace);
        else res.countermodel = std::move(frame);
        res.steps = steps_;
        return res;
      }

    private:
      std::vector<F2Fact> theory_, imps_, nonimps_;
      VarSet vars_;
      std::map<Conjunction, HornClosure> cache_;
      std::optional<bool> consistent_;
      std::size_t steps_ = 0;
    };

    // ---- F1: reachability in the implication digraph ----

    class F1Engine {
    public:
      explicit F1Engine(const std::vector<F2Fact>& theory): theory_(theory) {
        for (const auto& f: theory_) {
          if (!f.in_f1()) throw FragmentError(FragmentError::Code::NotInFragment, f.render() + " is not in F1");
          const VarName& x = f.ante.conjuncts().front();
          vars_.insert(x);
          vars_.insert(f.cons);
          if (f.is_imp()) succ_[x].push_back(f.cons);
          else nonimps_.push_back(f);
        }
      }

      // BFS tree from x: parent pointers, x maps to itself.
      const std::map<VarName, VarName>& reach(const VarName& x) {
        auto it = cache_.find(x);
        if (it != cache_.end()) return it->second;
        std::map<VarName, VarName> parent{{x, x}};
        std::deque<VarName> queue{x};
        while (!queue.empty()) {
          VarName u = queue.front();
          queue.pop_front();
          auto s = succ_.find(u);
          if (s == succ_.end()) continue;
          for (const auto& v: s->second) {
            steps_++;
            if (parent.emplace(v, u).second) queue.push_back(v);
          }
        }
        return cache_.emplace(x, std::move(parent)).first->second;
      }

      VarSet reach_set(const VarName& x) {
        VarSet res;
        for (const auto& [v, _]: reach(x)) res.insert(v);
        return res;
      }

      static F2Fact imp(const VarName& a, const VarName& b) { return F2Fact::imp(Conjunction{a}, b); }

      void derive_path(TraceBuilder& tb, const VarName& x, const VarName& z) {
        if (x == z) {
          tb.add(FragmentRule::I, {}, imp(x, x));
          return;
        }
        const auto& parent = reach(x);
        std::vector<VarName> path{z};
        while (path.back() != x) path.push_back(parent.at(path.back()));
        std::reverse(path.begin(), path.end());
        for (std::size_t i = 2; i < path.size(); i++)
          tb.add(FragmentRule::HS, {imp(x, path[i - 1]), imp(path[i - 1], path[i])}, imp(x, path[i]));
      }

      ConsistencyReport consistency(const VarSet& extra) {
        ConsistencyReport rep;
        VarSet all = vars_;
        all.insert(extra.begin(), extra.end());
        Frame model;
        for (const auto& d: nonimps_) {
          const VarName& x = d.ante.conjuncts().front();
          if (reach(x).contains(d.cons)) {
            TraceBuilder tb(theory_, RuleSystem::F1);
            derive_path(tb, x, d.cons);
            rep.consistent = false;
            rep.conflict = Conflict{d, std::move(tb.trace)};
            return rep;
          }
          model.add(valuation_of(reach_set(x), all));
        }
        if (nonimps_.empty()) model.add(valuation_of({}, all));
        rep.model = std::move(model);
        return rep;
      }

      FragmentVerdict decide(const F2Fact& q) {
        if (!q.in_f1()) throw FragmentError(FragmentError::Code::NotInFragment, q.render() + " is not in F1");
        if (!consistency({}).consistent)
          throw FragmentError(FragmentError::Code::InconsistentTheory, "theory is inconsistent");
        VarSet all = vars_;
        all.insert(q.ante.conjuncts().front());
        all.insert(q.cons);
        const VarName& w = q.ante.conjuncts().front();
        const VarName& z = q.cons;

        TraceBuilder tb(theory_, RuleSystem::F1);
        FragmentVerdict res{VerdictKind::NotConsequence, std::nullopt, std::nullopt, 0};
        Frame frame;
        if (q.is_imp()) {
          if (reach(w).contains(z)) {
            derive_path(tb, w, z);
            res.kind = VerdictKind::Consequence;
          } else {
            for (const auto& d: nonimps_) frame.add(valuation_of(reach_set(d.ante.conjuncts().front()), all));
            frame.add(valuation_of(reach_set(w), all));
          }
        } else {
          for (const auto& d: nonimps_) {
            const VarName& x = d.ante.conjuncts().front();
            const VarName& y = d.cons;
            VarSet wx = reach_set(x);
            if (!wx.contains(w)) {
              frame.add(valuation_of(wx, all));
              continue;
            }
            if (reach(z).contains(y)) {
              if (!tb.known.contains(q)) {
                derive_path(tb, x, w);
                derive_path(tb, z, y);
                tb.add(FragmentRule::N, {d, imp(x, w), imp(z, y)}, F2Fact::nonimp(Conjunction{w}, z));
              }
              res.kind = VerdictKind::Consequence;
              break;
            }
            VarSet wxz = reach_set(z);
            wxz.insert(wx.begin(), wx.end());
            frame.add(valuation_of(wxz, all));
          }
          if (res.kind == VerdictKind::NotConsequence && nonimps_.empty()) frame.add(valuation_of({}, all));
        }
        if (res.kind == VerdictKind::Consequence) res.trace = std::move(tb.trace);
        else res.countermodel = std::move(frame);
        res.steps = steps_;
        return res;
      }

    private:
      std::vector<F2Fact> theory_, nonimps_;
      std::map<VarName, std::vector<VarName>> succ_;
      VarSet vars_;
      std::map<VarName, std::map<VarName, VarName>> cache_;
      std::size_t steps_ = 0;
    };

  } // namespace

  ConsistencyReport f2_consistency(const std::vector<F2Fact>& theory, const VarSet& extra_vars) {
    return F2Engine(theory).consistency(extra_vars);
  }

  ConsistencyReport f1_consistency(const std::vector<F2Fact>& theory, const VarSet& extra_vars) {
    return F1Engine(theory).consistency(extra_vars);
  }

  FragmentVerdict f2_decide(const std::vector<F2Fact>& theory, const F2Fact& query) {
    return F2Engine(theory).decide(query);
  }

  FragmentVerdict f1_decide(const std::vector<F2Fact>& theory, const F2Fact& query) {
    return F1Engine(theory).decide(query);
  }

  std::vector<DerivedFact> saturate(const std::vector<F2Fact>& theory, std::size_t max_ante, const VarSet& extra_vars) {
    if (max_ante == 0) throw std::invalid_argument("max_ante must be at least 1");
    F2Engine engine(theory);
    if (!engine.consistency({}).consistent)
      throw FragmentError(FragmentError::Code::InconsistentTheory, "theory is inconsistent");
    VarSet all = engine.vars();
    all.insert(extra_vars.begin(), extra_vars.end());
    std::vector<VarName> vars(all.begin(), all.end());

    std::vector<Conjunction> antes;
    std::vector<VarName> cur;
    std::function<void(std::size_t)> gen = [&](std::size_t start) {
      if (!cur.empty()) antes.emplace_back(cur);
      if (cur.size() == max_ante) return;
      for (std::size_t i = start; i < vars.size(); i++) {
        cur.push_back(vars[i]);
        gen(i + 1);
        cur.pop_back();
      }
    };
    gen(0);

    std::map<std::pair<Conjunction, VarName>, bool> nonimp_memo;
    auto nonimp_holds = [&](const Conjunction& a, const VarName& z) {
      auto key = std::make_pair(a, z);
      auto it = nonimp_memo.find(key);
      if (it != nonimp_memo.end()) return it->second;
      bool r = engine.decide(F2Fact::nonimp(a, z)).kind == VerdictKind::Consequence;
      nonimp_memo[key] = r;
      return r;
    };

    std::vector<DerivedFact> res;
    for (const auto& a: antes) {
      for (const auto& z: vars) {
        if (engine.closure(a).members.contains(z)) {
          bool minimal = a.size() == 1 || std::none_of(a.conjuncts().begin(), a.conjuncts().end(), [&](const VarName& u) {
            return engine.closure(a.without(u)).members.contains(z);
          });
          if (minimal) {
            auto v = engine.decide(F2Fact::imp(a, z));
            res.push_back({F2Fact::imp(a, z), std::move(*v.trace)});
          }
        }
        if (nonimp_holds(a, z)) {
          bool maximal = a.size() == max_ante || std::none_of(vars.begin(), vars.end(), [&](const VarName& x) {
            return !a.contains(x) && nonimp_holds(a.with(x), z);
          });
          if (maximal) {
            auto v = engine.decide(F2Fact::nonimp(a, z));
            res.push_back({F2Fact::nonimp(a, z), std::move(*v.trace)});
          }
        }
      }
    }
    std::sort(res.begin(), res.end(), [](const DerivedFact& x, const DerivedFact& y) { return x.fact < y.fact; });
    return res;
  }

} // namespace slogic
