#include "slogic/tableau.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace slogic {

  std::size_t TableauFormulaHash::operator()(const TableauFormula& f) const noexcept {
    if (const auto* sf = std::get_if<SFormula>(&f)) return sf->hash();
    const auto& l = std::get<Labeled>(f);
    return l.formula.hash() * 1000003u + l.world.id;
  }

  std::string render(const TableauFormula& f) {
    if (const auto* sf = std::get_if<SFormula>(&f)) return render(*sf);
    const auto& l = std::get<Labeled>(f);
    return "(" + render(l.formula) + ", " + l.world.name() + ")";
  }

  const char* rule_name(Rule r) noexcept {
    switch (r) {
      case Rule::Root: return "root";
      case Rule::Seed: return "seed";
      case Rule::Or: return "|";
      case Rule::NotOr: return "~|";
      case Rule::And: return "&";
      case Rule::NotAnd: return "~&";
      case Rule::Implies: return "->";
      case Rule::NotImplies: return "~->";
      case Rule::DoubleNeg: return "~~";
      case Rule::StrictImp: return "=>";
      case Rule::StrictNonImp: return "=/>";
      case Rule::Cut: return "C";
    }
    return "?";
  }

  bool is_branching(Rule r) noexcept {
    switch (r) {
      case Rule::Or: case Rule::NotAnd: case Rule::Implies: case Rule::StrictImp: case Rule::Cut: return true;
      default: return false;
    }
  }

  // ---- BranchLabel ----

  void BranchLabel::push(const std::vector<TableauFormula>& delta, std::optional<World> minted) {
    for (const auto& f: delta) {
      order_.push_back(f);
      counts_[f]++;
    }
    if (minted) worlds_.push_back(*minted);
  }

  void BranchLabel::pop(const std::vector<TableauFormula>& delta, std::optional<World> minted) {
    for (auto it = delta.rbegin(); it != delta.rend(); ++it) {
      auto c = counts_.find(*it);
      if (--c->second == 0) counts_.erase(c);
      order_.pop_back();
    }
    if (minted) worlds_.pop_back();
  }

  bool BranchLabel::contains(const TableauFormula& f) const { return counts_.contains(f); }

  bool BranchLabel::contains_all(const std::vector<TableauFormula>& fs) const {
    return std::all_of(fs.begin(), fs.end(), [this](const TableauFormula& f) { return contains(f); });
  }

  bool BranchLabel::has_world(World w) const {
    return std::find(worlds_.begin(), worlds_.end(), w) != worlds_.end();
  }

  World BranchLabel::fresh_world() const {
    World w{1};
    while (has_world(w)) w.id++;
    return w;
  }

  // ---- Rules ----

  std::optional<Rule> rule_for(const TableauFormula& principal) {
    if (const auto* sf = std::get_if<SFormula>(&principal))
      return sf->is_imp() ? Rule::StrictImp : Rule::StrictNonImp;
    const PropFormula& a = std::get<Labeled>(principal).formula;
    switch (a.kind()) {
      case Connective::Var: return std::nullopt;
      case Connective::And: return Rule::And;
      case Connective::Or: return Rule::Or;
      case Connective::Implies: return Rule::Implies;
      case Connective::Not:
        switch (a.lhs().kind()) {
          case Connective::Var: return std::nullopt;
          case Connective::Not: return Rule::DoubleNeg;
          case Connective::And: return Rule::NotAnd;
          case Connective::Or: return Rule::NotOr;
          case Connective::Implies: return Rule::NotImplies;
        }
    }
    return std::nullopt;
  }

  RuleApplication apply_rule(const BranchLabel& branch, Rule rule, const TableauFormula& principal,
                             std::optional<World> world) {
    auto mismatch = [&] {
      return TableauError(TableauError::Code::RuleMismatch,
                          std::string("rule ") + rule_name(rule) + " does not apply to " + render(principal));
    };
    auto lab = [](PropFormula f, World w) -> TableauFormula { return Labeled{std::move(f), w}; };
    auto neg = [](const PropFormula& f) { return PropFormula::negation(f); };

    if (rule == Rule::Cut) {
      const auto* l = std::get_if<Labeled>(&principal);
      if (!l) throw mismatch();
      return {{{lab(l->formula, l->world)}, {lab(neg(l->formula), l->world)}}, std::nullopt};
    }
    if (rule == Rule::Root || rule == Rule::Seed || rule_for(principal) != rule) throw mismatch();
    if (!branch.contains(principal))
      throw TableauError(TableauError::Code::PrincipalNotOnBranch, render(principal) + " is not on the branch");

    if (const auto* sf = std::get_if<SFormula>(&principal)) {
      if (rule == Rule::StrictImp) {
        if (!world) throw TableauError(TableauError::Code::MissingWorld, "rule => needs a target world");
        return {{{lab(neg(sf->lhs), *world)}, {lab(sf->rhs, *world)}}, std::nullopt};
      }
      World v = branch.fresh_world();
      return {{{lab(sf->lhs, v), lab(neg(sf->rhs), v)}}, v};
    }

    const auto& [a, w] = std::get<Labeled>(principal);
    switch (rule) {
      case Rule::Or: return {{{lab(a.lhs(), w)}, {lab(a.rhs(), w)}}, std::nullopt};
      case Rule::And: return {{{lab(a.lhs(), w), lab(a.rhs(), w)}}, std::nullopt};
      case Rule::Implies: return {{{lab(neg(a.lhs()), w)}, {lab(a.rhs(), w)}}, std::nullopt};
      case Rule::NotOr: return {{{lab(neg(a.lhs().lhs()), w), lab(neg(a.lhs().rhs()), w)}}, std::nullopt};
      case Rule::NotAnd: return {{{lab(neg(a.lhs().lhs()), w)}, {lab(neg(a.lhs().rhs()), w)}}, std::nullopt};
      case Rule::NotImplies: return {{{lab(a.lhs().lhs(), w), lab(neg(a.lhs().rhs()), w)}}, std::nullopt};
      case Rule::DoubleNeg: return {{{lab(a.lhs().lhs(), w)}}, std::nullopt};
      default: throw mismatch();
    }
  }

  namespace {

    // A clash among `fs` against the branch (which must already contain `fs`).
    std::optional<Clash> find_clash(const BranchLabel& branch, const std::vector<TableauFormula>& fs) {
      for (const auto& f: fs) {
        const auto* l = std::get_if<Labeled>(&f);
        if (!l) continue;
        if (branch.contains(PropFormula::negation(l->formula), l->world)) return Clash{l->formula, l->world};
        if (l->formula.is_negation() && branch.contains(l->formula.lhs(), l->world))
          return Clash{l->formula.lhs(), l->world};
      }
      return std::nullopt;
    }

    bool would_clash(const BranchLabel& branch, const std::vector<TableauFormula>& delta) {
      auto present = [&](const PropFormula& f, World w) {
        TableauFormula tf = Labeled{f, w};
        return branch.contains(tf) || std::find(delta.begin(), delta.end(), tf) != delta.end();
      };
      for (const auto& f: delta) {
        const auto* l = std::get_if<Labeled>(&f);
        if (!l) continue;
        if (present(PropFormula::negation(l->formula), l->world)) return true;
        if (l->formula.is_negation() && present(l->formula.lhs(), l->world)) return true;
      }
      return false;
    }

    void collect_subformulas(const PropFormula& f, std::set<PropFormula>& out) {
      if (!out.insert(f).second) return;
      if (f.kind() == Connective::Var) return;
      collect_subformulas(f.lhs(), out);
      if (f.kind() != Connective::Not) collect_subformulas(f.rhs(), out);
    }

  } // namespace

  // ---- Systematic construction ----
  //
  // Order of work on a branch: every nonimplication first (a linear chain that
  // mints all worlds), then worlds one at a time. At a world: linear labeled
  // rules, then branching rules (=> instances before labeled ones, preferring an
  // instance with a child that closes at once), then cuts on undecided atoms.
  // Worlds never interact, so a world whose own expansion closes is expanded
  // alone; otherwise the first fully expanded open branch ends construction.

  class TableauBuilder {
  public:
    TableauBuilder(const Theory& theory, const BuildOptions& options): options_(options) {
      t_.theory_ = theory;
      t_.atoms_ = theory.vars();
      std::set<PropFormula> subs;
      std::size_t nonimps = 0;
      for (const auto& f: theory) {
        collect_subformulas(f.lhs, subs);
        collect_subformulas(f.rhs, subs);
        if (f.is_imp()) imps_.push_back(f);
        else nonimps++;
      }
      std::size_t worlds = std::max<std::size_t>(nonimps, 1);
      t_.stats_.branch_length_ceiling = nonimps + 1 + worlds * 2 * (subs.size() + 1);
    }

    Tableau run() {
      if (build_prefix()) return finish();
      std::vector<World> worlds = branch_.worlds();
      if (worlds.size() > 1) {
        for (World w: worlds) {
          TableauBuilder local(t_.theory_, options_);
          local.build_prefix();
          local.order_ = {w};
          if (local.expand(local.tip_, 0, local.prefix_length_)) return local.finish();
        }
      }
      order_ = worlds;
      expand(tip_, 0, prefix_length_);
      return finish();
    }

  private:
    struct Step {
      Rule rule;
      TableauFormula principal;
      std::optional<World> world;
      RuleApplication app;
    };

    Tableau finish() {
      t_.stats_.nodes = t_.nodes_.size();
      return std::move(t_);
    }

    std::size_t add_node(TableauNode n) {
      if (t_.nodes_.size() >= options_.max_nodes)
        throw TableauError(TableauError::Code::LimitExceeded,
                           "tableau exceeded " + std::to_string(options_.max_nodes) + " nodes");
      std::size_t idx = t_.nodes_.size();
      if (n.parent) t_.nodes_[*n.parent].children.push_back(idx);
      t_.nodes_.push_back(std::move(n));
      return idx;
    }

    // Root, the nonimplication chain, and the seed world. Returns true if already closed.
    bool build_prefix() {
      TableauNode root;
      root.rule = Rule::Root;
      for (const auto& f: t_.theory_) root.delta.emplace_back(f);
      tip_ = add_node(std::move(root));
      branch_.push(t_.nodes_[tip_].delta);
      prefix_length_ = 0;

      bool any_nonimp = false;
      for (const auto& f: t_.theory_) {
        if (!f.is_nonimp()) continue;
        any_nonimp = true;
        TableauFormula principal = f;
        auto app = apply_rule(branch_, Rule::StrictNonImp, principal);
        TableauNode n;
        n.rule = Rule::StrictNonImp;
        n.principal = principal;
        n.minted = app.minted;
        n.delta = std::move(app.children.front());
        n.parent = tip_;
        tip_ = add_node(std::move(n));
        prefix_length_++;
        auto& node = t_.nodes_[tip_];
        branch_.push(node.delta, node.minted);
        if (auto clash = find_clash(branch_, node.delta)) {
          node.state = NodeState::Closed;
          node.clash = std::move(clash);
          return true;
        }
      }
      if (!any_nonimp) {
        TableauNode n;
        n.rule = Rule::Seed;
        n.minted = branch_.fresh_world();
        n.parent = tip_;
        tip_ = add_node(std::move(n));
        prefix_length_++;
        branch_.push({}, t_.nodes_[tip_].minted);
        t_.seeded_ = true;
      }
      return false;
    }

    std::optional<Step> next_step(World w) const {
      // Linear labeled rules.
      for (const auto& f: branch_.formulas()) {
        const auto* l = std::get_if<Labeled>(&f);
        if (!l || l->world != w) continue;
        auto r = rule_for(f);
        if (!r || is_branching(*r)) continue;
        auto app = apply_rule(branch_, *r, f);
        if (!branch_.contains_all(app.children.front())) return Step{*r, f, std::nullopt, std::move(app)};
      }

      // Branching rules whose instances are not yet satisfied on this branch.
      std::vector<Step> candidates;
      for (const auto& imp: imps_) {
        if (branch_.contains(PropFormula::negation(imp.lhs), w) || branch_.contains(imp.rhs, w)) continue;
        TableauFormula principal = imp;
        auto app = apply_rule(branch_, Rule::StrictImp, principal, w);
        candidates.push_back({Rule::StrictImp, std::move(principal), w, std::move(app)});
      }
      for (const auto& f: branch_.formulas()) {
        const auto* l = std::get_if<Labeled>(&f);
        if (!l || l->world != w) continue;
        auto r = rule_for(f);
        if (!r || !is_branching(*r)) continue;
        auto app = apply_rule(branch_, *r, f);
        bool done = std::any_of(app.children.begin(), app.children.end(),
                                [&](const auto& c) { return branch_.contains_all(c); });
        if (!done) candidates.push_back({*r, f, std::nullopt, std::move(app)});
      }
      if (!candidates.empty()) {
        for (auto& c: candidates) {
          bool closes = std::any_of(c.app.children.begin(), c.app.children.end(),
                                    [&](const auto& d) { return would_clash(branch_, d); });
          if (closes) return std::move(c);
        }
        return std::move(candidates.front());
      }

      for (const auto& x: t_.atoms_) {
        PropFormula atom = PropFormula::var(x);
        if (branch_.contains(atom, w) || branch_.contains(PropFormula::negation(atom), w)) continue;
        TableauFormula principal = Labeled{atom, w};
        auto app = apply_rule(branch_, Rule::Cut, principal);
        return Step{Rule::Cut, std::move(principal), w, std::move(app)};
      }
      return std::nullopt;
    }

    // Expands below `node` (already on the branch). True iff the subtree closed.
    bool expand(std::size_t node, std::size_t k, std::size_t length) {
      t_.stats_.max_branch_length = std::max(t_.stats_.max_branch_length, length);
      if (length > t_.stats_.branch_length_ceiling)
        throw TableauError(TableauError::Code::Internal, "branch exceeded the subformula bound");

      std::optional<Step> step;
      while (k < order_.size() && !(step = next_step(order_[k]))) k++;
      if (!step) {
        t_.nodes_[node].state = NodeState::Open;
        t_.open_leaf_ = node;
        return false;
      }

      std::vector<std::size_t> kids;
      for (auto& delta: step->app.children) {
        TableauNode n;
        n.rule = step->rule;
        n.principal = step->principal;
        n.world = step->rule == Rule::Cut ? std::nullopt : step->world;
        n.minted = step->app.minted;
        n.delta = std::move(delta);
        n.parent = node;
        n.state = NodeState::Pending;
        kids.push_back(add_node(std::move(n)));
      }
      t_.nodes_[node].state = NodeState::Interior;

      for (std::size_t kid: kids) {
        auto delta = t_.nodes_[kid].delta;
        auto minted = t_.nodes_[kid].minted;
        branch_.push(delta, minted);
        bool closed;
        if (auto clash = find_clash(branch_, delta)) {
          t_.nodes_[kid].state = NodeState::Closed;
          t_.nodes_[kid].clash = std::move(clash);
          closed = true;
        } else {
          t_.nodes_[kid].state = NodeState::Interior;
          closed = expand(kid, k, length + 1);
        }
        branch_.pop(delta, minted);
        if (!closed) return false;
      }
      return true;
    }

    BuildOptions options_;
    Tableau t_;
    std::vector<SFormula> imps_;
    BranchLabel branch_;
    std::vector<World> order_;
    std::size_t tip_ = 0;
    std::size_t prefix_length_ = 0;
  };

  Tableau build_systematic(const Theory& theory, const BuildOptions& options) {
    return TableauBuilder(theory, options).run();
  }

  bool is_closed(const Tableau& t) {
    for (const auto& n: t.nodes())
      if (n.children.empty() && n.state != NodeState::Closed) return false;
    return true;
  }

  std::size_t Tableau::world_count() const {
    std::set<World> seen;
    for (const auto& n: nodes_) if (n.minted) seen.insert(*n.minted);
    return seen.size();
  }

  BranchLabel Tableau::branch_to(std::size_t node) const {
    std::vector<std::size_t> path;
    for (std::optional<std::size_t> cur = node; cur; cur = nodes_.at(*cur).parent) path.push_back(*cur);
    BranchLabel res;
    for (auto it = path.rbegin(); it != path.rend(); ++it) res.push(nodes_[*it].delta, nodes_[*it].minted);
    return res;
  }

  Frame extract_frame(const BranchLabel& branch, const VarSet& atoms) {
    std::vector<World> worlds = branch.worlds();
    std::sort(worlds.begin(), worlds.end());
    Frame frame;
    for (World w: worlds) {
      Valuation val;
      for (const auto& x: atoms) {
        PropFormula atom = PropFormula::var(x);
        bool pos = branch.contains(atom, w), negd = branch.contains(PropFormula::negation(atom), w);
        if (pos == negd)
          throw TableauError(TableauError::Code::IncompleteBranch,
                             "atom " + x + " is " + (pos ? "contradictory" : "undecided") + " at " + w.name());
        val[x] = pos;
      }
      frame.add(std::move(val));
    }
    return frame;
  }

  TableauDecision decide(const Theory& theory, const SFormula& query, const BuildOptions& options) {
    Tableau t = build_systematic(theory.with(strict_negation(query)), options);
    if (is_closed(t)) return {VerdictKind::Consequence, std::move(t), std::nullopt};
    Frame frame = extract_frame(t.branch_to(*t.open_leaf()), t.atoms());
    return {VerdictKind::NotConsequence, std::move(t), std::move(frame)};
  }

  // ---- Replay ----

  namespace {

    struct Replayer {
      const Tableau& t;
      BranchLabel branch;
      std::string error;

      bool fail(std::size_t node, const std::string& msg) {
        error = "node " + std::to_string(node) + ": " + msg;
        return false;
      }

      bool visit(std::size_t i) {
        const auto& n = t.node(i);
        branch.push(n.delta, n.minted);
        bool ok = check_node(i) && check_children(i);
        branch.pop(n.delta, n.minted);
        return ok;
      }

      bool check_node(std::size_t i) {
        const auto& n = t.node(i);
        if (n.state == NodeState::Closed) {
          if (!n.clash) return fail(i, "closed without a clash");
          if (!n.children.empty()) return fail(i, "closed node has children");
          if (!branch.contains(n.clash->formula, n.clash->world) ||
              !branch.contains(PropFormula::negation(n.clash->formula), n.clash->world))
            return fail(i, "recorded clash is not on the branch");
        }
        return true;
      }

      bool check_children(std::size_t i) {
        const auto& n = t.node(i);
        if (n.children.empty()) return true;
        const auto& first = t.node(n.children.front());
        for (std::size_t c: n.children) {
          const auto& kid = t.node(c);
          if (kid.rule != first.rule || kid.principal != first.principal || kid.world != first.world)
            return fail(c, "siblings disagree on the applied rule");
        }
        if (first.rule == Rule::Root) return fail(n.children.front(), "root rule below the root");
        if (first.rule == Rule::Seed) {
          if (n.children.size() != 1) return fail(i, "seed must have one child");
          for (const auto& f: t.theory())
            if (f.is_nonimp()) return fail(n.children.front(), "seed used although a nonimplication is present");
          if (!first.delta.empty() || first.minted != branch.fresh_world())
            return fail(n.children.front(), "seed must mint a fresh world and add nothing");
        } else {
          if (!first.principal) return fail(n.children.front(), "missing principal formula");
          RuleApplication app;
          try {
            std::optional<World> w = first.rule == Rule::Cut ? std::nullopt : first.world;
            app = apply_rule(branch, first.rule, *first.principal, w);
          } catch (const TableauError& e) {
            return fail(n.children.front(), e.what());
          }
          if (app.children.size() != n.children.size()) return fail(i, "wrong number of children");
          for (std::size_t k = 0; k < app.children.size(); k++) {
            const auto& kid = t.node(n.children[k]);
            if (kid.delta != app.children[k] || kid.minted != app.minted)
              return fail(n.children[k], "delta does not match rule application");
          }
        }
        for (std::size_t c: n.children)
          if (!visit(c)) return false;
        return true;
      }
    };

  } // namespace

  ReplayResult replay(const Tableau& t) {
    if (t.nodes().empty()) return {false, "empty tableau"};
    std::vector<TableauFormula> expected;
    for (const auto& f: t.theory()) expected.emplace_back(f);
    if (t.root().rule != Rule::Root || t.root().delta != expected) return {false, "root does not list the theory"};
    Replayer r{t, {}, {}};
    if (!r.visit(0)) return {false, r.error};
    return {};
  }

  // ---- Export ----

  namespace {

    std::string join(const std::vector<TableauFormula>& fs) {
      std::string out;
      for (std::size_t i = 0; i < fs.size(); i++) out += (i ? ", " : "") + render(fs[i]);
      return out;
    }

    std::string clash_text(const Clash& c) {
      return "(" + render(c.formula) + ", " + c.world.name() + ") / (" +
             render(PropFormula::negation(c.formula)) + ", " + c.world.name() + ")";
    }

    void render_node(const Tableau& t, std::size_t i, std::size_t indent, std::string& out) {
      const auto& n = t.node(i);
      out += std::string(indent, ' ');
      if (n.rule == Rule::Root) {
        out += "root: " + join(n.delta);
      } else {
        out += std::string("[") + rule_name(n.rule) + "]";
        if (n.principal) out += " " + render(*n.principal);
        if (n.world) out += " @ " + n.world->name();
        if (n.rule == Rule::Seed) out += " world " + n.minted->name();
        if (!n.delta.empty()) out += "  adds " + join(n.delta);
      }
      switch (n.state) {
        case NodeState::Closed: out += "  ⊗ " + clash_text(*n.clash); break;
        case NodeState::Open: out += "  open"; break;
        case NodeState::Pending: out += "  (unexplored)"; break;
        case NodeState::Interior: break;
      }
      out += '\n';
      std::size_t child_indent = n.children.size() > 1 ? indent + 2 : indent;
      for (std::size_t c: n.children) render_node(t, c, child_indent, out);
    }

    nlohmann::json node_json(const Tableau& t, std::size_t i) {
      const auto& n = t.node(i);
      nlohmann::json j;
      j["rule"] = rule_name(n.rule);
      j["principal"] = n.principal ? nlohmann::json(render(*n.principal)) : nlohmann::json(nullptr);
      if (n.world) j["world"] = n.world->name();
      if (n.minted) j["minted"] = n.minted->name();
      nlohmann::json added = nlohmann::json::array();
      for (const auto& f: n.delta) added.push_back(render(f));
      j["added"] = std::move(added);
      nlohmann::json kids = nlohmann::json::array();
      for (std::size_t c: n.children) kids.push_back(node_json(t, c));
      j["children"] = std::move(kids);
      j["clash"] = n.clash ? nlohmann::json::array({render(TableauFormula{Labeled{n.clash->formula, n.clash->world}}),
                                                    render(TableauFormula{Labeled{PropFormula::negation(n.clash->formula),
                                                                                  n.clash->world}})})
                           : nlohmann::json(nullptr);
      const char* state = "interior";
      switch (n.state) {
        case NodeState::Closed: state = "closed"; break;
        case NodeState::Open: state = "open"; break;
        case NodeState::Pending: state = "pending"; break;
        case NodeState::Interior: break;
      }
      j["state"] = state;
      return j;
    }

  } // namespace

  std::string render_tableau(const Tableau& t) {
    std::string out;
    render_node(t, 0, 0, out);
    out += is_closed(t) ? "tableau closed" : "tableau open";
    out += " (" + std::to_string(t.nodes().size()) + " nodes, " + std::to_string(t.world_count()) + " world" +
           (t.world_count() == 1 ? "" : "s") + (t.seeded() ? ", seeded" : "") + ")\n";
    return out;
  }

  nlohmann::json tableau_to_json(const Tableau& t) {
    return {{"closed", is_closed(t)},
            {"seeded", t.seeded()},
            {"worlds", t.world_count()},
            {"nodes", t.nodes().size()},
            {"tree", node_json(t, 0)}};
  }

} // namespace slogic
