#include "slogic/semantics.hpp"

#include <algorithm>

namespace slogic {

  Frame::Frame(std::vector<Valuation> worlds) {
    for (auto& w: worlds) add(std::move(w));
  }

  void Frame::add(Valuation w) {
    if (std::find(worlds_.begin(), worlds_.end(), w) == worlds_.end()) worlds_.push_back(std::move(w));
  }

  bool satisfies_frame(const Frame& frame, const SFormula& f) {
    if (frame.empty()) throw EmptyFrame();
    if (f.is_imp()) {
      return std::all_of(frame.worlds().begin(), frame.worlds().end(), [&](const Valuation& w) {
        return !eval(w, f.lhs) || eval(w, f.rhs);
      });
    }
    return std::any_of(frame.worlds().begin(), frame.worlds().end(), [&](const Valuation& w) {
      return eval(w, f.lhs) && !eval(w, f.rhs);
    });
  }

  bool satisfies_theory(const Frame& frame, const Theory& theory) {
    if (frame.empty()) throw EmptyFrame();
    return std::all_of(theory.begin(), theory.end(), [&](const SFormula& f) { return satisfies_frame(frame, f); });
  }

  nlohmann::json frame_to_json(const Frame& frame) {
    nlohmann::json worlds = nlohmann::json::array();
    for (const auto& w: frame.worlds()) {
      nlohmann::json obj = nlohmann::json::object();
      for (const auto& [name, value]: w) obj[name] = value;
      worlds.push_back(std::move(obj));
    }
    return {{"worlds", std::move(worlds)}};
  }

  Frame frame_from_json(const nlohmann::json& j) {
    Frame res;
    for (const auto& obj: j.at("worlds")) {
      Valuation w;
      for (const auto& [name, value]: obj.items()) w[name] = value.get<bool>();
      res.add(std::move(w));
    }
    return res;
  }

  std::string render_frame(const Frame& frame) {
    std::string out;
    for (std::size_t i = 0; i < frame.size(); i++) {
      out += "  world " + std::to_string(i + 1) + ": {";
      bool first = true;
      for (const auto& [name, value]: frame.worlds()[i]) {
        out += (first ? "" : ", ") + name + (value ? "=T" : "=F");
        first = false;
      }
      out += "}\n";
    }
    return out;
  }

  OracleLimitExceeded::OracleLimitExceeded(std::size_t vars):
    std::runtime_error("oracle limited to " + std::to_string(kOracleMaxVars) + " variables, got " + std::to_string(vars)) {}

  namespace {

    using Mask = std::uint32_t;

    // Variable i (in sorted order) is bit (n - 1 - i), so counting up enumerates
    // valuations lexicographically with the first variable most significant.
    struct Compiled {
      std::vector<VarName> vars;

      int index(const VarName& v) const {
        auto it = std::lower_bound(vars.begin(), vars.end(), v);
        return static_cast<int>(it - vars.begin());
      }

      bool eval(const PropFormula& f, Mask m) const {
        switch (f.kind()) {
          case Connective::Var: return (m >> (vars.size() - 1 - index(f.name()))) & 1u;
          case Connective::Not: return !eval(f.lhs(), m);
          case Connective::And: return eval(f.lhs(), m) && eval(f.rhs(), m);
          case Connective::Or: return eval(f.lhs(), m) || eval(f.rhs(), m);
          case Connective::Implies: return !eval(f.lhs(), m) || eval(f.rhs(), m);
        }
        return false;
      }

      Valuation valuation(Mask m) const {
        Valuation w;
        for (std::size_t i = 0; i < vars.size(); i++) w[vars[i]] = (m >> (vars.size() - 1 - i)) & 1u;
        return w;
      }
    };

    // Truth table of a formula as a bit vector over all valuations.
    std::vector<bool> table(const Compiled& c, const PropFormula& f) {
      std::size_t count = std::size_t{1} << c.vars.size();
      std::vector<bool> res(count);
      for (Mask m = 0; m < count; m++) res[m] = c.eval(f, m);
      return res;
    }

  } // namespace

  std::optional<Frame> oracle_satisfiable(const Theory& theory, const VarSet& extra_vars) {
    VarSet all = theory.vars();
    all.insert(extra_vars.begin(), extra_vars.end());
    if (all.size() > kOracleMaxVars) throw OracleLimitExceeded(all.size());
    Compiled c{{all.begin(), all.end()}};
    std::size_t count = std::size_t{1} << c.vars.size();

    std::vector<bool> admissible(count, true);
    for (const auto& f: theory) {
      if (!f.is_imp()) continue;
      auto a = table(c, f.lhs), b = table(c, f.rhs);
      for (Mask m = 0; m < count; m++) if (a[m] && !b[m]) admissible[m] = false;
    }

    Frame frame;
    bool any_nonimp = false;
    for (const auto& f: theory) {
      if (!f.is_nonimp()) continue;
      any_nonimp = true;
      auto a = table(c, f.lhs), b = table(c, f.rhs);
      std::optional<Mask> witness;
      for (Mask m = 0; m < count && !witness; m++)
        if (admissible[m] && a[m] && !b[m]) witness = m;
      if (!witness) return std::nullopt;
      frame.add(c.valuation(*witness));
    }
    if (!any_nonimp) {
      auto it = std::find(admissible.begin(), admissible.end(), true);
      if (it == admissible.end()) return std::nullopt;
      frame.add(c.valuation(static_cast<Mask>(it - admissible.begin())));
    }
    return frame;
  }

  OracleVerdict oracle_consequence(const Theory& theory, const SFormula& query) {
    auto frame = oracle_satisfiable(theory.with(strict_negation(query)), query.vars());
    if (!frame) return {VerdictKind::Consequence, std::nullopt};
    return {VerdictKind::NotConsequence, std::move(frame)};
  }

  bool naive_satisfiable(const Theory& theory) {
    VarSet vs = theory.vars();
    if (vs.size() > 4) throw OracleLimitExceeded(vs.size());
    Compiled c{{vs.begin(), vs.end()}};
    std::size_t count = std::size_t{1} << c.vars.size();
    // Each subset of the valuation space is a candidate frame.
    for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << count); subset++) {
      Frame frame;
      for (Mask m = 0; m < count; m++)
        if ((subset >> m) & 1u) frame.add(c.valuation(m));
      if (satisfies_theory(frame, theory)) return true;
    }
    return false;
  }

} // namespace slogic
