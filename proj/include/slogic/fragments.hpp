// slogic :: fragments
//
// Decision procedures for the conjunctive fragment F2 (antecedent a nonempty
// conjunction of variables, consequent a single variable) and its
// single-variable subfragment F1. Implications are decided by Horn closure,
// nonimplications by checking each given nonimplication's witness world.
// Every positive answer comes with a derivation in the rules
//
//   (I)  X => X
//   (W)  A => Y  gives  B => Y          when every conjunct of A is in B
//   (HS) X & B => Y,  A => X  gives  A & B => Y
//   (N)  A =/> X,  A & Z => X,  A => Y for each conjunct Y of B  gives  B =/> Z
//
// and, for F1, the single-variable forms of (I), (HS) and (N).

#ifndef SLOGIC_FRAGMENTS_HPP_
#define SLOGIC_FRAGMENTS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "slogic/formula.hpp"
#include "slogic/semantics.hpp"

namespace slogic {

  // Nonempty set of variables, kept sorted and deduplicated.
  class Conjunction {
  public:
    Conjunction() = default;
    Conjunction(std::initializer_list<VarName> vs): Conjunction(std::vector<VarName>(vs)) {}
    explicit Conjunction(std::vector<VarName> vs);
    explicit Conjunction(const VarSet& vs): Conjunction(std::vector<VarName>(vs.begin(), vs.end())) {}

    const std::vector<VarName>& conjuncts() const noexcept { return conjuncts_; }
    std::size_t size() const noexcept { return conjuncts_.size(); }
    bool empty() const noexcept { return conjuncts_.empty(); }
    bool contains(const VarName& v) const;
    bool subset_of(const Conjunction& other) const;
    VarSet as_set() const { return {conjuncts_.begin(), conjuncts_.end()}; }
    Conjunction with(const VarName& v) const;
    Conjunction without(const VarName& v) const;
    Conjunction united(const Conjunction& other) const;

    PropFormula to_formula() const;
    std::string render() const;

    friend auto operator<=>(const Conjunction&, const Conjunction&) = default;

  private:
    std::vector<VarName> conjuncts_;
  };

  enum class FactKind : std::uint8_t { Imp, NonImp };

  struct F2Fact {
    FactKind kind = FactKind::Imp;
    Conjunction ante;
    VarName cons;
    std::optional<std::string> provenance;

    static F2Fact imp(Conjunction a, VarName c) { return {FactKind::Imp, std::move(a), std::move(c), std::nullopt}; }
    static F2Fact nonimp(Conjunction a, VarName c) { return {FactKind::NonImp, std::move(a), std::move(c), std::nullopt}; }

    bool is_imp() const noexcept { return kind == FactKind::Imp; }
    bool in_f1() const noexcept { return ante.size() == 1; }
    VarSet vars() const;
    SFormula to_sformula() const;
    std::string render() const;

    // Provenance does not take part in comparisons.
    friend bool operator==(const F2Fact& a, const F2Fact& b) noexcept {
      return a.kind == b.kind && a.ante == b.ante && a.cons == b.cons;
    }
    friend std::strong_ordering operator<=>(const F2Fact& a, const F2Fact& b) noexcept {
      if (auto c = a.kind <=> b.kind; c != 0) return c;
      if (auto c = a.ante <=> b.ante; c != 0) return c;
      return a.cons <=> b.cons;
    }
  };

  F2Fact negate(const F2Fact& f);

  // Conjunction-of-variables antecedent and variable consequent, else nullopt.
  std::optional<F2Fact> to_f2(const SFormula& f);

  class FragmentError: public std::runtime_error {
  public:
    enum class Code { InconsistentTheory, NotInFragment };
    FragmentError(Code code, const std::string& what): std::runtime_error(what), code_(code) {}
    Code code() const noexcept { return code_; }
  private:
    Code code_;
  };

  // ---- Derivations ----

  enum class FragmentRule : std::uint8_t { I, W, HS, N };
  enum class RuleSystem : std::uint8_t { F1, F2 };

  const char* rule_name(FragmentRule r) noexcept;

  struct TraceStep {
    FragmentRule rule;
    std::vector<F2Fact> premises;
    F2Fact conclusion;
  };

  // Steps in derivation order; the last conclusion is the derived fact. An empty
  // trace means the goal was given.
  struct RuleTrace {
    RuleSystem system = RuleSystem::F2;
    std::vector<TraceStep> steps;
  };

  struct TraceCheck {
    bool ok = true;
    std::string error;
  };

  // Every premise is given or concluded earlier, every step matches its rule
  // schema, and the trace ends in `goal`.
  TraceCheck replay_trace(const RuleTrace& trace, const std::vector<F2Fact>& given, const F2Fact& goal);

  // Lines of the form `derive <fact> by (RULE) from <premise>; <premise>`.
  std::string render_trace(const RuleTrace& trace);
  nlohmann::json trace_to_json(const RuleTrace& trace);

  // ---- Closure and decision ----

  struct HornClosure {
    VarSet members;
    // For each derived (non-seed) member, the index of the implication that fired.
    std::map<VarName, std::size_t> reason;
    std::size_t steps = 0;
  };

  // Least superset of `seed` closed under the implications (non-Imp facts are ignored).
  HornClosure horn_closure_detail(const std::vector<F2Fact>& imps, const VarSet& seed);
  VarSet horn_closure(const std::vector<F2Fact>& imps, const VarSet& seed);

  struct Conflict {
    F2Fact nonimp;
    RuleTrace derivation;    // of the matching implication
  };

  struct ConsistencyReport {
    bool consistent = true;
    std::optional<Conflict> conflict;
    std::optional<Frame> model;
  };

  ConsistencyReport f2_consistency(const std::vector<F2Fact>& theory, const VarSet& extra_vars = {});
  ConsistencyReport f1_consistency(const std::vector<F2Fact>& theory, const VarSet& extra_vars = {});

  struct FragmentVerdict {
    VerdictKind kind;
    std::optional<RuleTrace> trace;
    std::optional<Frame> countermodel;
    std::size_t steps = 0;     // closure work, for complexity accounting
  };

  FragmentVerdict f2_decide(const std::vector<F2Fact>& theory, const F2Fact& query);
  FragmentVerdict f1_decide(const std::vector<F2Fact>& theory, const F2Fact& query);

  struct DerivedFact {
    F2Fact fact;
    RuleTrace trace;
  };

  // All consequences with antecedents of at most `max_ante` variables, keeping only
  // the strongest: implications with minimal antecedents, nonimplications with
  // maximal ones. Sorted.
  std::vector<DerivedFact> saturate(const std::vector<F2Fact>& theory, std::size_t max_ante,
                                    const VarSet& extra_vars = {});

} // namespace slogic

#endif // SLOGIC_FRAGMENTS_HPP_
