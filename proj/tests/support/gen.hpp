// Hand-rolled random generators shared by the property tests and the
// acceptance runner. Everything is seeded explicitly so failures reproduce.

#ifndef SLOGIC_TESTS_GEN_HPP_
#define SLOGIC_TESTS_GEN_HPP_

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "slogic/formula.hpp"
#include "slogic/fragments.hpp"
#include "slogic/semantics.hpp"

namespace gen {

  using namespace slogic;

  class Rng {
  public:
    explicit Rng(std::uint64_t seed): eng_(seed) {}
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_); }
    std::size_t between(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
    template <class T>
    const T& pick(const std::vector<T>& xs) { return xs[below(xs.size())]; }
    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
  };

  inline std::vector<VarName> alphabet(std::size_t n) {
    static const std::vector<VarName> names{"X", "Y", "A", "B", "C", "D", "Z", "W"};
    std::vector<VarName> out;
    for (std::size_t i = 0; i < n; i++) out.push_back(i < names.size() ? names[i] : "V" + std::to_string(i));
    return out;
  }

  // Random formula of depth at most `depth`; leaves become likelier as depth shrinks.
  inline PropFormula prop(Rng& r, const std::vector<VarName>& vars, std::size_t depth) {
    if (depth == 0 || r.coin(0.3)) return PropFormula::var(r.pick(vars));
    switch (r.below(5)) {
      case 0: return PropFormula::negation(prop(r, vars, depth - 1));
      case 1: return PropFormula::conjunction(prop(r, vars, depth - 1), prop(r, vars, depth - 1));
      case 2: return PropFormula::disjunction(prop(r, vars, depth - 1), prop(r, vars, depth - 1));
      case 3: return PropFormula::implication(prop(r, vars, depth - 1), prop(r, vars, depth - 1));
      default: return PropFormula::negation(PropFormula::var(r.pick(vars)));
    }
  }

  inline SFormula sformula(Rng& r, const std::vector<VarName>& vars, std::size_t depth) {
    auto a = prop(r, vars, depth), b = prop(r, vars, depth);
    return r.coin(0.65) ? SFormula::imp(a, b) : SFormula::nonimp(a, b);
  }

  inline Theory theory(Rng& r, std::size_t nvars, std::size_t max_formulas, std::size_t depth) {
    auto vars = alphabet(nvars);
    Theory t;
    std::size_t n = r.between(0, max_formulas);
    for (std::size_t i = 0; i < n; i++) t.insert(sformula(r, vars, depth));
    return t;
  }

  inline Conjunction conjunction(Rng& r, const std::vector<VarName>& vars, std::size_t max_size) {
    std::vector<VarName> cs;
    std::size_t n = r.between(1, max_size);
    for (std::size_t i = 0; i < n; i++) cs.push_back(r.pick(vars));
    return Conjunction(cs);
  }

  inline F2Fact f2_fact(Rng& r, const std::vector<VarName>& vars, std::size_t max_ante, double p_imp = 0.7) {
    auto a = conjunction(r, vars, max_ante);
    return r.coin(p_imp) ? F2Fact::imp(a, r.pick(vars)) : F2Fact::nonimp(a, r.pick(vars));
  }

  inline std::vector<F2Fact> f2_theory(Rng& r, std::size_t nvars, std::size_t max_facts, std::size_t max_ante) {
    auto vars = alphabet(nvars);
    std::vector<F2Fact> out;
    std::size_t n = r.between(0, max_facts);
    for (std::size_t i = 0; i < n; i++) {
      auto f = f2_fact(r, vars, max_ante);
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    return out;
  }

  inline Theory to_theory(const std::vector<F2Fact>& facts) {
    Theory t;
    for (const auto& f: facts) t.insert(f.to_sformula());
    return t;
  }

  inline Valuation valuation(Rng& r, const std::vector<VarName>& vars) {
    Valuation w;
    for (const auto& v: vars) w[v] = r.coin();
    return w;
  }

  inline Frame frame(Rng& r, const std::vector<VarName>& vars, std::size_t max_worlds) {
    Frame f;
    std::size_t n = r.between(1, max_worlds);
    for (std::size_t i = 0; i < n; i++) f.add(valuation(r, vars));
    return f;
  }

  // Every formula over two variables whose depth is at most one, up to
  // commuting the arguments of & and |, and skipping repeated arguments.
  inline std::vector<PropFormula> shallow_props() {
    auto x = PropFormula::var("X"), y = PropFormula::var("Y");
    return {x, y, PropFormula::negation(x), PropFormula::negation(y),
            PropFormula::conjunction(x, y), PropFormula::disjunction(x, y),
            PropFormula::implication(x, y), PropFormula::implication(y, x)};
  }

  inline std::vector<SFormula> shallow_sformulas() {
    std::vector<SFormula> out;
    auto ps = shallow_props();
    for (const auto& a: ps)
      for (const auto& b: ps) {
        out.push_back(SFormula::imp(a, b));
        out.push_back(SFormula::nonimp(a, b));
      }
    return out;
  }

} // namespace gen

#endif // SLOGIC_TESTS_GEN_HPP_
