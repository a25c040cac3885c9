// slogic :: semantics
//
// Frames (nonempty sets of valuations), satisfaction of s-formulas and
// theories, and a brute-force satisfiability oracle that enumerates
// valuations over the variables of a theory.

#ifndef SLOGIC_SEMANTICS_HPP_
#define SLOGIC_SEMANTICS_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "slogic/formula.hpp"

namespace slogic {

  class EmptyFrame: public std::logic_error {
  public:
    EmptyFrame(): std::logic_error("frame has no worlds") {}
  };

  // Worlds keep insertion order; equal valuations are stored once.
  class Frame {
  public:
    Frame() = default;
    explicit Frame(std::vector<Valuation> worlds);

    void add(Valuation w);
    const std::vector<Valuation>& worlds() const noexcept { return worlds_; }
    std::size_t size() const noexcept { return worlds_.size(); }
    bool empty() const noexcept { return worlds_.empty(); }

    friend bool operator==(const Frame&, const Frame&) = default;

  private:
    std::vector<Valuation> worlds_;
  };

  bool satisfies_frame(const Frame& frame, const SFormula& f);
  bool satisfies_theory(const Frame& frame, const Theory& theory);

  // {"worlds":[{"X":true,"Y":false},...]}, variables sorted.
  nlohmann::json frame_to_json(const Frame& frame);
  Frame frame_from_json(const nlohmann::json& j);
  // One line per world: `{X=T, Y=F}`.
  std::string render_frame(const Frame& frame);

  enum class VerdictKind : std::uint8_t { Consequence, NotConsequence };

  // ---- Brute-force oracle ----

  inline constexpr std::size_t kOracleMaxVars = 20;

  class OracleLimitExceeded: public std::runtime_error {
  public:
    explicit OracleLimitExceeded(std::size_t vars);
  };

  struct OracleVerdict {
    VerdictKind kind;
    // Frame satisfying the theory and falsifying the query, when kind == NotConsequence.
    std::optional<Frame> countermodel;
  };

  // Searches one witness valuation per nonimplication (or a single valuation when
  // there are none), each satisfying every implication. Valuations range over
  // `extra_vars` together with the theory's own variables, enumerated in lexicographic
  // order over the sorted variable list (all-false first).
  std::optional<Frame> oracle_satisfiable(const Theory& theory, const VarSet& extra_vars = {});
  OracleVerdict oracle_consequence(const Theory& theory, const SFormula& query);

  // Exhaustive check over every nonempty set of valuations on vars(theory).
  // Only meant for tiny theories (at most 4 variables).
  bool naive_satisfiable(const Theory& theory);

} // namespace slogic

#endif // SLOGIC_SEMANTICS_HPP_
