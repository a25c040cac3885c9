// slogic :: tableau
//
// Refutational tableau calculus over s-formulas and world-labeled formulas
// (A, w). A node stores only the formulas its rule adds; the label of a branch
// is the union of deltas from the root down.

#ifndef SLOGIC_TABLEAU_HPP_
#define SLOGIC_TABLEAU_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <json.hpp>

#include "slogic/formula.hpp"
#include "slogic/semantics.hpp"

namespace slogic {

  // Element of the world alphabet, printed as w1, w2, ...
  struct World {
    std::uint32_t id = 0;
    std::string name() const { return "w" + std::to_string(id); }
    friend auto operator<=>(const World&, const World&) = default;
  };

  struct Labeled {
    PropFormula formula;
    World world;
    friend bool operator==(const Labeled&, const Labeled&) = default;
  };

  using TableauFormula = std::variant<SFormula, Labeled>;

  struct TableauFormulaHash {
    std::size_t operator()(const TableauFormula& f) const noexcept;
  };

  std::string render(const TableauFormula& f);

  enum class Rule : std::uint8_t {
    Root,
    Seed,          // supplies a world when the theory has no nonimplication
    Or, NotOr, And, NotAnd, Implies, NotImplies, DoubleNeg,
    StrictImp, StrictNonImp,
    Cut            // rule C, restricted to atoms
  };

  const char* rule_name(Rule r) noexcept;
  bool is_branching(Rule r) noexcept;

  class TableauError: public std::logic_error {
  public:
    enum class Code { RuleMismatch, MissingWorld, PrincipalNotOnBranch, IncompleteBranch, LimitExceeded, Internal };
    TableauError(Code code, const std::string& what): std::logic_error(what), code_(code) {}
    Code code() const noexcept { return code_; }
  private:
    Code code_;
  };

  // Multiset of tableau formulas along one root-to-node path, plus the worlds seen.
  class BranchLabel {
  public:
    void push(const std::vector<TableauFormula>& delta, std::optional<World> minted = std::nullopt);
    void pop(const std::vector<TableauFormula>& delta, std::optional<World> minted = std::nullopt);

    bool contains(const TableauFormula& f) const;
    bool contains(const PropFormula& f, World w) const { return contains(TableauFormula{Labeled{f, w}}); }
    bool contains_all(const std::vector<TableauFormula>& fs) const;

    // Formulas in insertion order; may repeat.
    const std::vector<TableauFormula>& formulas() const noexcept { return order_; }
    const std::vector<World>& worlds() const noexcept { return worlds_; }
    bool has_world(World w) const;
    // Smallest world id not on the branch.
    World fresh_world() const;

  private:
    std::vector<TableauFormula> order_;
    std::unordered_map<TableauFormula, int, TableauFormulaHash> counts_;
    std::vector<World> worlds_;
  };

  struct RuleApplication {
    std::vector<std::vector<TableauFormula>> children;
    std::optional<World> minted;
  };

  // The rule determined by the principal's shape. Cut and Seed are never inferred.
  std::optional<Rule> rule_for(const TableauFormula& principal);

  // One or two successor deltas. `world` is the target world for StrictImp; for Cut the
  // principal is the cut formula (X, w) and need not be on the branch; StrictNonImp mints
  // branch.fresh_world().
  RuleApplication apply_rule(const BranchLabel& branch, Rule rule, const TableauFormula& principal,
                             std::optional<World> world = std::nullopt);

  // Both (formula, world) and (~formula, world) are on the branch.
  struct Clash {
    PropFormula formula;
    World world;
  };

  enum class NodeState : std::uint8_t { Interior, Closed, Open, Pending };

  struct TableauNode {
    Rule rule = Rule::Root;
    std::optional<TableauFormula> principal;
    std::optional<World> world;    // StrictImp target
    std::optional<World> minted;   // StrictNonImp / Seed
    std::vector<TableauFormula> delta;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
    NodeState state = NodeState::Interior;
    std::optional<Clash> clash;
  };

  struct BuildOptions {
    std::size_t max_nodes = 20'000'000;
  };

  struct BuildStats {
    std::size_t nodes = 0;
    std::size_t max_branch_length = 0;
    // Rule applications any single branch can contain, from the subformula bound.
    std::size_t branch_length_ceiling = 0;
  };

  // Closed tableau or one with a fully expanded open branch. Siblings never visited
  // after the open branch was found are left in state Pending.
  class Tableau {
  public:
    const Theory& theory() const noexcept { return theory_; }
    const VarSet& atoms() const noexcept { return atoms_; }
    const std::vector<TableauNode>& nodes() const noexcept { return nodes_; }
    const TableauNode& node(std::size_t i) const { return nodes_.at(i); }
    const TableauNode& root() const { return nodes_.front(); }
    // True when no nonimplication supplied a world and one was seeded.
    bool seeded() const noexcept { return seeded_; }
    std::optional<std::size_t> open_leaf() const noexcept { return open_leaf_; }
    const BuildStats& stats() const noexcept { return stats_; }
    std::size_t world_count() const;

    // Label of the branch ending at `node`.
    BranchLabel branch_to(std::size_t node) const;

  private:
    friend class TableauBuilder;
    Theory theory_;
    VarSet atoms_;
    std::vector<TableauNode> nodes_;
    bool seeded_ = false;
    std::optional<std::size_t> open_leaf_;
    BuildStats stats_;
  };

  Tableau build_systematic(const Theory& theory, const BuildOptions& options = {});
  bool is_closed(const Tableau& t);

  // Reads each (atom, world) pair off a fully expanded open branch.
  Frame extract_frame(const BranchLabel& branch, const VarSet& atoms);

  struct TableauDecision {
    VerdictKind kind;
    Tableau tableau;               // for theory + {-query}
    std::optional<Frame> countermodel;
  };

  TableauDecision decide(const Theory& theory, const SFormula& query, const BuildOptions& options = {});

  struct ReplayResult {
    bool ok = true;
    std::string error;
  };

  // Re-derives every node from its parent with apply_rule and checks recorded clashes.
  ReplayResult replay(const Tableau& t);

  std::string render_tableau(const Tableau& t);
  nlohmann::json tableau_to_json(const Tableau& t);

} // namespace slogic

#endif // SLOGIC_TABLEAU_HPP_
