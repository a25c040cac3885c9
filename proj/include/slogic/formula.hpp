// slogic :: formula
//
// Propositional formulas, s-formulas (strict implication `=>` and strict
// nonimplication `=/>`), finite theories, parsing and printing.

#ifndef SLOGIC_FORMULA_HPP_
#define SLOGIC_FORMULA_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slogic {

  using VarName = std::string;
  using VarSet = std::set<VarName>;
  // Truth assignment; variables not present read as false.
  using Valuation = std::map<VarName, bool>;

  enum class Connective : std::uint8_t { Var, Not, And, Or, Implies };

  // Immutable formula tree. Copies share structure; equality is structural.
  class PropFormula {
  public:
    static PropFormula var(VarName name);
    static PropFormula negation(PropFormula a);
    static PropFormula conjunction(PropFormula a, PropFormula b);
    static PropFormula disjunction(PropFormula a, PropFormula b);
    static PropFormula implication(PropFormula a, PropFormula b);

    Connective kind() const noexcept { return node_->kind; }
    bool is_var() const noexcept { return kind() == Connective::Var; }
    bool is_negation() const noexcept { return kind() == Connective::Not; }

    // Only valid for Var.
    const VarName& name() const noexcept { return node_->name; }
    // Operand of Not, left operand of a binary connective.
    const PropFormula& lhs() const noexcept { return *node_->lhs; }
    // Right operand of a binary connective.
    const PropFormula& rhs() const noexcept { return *node_->rhs; }

    std::size_t hash() const noexcept { return node_->hash; }
    std::size_t size() const noexcept { return node_->size; }
    std::size_t depth() const noexcept { return node_->depth; }

    VarSet vars() const;
    void collect_vars(VarSet& out) const;

    friend bool operator==(const PropFormula& a, const PropFormula& b) noexcept;
    friend std::strong_ordering operator<=>(const PropFormula& a, const PropFormula& b) noexcept;

  private:
    struct Node {
      Connective kind;
      VarName name;
      std::unique_ptr<PropFormula> lhs, rhs;
      std::size_t hash;
      std::size_t size;
      std::size_t depth;
    };
    explicit PropFormula(std::shared_ptr<const Node> node) noexcept: node_(std::move(node)) {}
    static PropFormula make(Connective kind, VarName name,
                            std::optional<PropFormula> a, std::optional<PropFormula> b);

    std::shared_ptr<const Node> node_;
  };

  enum class StrictKind : std::uint8_t { Imp, NonImp };

  struct SFormula {
    StrictKind kind;
    PropFormula lhs;
    PropFormula rhs;

    static SFormula imp(PropFormula a, PropFormula b) { return {StrictKind::Imp, std::move(a), std::move(b)}; }
    static SFormula nonimp(PropFormula a, PropFormula b) { return {StrictKind::NonImp, std::move(a), std::move(b)}; }

    bool is_imp() const noexcept { return kind == StrictKind::Imp; }
    bool is_nonimp() const noexcept { return kind == StrictKind::NonImp; }
    VarSet vars() const;
    std::size_t hash() const noexcept;

    friend bool operator==(const SFormula&, const SFormula&) noexcept = default;
    friend std::strong_ordering operator<=>(const SFormula& a, const SFormula& b) noexcept;
  };

  // -(A => B) is A =/> B and vice versa.
  SFormula strict_negation(const SFormula& f);

  // Finite s-theory. Keeps first-insertion order; structural duplicates are dropped.
  class Theory {
  public:
    Theory() = default;
    Theory(std::initializer_list<SFormula> fs) { for (const auto& f: fs) insert(f); }
    explicit Theory(const std::vector<SFormula>& fs) { for (const auto& f: fs) insert(f); }

    // Returns false if an equal formula was already present.
    bool insert(const SFormula& f);
    bool contains(const SFormula& f) const;

    const std::vector<SFormula>& formulas() const noexcept { return formulas_; }
    std::size_t size() const noexcept { return formulas_.size(); }
    bool empty() const noexcept { return formulas_.empty(); }
    auto begin() const noexcept { return formulas_.begin(); }
    auto end() const noexcept { return formulas_.end(); }

    VarSet vars() const;
    Theory with(const SFormula& f) const;

    friend bool operator==(const Theory& a, const Theory& b) noexcept { return a.formulas_ == b.formulas_; }

  private:
    std::vector<SFormula> formulas_;
  };

  // ---- Parsing and printing ----

  class ParseError: public std::runtime_error {
  public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }
  private:
    std::size_t offset_;
    std::vector<std::string> expected_;
  };

  // Grammar (loosest to tightest): `->` (right assoc), `|`, `&` (left assoc), `~`, atoms.
  // `#` starts a comment running to end of line.
  PropFormula parse_prop(std::string_view text);
  // Exactly one top-level `=>` or `=/>`.
  SFormula parse_sformula(std::string_view text);

  bool is_valid_var_name(std::string_view s) noexcept;

  std::string render(const PropFormula& f);
  std::string render(const SFormula& f);

  bool eval(const Valuation& valuation, const PropFormula& f);

  struct PropFormulaHash {
    std::size_t operator()(const PropFormula& f) const noexcept { return f.hash(); }
  };
  struct SFormulaHash {
    std::size_t operator()(const SFormula& f) const noexcept { return f.hash(); }
  };

} // namespace slogic

#endif // SLOGIC_FORMULA_HPP_
