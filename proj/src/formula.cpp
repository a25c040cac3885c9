#include "slogic/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace slogic {

  namespace {

    std::size_t mix(std::size_t seed, std::size_t v) noexcept {
      return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    }

  } // namespace

  PropFormula PropFormula::make(Connective kind, VarName name,
                                std::optional<PropFormula> a, std::optional<PropFormula> b) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    std::size_t h = mix(0x51ed27, static_cast<std::size_t>(kind));
    node->size = 1;
    node->depth = 0;
    if (kind == Connective::Var) {
      h = mix(h, std::hash<std::string>{}(name));
      node->name = std::move(name);
    }
    if (a) {
      h = mix(h, a->hash());
      node->size += a->size();
      node->depth = a->depth() + 1;
      node->lhs = std::make_unique<PropFormula>(std::move(*a));
    }
    if (b) {
      h = mix(h, b->hash());
      node->size += b->size();
      node->depth = std::max(node->depth, b->depth() + 1);
      node->rhs = std::make_unique<PropFormula>(std::move(*b));
    }
    node->hash = h;
    return PropFormula(std::move(node));
  }

  PropFormula PropFormula::var(VarName name) {
    if (!is_valid_var_name(name)) throw std::invalid_argument("invalid variable name: '" + name + "'");
    return make(Connective::Var, std::move(name), std::nullopt, std::nullopt);
  }
  PropFormula PropFormula::negation(PropFormula a) { return make(Connective::Not, {}, std::move(a), std::nullopt); }
  PropFormula PropFormula::conjunction(PropFormula a, PropFormula b) { return make(Connective::And, {}, std::move(a), std::move(b)); }
  PropFormula PropFormula::disjunction(PropFormula a, PropFormula b) { return make(Connective::Or, {}, std::move(a), std::move(b)); }
  PropFormula PropFormula::implication(PropFormula a, PropFormula b) { return make(Connective::Implies, {}, std::move(a), std::move(b)); }

  void PropFormula::collect_vars(VarSet& out) const {
    switch (kind()) {
      case Connective::Var: out.insert(name()); break;
      case Connective::Not: lhs().collect_vars(out); break;
      default: lhs().collect_vars(out); rhs().collect_vars(out); break;
    }
  }

  VarSet PropFormula::vars() const {
    VarSet res;
    collect_vars(res);
    return res;
  }

  bool operator==(const PropFormula& a, const PropFormula& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
      case Connective::Var: return a.name() == b.name();
      case Connective::Not: return a.lhs() == b.lhs();
      default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
  }

  std::strong_ordering operator<=>(const PropFormula& a, const PropFormula& b) noexcept {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
      case Connective::Var: return a.name().compare(b.name()) <=> 0;
      case Connective::Not: return a.lhs() <=> b.lhs();
      default:
        if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
        return a.rhs() <=> b.rhs();
    }
  }

  VarSet SFormula::vars() const {
    VarSet res;
    lhs.collect_vars(res);
    rhs.collect_vars(res);
    return res;
  }

  std::size_t SFormula::hash() const noexcept {
    return mix(mix(static_cast<std::size_t>(kind) + 17, lhs.hash()), rhs.hash());
  }

  std::strong_ordering operator<=>(const SFormula& a, const SFormula& b) noexcept {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
  }

  SFormula strict_negation(const SFormula& f) {
    return {f.is_imp() ? StrictKind::NonImp : StrictKind::Imp, f.lhs, f.rhs};
  }

  bool Theory::insert(const SFormula& f) {
    if (contains(f)) return false;
    formulas_.push_back(f);
    return true;
  }

  bool Theory::contains(const SFormula& f) const {
    return std::find(formulas_.begin(), formulas_.end(), f) != formulas_.end();
  }

  VarSet Theory::vars() const {
    VarSet res;
    for (const auto& f: formulas_) {
      f.lhs.collect_vars(res);
      f.rhs.collect_vars(res);
    }
    return res;
  }

  Theory Theory::with(const SFormula& f) const {
    Theory res = *this;
    res.insert(f);
    return res;
  }

  bool eval(const Valuation& valuation, const PropFormula& f) {
    switch (f.kind()) {
      case Connective::Var: {
        auto it = valuation.find(f.name());
        return it != valuation.end() && it->second;
      }
      case Connective::Not: return !eval(valuation, f.lhs());
      case Connective::And: return eval(valuation, f.lhs()) && eval(valuation, f.rhs());
      case Connective::Or: return eval(valuation, f.lhs()) || eval(valuation, f.rhs());
      case Connective::Implies: return !eval(valuation, f.lhs()) || eval(valuation, f.rhs());
    }
    return false;
  }

  // ---- Lexer / parser ----

  ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected):
    std::runtime_error(std::move(message)), offset_(offset), expected_(std::move(expected)) {}

  bool is_valid_var_name(std::string_view s) noexcept {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '^';
    });
  }

  namespace {

    enum class Tok { Ident, Not, And, Or, Arrow, StrictImp, StrictNonImp, LParen, RParen, End };

    const char* describe(Tok t) {
      switch (t) {
        case Tok::Ident: return "variable";
        case Tok::Not: return "'~'";
        case Tok::And: return "'&'";
        case Tok::Or: return "'|'";
        case Tok::Arrow: return "'->'";
        case Tok::StrictImp: return "'=>'";
        case Tok::StrictNonImp: return "'=/>'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::End: return "end of input";
      }
      return "?";
    }

    struct Token {
      Tok kind;
      std::size_t offset;
      std::string text;
    };

    std::vector<Token> tokenize(std::string_view s) {
      std::vector<Token> res;
      std::size_t i = 0;
      auto is_ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '^';
      };
      while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { i++; continue; }
        if (c == '#') {
          while (i < s.size() && s[i] != '\n') i++;
          continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c))) {
          while (i < s.size() && is_ident_char(s[i])) i++;
          res.push_back({Tok::Ident, start, std::string(s.substr(start, i - start))});
          continue;
        }
        switch (c) {
          case '~': res.push_back({Tok::Not, start, "~"}); i++; continue;
          case '&': res.push_back({Tok::And, start, "&"}); i++; continue;
          case '|': res.push_back({Tok::Or, start, "|"}); i++; continue;
          case '(': res.push_back({Tok::LParen, start, "("}); i++; continue;
          case ')': res.push_back({Tok::RParen, start, ")"}); i++; continue;
          default: break;
        }
        if (s.substr(i, 2) == "->") { res.push_back({Tok::Arrow, start, "->"}); i += 2; continue; }
        if (s.substr(i, 3) == "=/>") { res.push_back({Tok::StrictNonImp, start, "=/>"}); i += 3; continue; }
        if (s.substr(i, 2) == "=>") { res.push_back({Tok::StrictImp, start, "=>"}); i += 2; continue; }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", start,
                         {"variable", "'~'", "'('"});
      }
      res.push_back({Tok::End, s.size(), ""});
      return res;
    }

    class Parser {
    public:
      explicit Parser(std::vector<Token> toks): toks_(std::move(toks)) {}

      const Token& peek() const { return toks_[pos_]; }
      Token next() { return toks_[pos_++]; }

      [[noreturn]] void fail(const std::vector<Tok>& expected) const {
        const Token& t = peek();
        std::vector<std::string> names;
        for (Tok e: expected) names.emplace_back(describe(e));
        std::string msg = "unexpected " + (t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'");
        msg += "; expected ";
        for (std::size_t i = 0; i < names.size(); i++) msg += (i ? ", " : "") + names[i];
        throw ParseError(msg, t.offset, std::move(names));
      }

      // imp := or ('->' imp)?
      PropFormula implication() {
        PropFormula a = disjunction();
        if (peek().kind == Tok::Arrow) {
          next();
          return PropFormula::implication(std::move(a), implication());
        }
        return a;
      }

      PropFormula disjunction() {
        PropFormula a = conjunction();
        while (peek().kind == Tok::Or) {
          next();
          a = PropFormula::disjunction(std::move(a), conjunction());
        }
        return a;
      }

      PropFormula conjunction() {
        PropFormula a = unary();
        while (peek().kind == Tok::And) {
          next();
          a = PropFormula::conjunction(std::move(a), unary());
        }
        return a;
      }

      PropFormula unary() {
        switch (peek().kind) {
          case Tok::Not: next(); return PropFormula::negation(unary());
          case Tok::Ident: return PropFormula::var(next().text);
          case Tok::LParen: {
            next();
            PropFormula a = implication();
            if (peek().kind != Tok::RParen) fail({Tok::RParen, Tok::Arrow, Tok::Or, Tok::And});
            next();
            return a;
          }
          default: fail({Tok::Ident, Tok::Not, Tok::LParen});
        }
      }

      // Tokens that may legally follow a complete formula at top level.
      void expect_end(bool allow_strict) const {
        if (peek().kind == Tok::End) return;
        std::vector<Tok> exp{Tok::Arrow, Tok::Or, Tok::And};
        if (allow_strict) { exp.push_back(Tok::StrictImp); exp.push_back(Tok::StrictNonImp); }
        exp.push_back(Tok::End);
        fail(exp);
      }

    private:
      std::vector<Token> toks_;
      std::size_t pos_ = 0;
    };

    void require_nonblank(std::string_view text) {
      for (const auto& t: tokenize(text))
        if (t.kind != Tok::End) return;
      throw ParseError("empty formula", 0, {"variable", "'~'", "'('"});
    }

  } // namespace

  PropFormula parse_prop(std::string_view text) {
    require_nonblank(text);
    Parser p(tokenize(text));
    PropFormula f = p.implication();
    p.expect_end(false);
    return f;
  }

  SFormula parse_sformula(std::string_view text) {
    require_nonblank(text);
    Parser p(tokenize(text));
    PropFormula lhs = p.implication();
    StrictKind kind;
    switch (p.peek().kind) {
      case Tok::StrictImp: kind = StrictKind::Imp; break;
      case Tok::StrictNonImp: kind = StrictKind::NonImp; break;
      default: p.fail({Tok::StrictImp, Tok::StrictNonImp, Tok::Arrow, Tok::Or, Tok::And});
    }
    p.next();
    PropFormula rhs = p.implication();
    if (p.peek().kind == Tok::StrictImp || p.peek().kind == Tok::StrictNonImp)
      throw ParseError("multiple strict operators; nested strict formulas are not allowed",
                       p.peek().offset, {describe(Tok::End)});
    p.expect_end(false);
    return {kind, std::move(lhs), std::move(rhs)};
  }

  // ---- Printing ----

  namespace {

    int precedence(Connective k) {
      switch (k) {
        case Connective::Implies: return 1;
        case Connective::Or: return 2;
        case Connective::And: return 3;
        case Connective::Not: return 4;
        case Connective::Var: return 5;
      }
      return 0;
    }

    void render_into(std::string& out, const PropFormula& f, int min_prec) {
      int p = precedence(f.kind());
      bool parens = p < min_prec;
      if (parens) out += '(';
      switch (f.kind()) {
        case Connective::Var: out += f.name(); break;
        case Connective::Not:
          out += '~';
          render_into(out, f.lhs(), 4);
          break;
        case Connective::And:
          render_into(out, f.lhs(), 3);
          out += " & ";
          render_into(out, f.rhs(), 4);
          break;
        case Connective::Or:
          render_into(out, f.lhs(), 2);
          out += " | ";
          render_into(out, f.rhs(), 3);
          break;
        case Connective::Implies:
          render_into(out, f.lhs(), 2);
          out += " -> ";
          render_into(out, f.rhs(), 1);
          break;
      }
      if (parens) out += ')';
    }

  } // namespace

  std::string render(const PropFormula& f) {
    std::string out;
    render_into(out, f, 0);
    return out;
  }

  std::string render(const SFormula& f) {
    return render(f.lhs) + (f.is_imp() ? " => " : " =/> ") + render(f.rhs);
  }

} // namespace slogic
