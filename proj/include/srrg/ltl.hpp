#pragma once

// LTL formulas: abstract syntax, parser, printer, negation normal form and a
// direct evaluator over lasso-shaped words.

#include <cctype>
#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace srrg {

using LabelSet = std::set<std::string>;

enum class Op { True, False, Atom, Not, And, Or, Next, Until, Eventually, Always, Release };

inline constexpr int arity(Op op) noexcept
{
  switch (op) {
    case Op::True:
    case Op::False:
    case Op::Atom: return 0;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Always: return 1;
    default: return 2;
  }
}

/// Immutable, structurally shared LTL formula.
class Formula {
  struct Node {
    Op op;
    std::string name;
    std::shared_ptr<const Node> lhs, rhs;
  };

 public:
  Formula() : Formula(make(Op::True, {}, {}, {})) {}

  static Formula constant(bool value) { return make(value ? Op::True : Op::False, {}, {}, {}); }
  static Formula atom(std::string name) { return make(Op::Atom, std::move(name), {}, {}); }
  static Formula unary(Op op, const Formula& f)
  {
    if (arity(op) != 1)
      throw std::invalid_argument("operator is not unary");
    return make(op, {}, f.node_, {});
  }
  static Formula binary(Op op, const Formula& l, const Formula& r)
  {
    if (arity(op) != 2)
      throw std::invalid_argument("operator is not binary");
    return make(op, {}, l.node_, r.node_);
  }

  Op op() const noexcept { return node_->op; }
  const std::string& name() const noexcept { return node_->name; }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }
  /// Only child of a unary node.
  Formula child() const { return lhs(); }

  /// Number of nodes in the tree.
  std::size_t size() const
  {
    std::size_t n = 1;
    if (node_->lhs) n += lhs().size();
    if (node_->rhs) n += rhs().size();
    return n;
  }

  friend std::strong_ordering compare(const Formula& a, const Formula& b)
  {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.op() <=> b.op(); c != 0) return c;
    if (a.op() == Op::Atom) return a.name().compare(b.name()) <=> 0;
    if (a.node_->lhs) {
      if (auto c = compare(a.lhs(), b.lhs()); c != 0) return c;
    }
    if (a.node_->rhs) return compare(a.rhs(), b.rhs());
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, std::string name, std::shared_ptr<const Node> l, std::shared_ptr<const Node> r)
  {
    return Formula(std::make_shared<const Node>(Node{op, std::move(name), std::move(l), std::move(r)}));
  }

  std::shared_ptr<const Node> node_;
};

// Shorthand constructors.
inline Formula f_true() { return Formula::constant(true); }
inline Formula f_false() { return Formula::constant(false); }
inline Formula f_atom(std::string n) { return Formula::atom(std::move(n)); }
inline Formula f_not(const Formula& f) { return Formula::unary(Op::Not, f); }
inline Formula f_next(const Formula& f) { return Formula::unary(Op::Next, f); }
inline Formula f_eventually(const Formula& f) { return Formula::unary(Op::Eventually, f); }
inline Formula f_always(const Formula& f) { return Formula::unary(Op::Always, f); }
inline Formula f_and(const Formula& a, const Formula& b) { return Formula::binary(Op::And, a, b); }
inline Formula f_or(const Formula& a, const Formula& b) { return Formula::binary(Op::Or, a, b); }
inline Formula f_until(const Formula& a, const Formula& b) { return Formula::binary(Op::Until, a, b); }
inline Formula f_release(const Formula& a, const Formula& b) { return Formula::binary(Op::Release, a, b); }

/// Sorted, duplicate-free atom names occurring in `f`.
inline std::vector<std::string> atoms(const Formula& f)
{
  std::set<std::string> out;
  std::vector<Formula> todo{f};
  while (!todo.empty()) {
    Formula g = todo.back();
    todo.pop_back();
    if (g.op() == Op::Atom) out.insert(g.name());
    if (arity(g.op()) >= 1) todo.push_back(g.lhs());
    if (arity(g.op()) == 2) todo.push_back(g.rhs());
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Parsing and printing

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
  {
  }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

enum class Tok { End, LParen, RParen, Not, And, Or, Next, Until, Release, Eventually, Always, True, False, Ident };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s)
{
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ch == '(') { out.push_back({Tok::LParen, "(", start}); ++i; continue; }
    if (ch == ')') { out.push_back({Tok::RParen, ")", start}); ++i; continue; }
    if (ch == '!') { out.push_back({Tok::Not, "!", start}); ++i; continue; }
    if (s.substr(i, 2) == "&&") { out.push_back({Tok::And, "&&", start}); i += 2; continue; }
    if (s.substr(i, 2) == "||") { out.push_back({Tok::Or, "||", start}); i += 2; continue; }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      std::string word(s.substr(start, i - start));
      Tok kind = Tok::Ident;
      if (word == "X") kind = Tok::Next;
      else if (word == "U") kind = Tok::Until;
      else if (word == "R") kind = Tok::Release;
      else if (word == "F") kind = Tok::Eventually;
      else if (word == "G") kind = Tok::Always;
      else if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      out.push_back({kind, std::move(word), start});
      continue;
    }
    // Take the whole run of punctuation so the diagnostic shows e.g. "->" rather than "-".
    while (i < s.size() && std::ispunct(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')' &&
           s[i] != '!' && s[i] != '_')
      ++i;
    if (i == start) ++i;
    throw ParseError("unknown operator token '" + std::string(s.substr(start, i - start)) + "'", start);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula parse()
  {
    Formula f = parse_or();
    if (peek().kind != Tok::End)
      throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }

  Formula parse_or()
  {
    Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      take();
      f = f_or(f, parse_and());
    }
    return f;
  }

  Formula parse_and()
  {
    Formula f = parse_until();
    while (peek().kind == Tok::And) {
      take();
      f = f_and(f, parse_until());
    }
    return f;
  }

  // U and R bind tighter than && and associate to the right.
  Formula parse_until()
  {
    Formula f = parse_unary();
    if (peek().kind == Tok::Until || peek().kind == Tok::Release) {
      const Op op = take().kind == Tok::Until ? Op::Until : Op::Release;
      return Formula::binary(op, f, parse_until());
    }
    return f;
  }

  Formula parse_unary()
  {
    switch (peek().kind) {
      case Tok::Not: take(); return f_not(parse_unary());
      case Tok::Next: take(); return f_next(parse_unary());
      case Tok::Eventually: take(); return f_eventually(parse_unary());
      case Tok::Always: take(); return f_always(parse_unary());
      default: return parse_primary();
    }
  }

  Formula parse_primary()
  {
    const Token& t = take();
    switch (t.kind) {
      case Tok::True: return f_true();
      case Tok::False: return f_false();
      case Tok::Ident: return f_atom(t.text);
      case Tok::LParen: {
        Formula f = parse_or();
        if (peek().kind != Tok::RParen)
          throw ParseError("expected ')'", peek().pos);
        take();
        return f;
      }
      case Tok::End: throw ParseError("missing operand", t.pos);
      default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parses `text`; throws ParseError with the offending position.
inline Formula parse(std::string_view text) { return detail::Parser(text).parse(); }

/// Fully parenthesized rendering that parse() maps back to the same tree.
inline std::string to_string(const Formula& f)
{
  switch (f.op()) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return f.name();
    case Op::Not: return "!" + to_string(f.child());
    case Op::Next: return "X " + to_string(f.child());
    case Op::Eventually: return "F " + to_string(f.child());
    case Op::Always: return "G " + to_string(f.child());
    case Op::And: return "(" + to_string(f.lhs()) + " && " + to_string(f.rhs()) + ")";
    case Op::Or: return "(" + to_string(f.lhs()) + " || " + to_string(f.rhs()) + ")";
    case Op::Until: return "(" + to_string(f.lhs()) + " U " + to_string(f.rhs()) + ")";
    case Op::Release: return "(" + to_string(f.lhs()) + " R " + to_string(f.rhs()) + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Negation normal form

namespace detail {

inline Formula nnf(const Formula& f, bool negate)
{
  switch (f.op()) {
    case Op::True: return Formula::constant(!negate);
    case Op::False: return Formula::constant(negate);
    case Op::Atom: return negate ? f_not(f) : f;
    case Op::Not: return nnf(f.child(), !negate);
    case Op::Next: return f_next(nnf(f.child(), negate));
    case Op::And:
      return negate ? f_or(nnf(f.lhs(), true), nnf(f.rhs(), true)) : f_and(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Or:
      return negate ? f_and(nnf(f.lhs(), true), nnf(f.rhs(), true)) : f_or(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Until:
      return negate ? f_release(nnf(f.lhs(), true), nnf(f.rhs(), true))
                    : f_until(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Release:
      return negate ? f_until(nnf(f.lhs(), true), nnf(f.rhs(), true))
                    : f_release(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Eventually:  // F a = true U a,  !F a = false R !a
      return negate ? f_release(f_false(), nnf(f.child(), true)) : f_until(f_true(), nnf(f.child(), false));
    case Op::Always:  // G a = false R a,  !G a = true U !a
      return negate ? f_until(f_true(), nnf(f.child(), true)) : f_release(f_false(), nnf(f.child(), false));
  }
  return f;
}

}  // namespace detail

/// Negation normal form over {true, false, a, !a, &&, ||, X, U, R}.
inline Formula to_nnf(const Formula& f) { return detail::nnf(f, false); }

inline bool is_nnf(const Formula& f)
{
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom: return true;
    case Op::Not: return f.child().op() == Op::Atom;
    case Op::Eventually:
    case Op::Always: return false;
    case Op::Next: return is_nnf(f.child());
    default: return is_nnf(f.lhs()) && is_nnf(f.rhs());
  }
}

// ---------------------------------------------------------------------------
// Lasso words

/// The infinite word prefix . suffix^omega.
struct LassoWord {
  std::vector<LabelSet> prefix;
  std::vector<LabelSet> suffix;
};

namespace detail {

// Truth value of `f` at each of the |prefix|+|suffix| distinct lasso positions.
inline std::vector<char> eval_positions(const Formula& f, const LassoWord& w)
{
  const std::size_t n = w.prefix.size() + w.suffix.size();
  const std::size_t loop = w.prefix.size();
  auto next = [&](std::size_t i) { return i + 1 < n ? i + 1 : loop; };
  auto label = [&](std::size_t i) -> const LabelSet& { return i < loop ? w.prefix[i] : w.suffix[i - loop]; };

  std::vector<char> v(n, 0);
  switch (f.op()) {
    case Op::True: std::fill(v.begin(), v.end(), 1); break;
    case Op::False: break;
    case Op::Atom:
      for (std::size_t i = 0; i < n; ++i) v[i] = label(i).count(f.name()) != 0;
      break;
    case Op::Not: {
      auto a = eval_positions(f.child(), w);
      for (std::size_t i = 0; i < n; ++i) v[i] = !a[i];
      break;
    }
    case Op::And:
    case Op::Or: {
      auto a = eval_positions(f.lhs(), w);
      auto b = eval_positions(f.rhs(), w);
      for (std::size_t i = 0; i < n; ++i) v[i] = f.op() == Op::And ? (a[i] && b[i]) : (a[i] || b[i]);
      break;
    }
    case Op::Next: {
      auto a = eval_positions(f.child(), w);
      for (std::size_t i = 0; i < n; ++i) v[i] = a[next(i)];
      break;
    }
    case Op::Eventually:
    case Op::Always:
    case Op::Until:
    case Op::Release: {
      std::vector<char> a, b;
      if (f.op() == Op::Eventually) {
        a.assign(n, 1);
        b = eval_positions(f.child(), w);
      } else if (f.op() == Op::Always) {
        a.assign(n, 0);
        b = eval_positions(f.child(), w);
      } else {
        a = eval_positions(f.lhs(), w);
        b = eval_positions(f.rhs(), w);
      }
      // Until is the least fixpoint of v = b | (a & X v); release the greatest
      // fixpoint of v = b & (a | X v). Sweeping backwards 2n times reaches both.
      const bool least = f.op() == Op::Until || f.op() == Op::Eventually;
      v.assign(n, least ? 0 : 1);
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t k = n; k-- > 0;) {
          const char nv = least ? (b[k] || (a[k] && v[next(k)])) : (b[k] && (a[k] || v[next(k)]));
          if (nv != v[k]) {
            v[k] = nv;
            changed = true;
          }
        }
      }
      break;
    }
  }
  return v;
}

}  // namespace detail

/// Whether prefix . suffix^omega satisfies `f`. Throws on an empty suffix.
inline bool eval_lasso(const Formula& f, const LassoWord& w)
{
  if (w.suffix.empty())
    throw std::invalid_argument("lasso suffix must be nonempty");
  return detail::eval_positions(f, w)[0] != 0;
}

}  // namespace srrg
