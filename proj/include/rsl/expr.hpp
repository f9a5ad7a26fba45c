#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace rsl {

/// Parsed real-valued expression in one variable x.
///
/// Grammar, loosest binding first; every binary operator is left-associative:
///
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := atom ('^' atom)*
///   atom    := number | 'x' | 'pi' | name '(' sum (',' sum)* ')' | '(' sum ')'
///
/// Functions: sin, cos, exp, abs (one argument), min, max (two or more).
/// The exponent of '^' must evaluate to an integer.
class Expr {
 public:
  struct Node;

  /// Throws SyntaxError or UnknownIdentifier.
  static Expr parse(std::string_view source);

  /// Throws DomainError on division by zero or a non-integer exponent.
  double operator()(double x) const;

  const std::string& source() const { return source_; }
  /// Fully parenthesized rendering of the tree.
  std::string to_string() const;

 private:
  Expr(std::string source, std::shared_ptr<const Node> root)
      : source_(std::move(source)), root_(std::move(root)) {}

  std::string source_;
  std::shared_ptr<const Node> root_;
};

inline Expr parse_expr(std::string_view source) { return Expr::parse(source); }

}  // namespace rsl
