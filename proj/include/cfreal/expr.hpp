#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfreal/errors.hpp"
#include "cfreal/rational.hpp"
#include "cfreal/series.hpp"
#include "cfreal/stream.hpp"

namespace cfr {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, CfLiteral, Constant, Name, Neg, Binary, Call };

  Kind kind;
  Rational number;             // Number
  std::vector<Integer> terms;  // CfLiteral: a0 and the non-repeating rest
  std::vector<Integer> period; // CfLiteral
  std::string name;            // Constant ("pi", "e"), Name, Call
  char op = 0;                 // Binary: + - * /
  std::vector<ExprPtr> args;   // Neg, Binary, Call

  /// Canonical text; equal subtrees give equal strings.
  std::string str() const;
};

/// Functions accepted in calls.
const std::vector<std::string>& function_names();

/// expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
/// factor := number | '[' cf ']' | name | name '(' expr ')' | '(' expr ')' | '-' factor.
/// The minus sign may also be written U+2212.
ExprPtr parse_expr(std::string_view src);

/// Exact value of a tree built only from numbers and + - * /.
std::optional<Rational> fold_constant(const Expr& e);

/// Turns trees into streams. Equal subtrees share one memoized stream, and
/// names bound with `bind` refer to the stream they were bound to.
class Evaluator {
 public:
  explicit Evaluator(std::size_t refine_cap = kDefaultRefineCap) : refine_cap_(refine_cap) {}

  Stream eval(const ExprPtr& e);
  void bind(const std::string& name, Stream value);
  bool bound(const std::string& name) const { return names_.count(name) != 0; }

 private:
  Stream build(const Expr& e);

  std::size_t refine_cap_;
  std::map<std::string, Stream> cache_;
  std::map<std::string, Stream> names_;
};

}  // namespace cfr
