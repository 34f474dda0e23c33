#include "cfreal/expr.hpp"

#include <algorithm>
#include <cctype>

#include "cfreal/bihomographic.hpp"
#include "cfreal/homographic.hpp"

namespace cfr {

ParseError::ParseError(const std::string& what, std::size_t position)
    : Error(what + " at position " + std::to_string(position)), position_(position) {}

const std::vector<std::string>& function_names() {
  static const std::vector<std::string> names{"exp", "log", "sin", "cos", "tan", "arcsin", "sqrt"};
  return names;
}

std::string Expr::str() const {
  switch (kind) {
    case Kind::Number: return number.get_str();
    case Kind::CfLiteral: {
      std::string s = "[" + terms[0].get_str();
      std::string sep = ";";
      for (std::size_t i = 1; i < terms.size(); ++i, sep = ",") s += sep + terms[i].get_str();
      if (!period.empty()) {
        s += sep + "(";
        for (std::size_t i = 0; i < period.size(); ++i) s += (i ? "," : "") + period[i].get_str();
        s += ")";
      }
      return s + "]";
    }
    case Kind::Constant: return name;
    case Kind::Name: return "$" + name;
    case Kind::Neg: return "(-" + args[0]->str() + ")";
    case Kind::Binary: return "(" + args[0]->str() + op + args[1]->str() + ")";
    case Kind::Call: return name + "(" + args[0]->str() + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_space();
    if (pos_ < src_.size()) throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'", pos_);
    return e;
  }

 private:
  static constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  // Consumes `c` (with '-' also matching U+2212) if it is next.
  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    if (c == '-' && src_.substr(pos_, kUnicodeMinus.size()) == kUnicodeMinus) {
      pos_ += kUnicodeMinus.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  static ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  ExprPtr expr() {
    ExprPtr left = term();
    while (true) {
      char op = accept('+') ? '+' : accept('-') ? '-' : 0;
      if (!op) return left;
      left = node(Expr{.kind = Expr::Kind::Binary, .op = op, .args = {left, term()}});
    }
  }

  ExprPtr term() {
    ExprPtr left = factor();
    while (true) {
      char op = accept('*') ? '*' : accept('/') ? '/' : 0;
      if (!op) return left;
      left = node(Expr{.kind = Expr::Kind::Binary, .op = op, .args = {left, factor()}});
    }
  }

  ExprPtr factor() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    if (accept('-')) return node(Expr{.kind = Expr::Kind::Neg, .args = {factor()}});
    if (accept('(')) {
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (accept('[')) return cf_literal();
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  ExprPtr number() {
    std::size_t start = pos_;
    std::string digits;
    std::size_t scale = 0;
    bool dot = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (dot) ++scale;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    Rational v(Integer(digits, 10), den);
    v.canonicalize();
    return node(Expr{.kind = Expr::Kind::Number, .number = v});
  }

  Integer integer() {
    skip_space();
    bool negative = accept('-');
    skip_space();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected an integer", start);
    Integer v(std::string(src_.substr(start, pos_ - start)), 10);
    return negative ? Integer(-v) : v;
  }

  ExprPtr cf_literal() {
    Expr e{.kind = Expr::Kind::CfLiteral};
    e.terms.push_back(integer());
    if (accept(';')) {
      do {
        if (accept('(')) {
          do {
            std::size_t at = pos_;
            e.period.push_back(integer());
            if (e.period.back() < 1) throw ParseError("continued fraction terms after the first must be >= 1", at);
          } while (accept(','));
          expect(')');
          break;
        }
        std::size_t at = pos_;
        e.terms.push_back(integer());
        if (e.terms.back() < 1) throw ParseError("continued fraction terms after the first must be >= 1", at);
      } while (accept(','));
    }
    expect(']');
    return node(std::move(e));
  }

  ExprPtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    const auto& fns = function_names();
    bool is_function = std::find(fns.begin(), fns.end(), name) != fns.end();
    if (accept('(')) {
      if (!is_function) throw ParseError("unknown function '" + name + "'", start);
      ExprPtr arg = expr();
      expect(')');
      return node(Expr{.kind = Expr::Kind::Call, .name = name, .args = {arg}});
    }
    if (is_function) throw ParseError("function '" + name + "' needs an argument", start);
    if (name == "pi" || name == "e") return node(Expr{.kind = Expr::Kind::Constant, .name = name});
    return node(Expr{.kind = Expr::Kind::Name, .name = name});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view src) { return Parser(src).parse(); }

std::optional<Rational> fold_constant(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number: return e.number;
    case Expr::Kind::Neg: {
      auto v = fold_constant(*e.args[0]);
      if (!v) return std::nullopt;
      return Rational(-*v);
    }
    case Expr::Kind::Binary: {
      auto a = fold_constant(*e.args[0]);
      if (!a) return std::nullopt;
      auto b = fold_constant(*e.args[1]);
      if (!b) return std::nullopt;
      switch (e.op) {
        case '+': return Rational(*a + *b);
        case '-': return Rational(*a - *b);
        case '*': return Rational(*a * *b);
        default:
          if (*b == 0) throw DivisionByZero();
          return Rational(*a / *b);
      }
    }
    default: return std::nullopt;
  }
}

void Evaluator::bind(const std::string& name, Stream value) {
  names_.insert_or_assign(name, std::move(value));
  // Cached trees may mention the old binding.
  cache_.clear();
}

Stream Evaluator::eval(const ExprPtr& e) {
  std::string key = e->str();
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  Stream s = build(*e);
  cache_.insert_or_assign(key, s);
  return s;
}

Stream Evaluator::build(const Expr& e) {
  if (auto v = fold_constant(e)) return cf_from_rational(*v);
  switch (e.kind) {
    case Expr::Kind::CfLiteral: {
      std::vector<Integer> rest(e.terms.begin() + 1, e.terms.end());
      return cf_from_terms(e.terms[0], rest, e.period);
    }
    case Expr::Kind::Constant: return e.name == "pi" ? pi_cf() : e_cf();
    case Expr::Kind::Name: {
      auto it = names_.find(e.name);
      if (it == names_.end()) throw Error("unknown name '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::Neg: return h_apply(Homographic::make(-1, 0, 0, 1), eval(e.args[0]));
    case Expr::Kind::Binary: {
      Stream a = eval(e.args[0]), b = eval(e.args[1]);
      switch (e.op) {
        case '+': return add(a, b);
        case '-': return sub(a, b);
        case '*': return mul(a, b);
        default: return div(a, b);
      }
    }
    case Expr::Kind::Call: {
      Stream x = eval(e.args[0]);
      const std::string& f = e.name;
      if (f == "exp") return exp_cf(x, refine_cap_);
      if (f == "log") return log_cf(x, refine_cap_);
      if (f == "sin") return sin_cf(x, refine_cap_);
      if (f == "cos") return cos_cf(x, refine_cap_);
      if (f == "tan") return tan_cf(x, refine_cap_);
      if (f == "arcsin") return arcsin_cf(x, refine_cap_);
      return sqrt_cf(x, refine_cap_);
    }
    default: break;
  }
  throw Error("cannot evaluate " + e.str());
}

}  // namespace cfr
