// cf: evaluate real-number expressions exactly, as continued fractions.
//
//   cf "pi + sqrt(2)" --digits 20
//   cf "sqrt(7)/2" --terms 10
//   cf                      (interactive; `let a = pi/2` binds a name)

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "cfreal/errors.hpp"
#include "cfreal/expr.hpp"
#include "cfreal/extraction.hpp"
#include "cfreal/trace.hpp"

namespace {

struct Options {
  std::size_t digits = 30;
  std::optional<std::size_t> terms;
  std::string eps;
  bool json = false;
  bool trace = false;
  std::size_t max_iters = cfr::kDefaultIterationCap;
};

std::string join(const std::vector<cfr::Integer>& v) {
  std::string s;
  for (const auto& t : v) s += (s.empty() ? "" : " ") + t.get_str();
  return s;
}

std::string bound_text(const cfr::TermPrefix& p) {
  if (p.exact) return "exact";
  return "[" + p.tail.lo().str() + ", " + p.tail.hi().str() + ")";
}

void report(const cfr::Stream& z, const Options& o, std::ostream& out) {
  if (o.json) {
    cfr::Rational eps;
    if (!o.eps.empty()) {
      eps = cfr::ExtRational::parse(o.eps).value();
    } else {
      cfr::Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), 10, o.digits + 2);
      eps = cfr::Rational(1, p);
    }
    cfr::TermPrefix prefix = o.terms ? cfr::leading_terms(z, *o.terms, o.max_iters)
                                     : cfr::approximate(z, eps, o.max_iters);
    out << cfr::to_json(prefix, cfr::to_decimal(z, o.digits, o.max_iters)) << "\n";
    return;
  }
  if (o.terms) {
    cfr::TermPrefix p = cfr::leading_terms(z, *o.terms, o.max_iters);
    out << join(p.certified) << "\n" << "tail " << bound_text(p) << "\n";
    return;
  }
  if (!o.eps.empty()) {
    cfr::Rational eps = cfr::ExtRational::parse(o.eps).value();
    if (eps <= 0) throw cfr::Error("--eps must be positive");
    cfr::TermPrefix p = cfr::approximate(z, eps, o.max_iters);
    out << join(p.terms) << "\n"
        << "enclosure [" << p.enclosure.lo().str() << ", " << p.enclosure.hi().str() << "]\n";
    return;
  }
  out << cfr::to_decimal(z, o.digits, o.max_iters) << "\n";
}

// Returns the exit status for one evaluation.
int run(cfr::Evaluator& ev, const std::string& line, const Options& o) {
  try {
    std::string src = line;
    std::optional<std::string> name;
    if (src.rfind("let ", 0) == 0) {
      auto eq = src.find('=');
      if (eq == std::string::npos) throw cfr::ParseError("expected '=' after let", src.size());
      std::string lhs = src.substr(4, eq - 4);
      lhs.erase(0, lhs.find_first_not_of(' '));
      lhs.erase(lhs.find_last_not_of(' ') + 1);
      if (lhs.empty()) throw cfr::ParseError("expected a name after let", 4);
      name = lhs;
      src = src.substr(eq + 1);
    }
    cfr::Stream z = ev.eval(cfr::parse_expr(src));
    if (name) ev.bind(*name, z);
    report(z, o, std::cout);
    return 0;
  } catch (const cfr::IterationCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cfr::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
  } catch (const cfr::DivisionByZero& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const cfr::ParseError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("CF_MAX_ITERS")) {
    try {
      o.max_iters = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: CF_MAX_ITERS is not a number\n";
      return 1;
    }
  }

  CLI::App app{"Exact real arithmetic with continued fractions"};
  std::string expression;
  app.add_option("expression", expression, "Expression to evaluate; omit for interactive mode");
  app.add_option("--digits", o.digits, "Decimal digits after the point")->capture_default_str();
  app.add_option("--terms", o.terms, "Print the first N certified terms and the bound after them");
  app.add_option("--eps", o.eps, "Print terms certified to within this accuracy (p/q)");
  app.add_flag("--json", o.json, "Print a JSON object");
  app.add_flag("--trace", o.trace, "Trace engine steps on standard error");
  app.add_option("--max-iters", o.max_iters, "Pull cap before giving up")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  if (!o.eps.empty()) {
    try {
      cfr::ExtRational e = cfr::ExtRational::parse(o.eps);
      if (!e.finite() || e.value() <= 0) throw std::invalid_argument("not positive");
    } catch (const std::exception&) {
      std::cerr << "error: --eps needs a positive rational p/q\n";
      return 1;
    }
  }
  if (o.trace) {
    cfr::set_trace_sink([](const cfr::TraceEvent& e) {
      std::cerr << e.engine << " " << e.action << " " << e.detail << " -> " << e.state << "\n";
    });
  }

  cfr::Evaluator ev(o.max_iters);
  if (!expression.empty()) return run(ev, expression, o);

  std::string line;
  int status = 0;
  bool interactive = isatty(0);
  while (true) {
    if (interactive) std::cout << "cf> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line == "quit" || line == "exit") break;
    status = run(ev, line, o);
  }
  return status;
}
