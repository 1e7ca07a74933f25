#include "wronsos/parse.hpp"

#include <cctype>
#include <string>

#include "wronsos/error.hpp"

namespace wronsos {

namespace {

constexpr std::size_t kMaxVars = 9;

// Recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' integer]
//   atom   := number ['/' number] | 'z' digit | '(' expr ')' | ('+'|'-') factor
// Polynomials are built in kMaxVars variables and trimmed at the end.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Polynomial parse() {
    Polynomial result = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

  std::size_t highest_var() const { return highest_var_; }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " +
                                      std::to_string(col) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::string(text_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      const std::string e = digits();
      if (e.size() > 4) fail("exponent too large");
      base = pow(base, std::stoi(e));
    }
    return base;
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == 'z') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
          text_[pos_] == '0') {
        fail("expected variable index 1..9 after 'z'");
      }
      const std::size_t k = static_cast<std::size_t>(text_[pos_] - '0');
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("variables are limited to z1..z9");
      }
      highest_var_ = std::max(highest_var_, k);
      return Polynomial::variable(kMaxVars, k - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string literal = digits();
      if (accept('/')) {
        const std::string den = digits();
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
        literal += "/" + den;
      }
      return Polynomial::constant(kMaxVars, parse_rational(literal));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t highest_var_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t min_nvars) {
  Parser parser(text);
  const Polynomial wide = parser.parse();
  const std::size_t nvars = std::max(min_nvars, parser.highest_var());
  if (nvars > kMaxVars) throw Error(ErrorKind::Parse, "at most 9 variables are supported");
  Polynomial out(nvars);
  for (const auto& [alpha, c] : wide.terms()) {
    out.add_term(MultiIndex(std::vector<int>(alpha.exps.begin(), alpha.exps.begin() + nvars)), c);
  }
  return out;
}

}  // namespace wronsos
