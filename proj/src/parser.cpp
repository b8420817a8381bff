#include "confkernel/parser.hpp"

#include <cctype>

namespace confkernel {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial run() {
    Polynomial p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    skip();
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      mpz_class n = digits();
      if (n > kMaxExponent) {
        pos_ = start;
        fail("exponent overflow (limit " + std::to_string(kMaxExponent) + ")");
      }
      return base.pow(static_cast<unsigned>(n.get_ui()));
    }
    return base;
  }

  mpz_class digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = digits();
      mpz_class den = 1;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t at = pos_;
        den = digits();
        if (den == 0) {
          pos_ = at;
          fail("zero denominator");
        }
      }
      Rational r(num, den);
      r.canonicalize();
      return Polynomial(ring_, r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->find(name);
      if (!idx) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse(std::string_view text, const RingPtr& ring) { return Parser(text, ring).run(); }

}  // namespace confkernel
