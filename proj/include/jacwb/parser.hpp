#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "jacwb/error.hpp"
#include "jacwb/polynomial.hpp"

namespace jacwb {

/// Recursive-descent reader for polynomial text:
///   expr  := [+|-] term ((+|-) term)*
///   term  := power ((*|/) power)*      division only by nonzero constants
///   power := atom [^ integer]
///   atom  := integer | identifier | ( expr )
/// Juxtaposition (XY, 2X) is rejected. Columns are 1-based and offset by
/// `column_base` so callers can report positions within a larger line.
class PolyParser {
 public:
  PolyParser(RingPtr ring, std::string_view text, std::size_t line = 0, std::size_t column_base = 0)
      : ring_(std::move(ring)), text_(text), line_(line), base_(column_base) {}

  Polynomial parse_all() {
    Polynomial p = parse_expr();
    skip_space();
    if (!at_end()) fail("unexpected '" + std::string(1, peek()) + "'");
    return p;
  }

  /// Parses "(f, g, ...)" or a bare comma-free polynomial as a one-element list.
  /// "(0)" and "()" give the empty list.
  std::vector<Polynomial> parse_ideal() {
    std::vector<Polynomial> gens;
    skip_space();
    if (peek() != '(') {
      Polynomial p = parse_expr();
      if (!p.is_zero()) gens.push_back(p);
      return gens;
    }
    std::size_t start = pos_;
    ++pos_;
    skip_space();
    if (peek() == ')') {
      ++pos_;
      return gens;
    }
    while (true) {
      Polynomial p = parse_expr();
      skip_space();
      if (peek() == ',') {
        ++pos_;
        if (!p.is_zero()) gens.push_back(std::move(p));
        continue;
      }
      if (peek() == ')') {
        ++pos_;
        std::size_t after = pos_;
        skip_space();
        char next = peek();
        bool continues = next == '*' || next == '/' || next == '^' || next == '+' || next == '-';
        if (!(gens.empty() && continues)) {
          pos_ = after;
          if (!p.is_zero()) gens.push_back(std::move(p));
          break;
        }
      }
      // a parenthesised single polynomial followed by more expression text
      pos_ = start;
      gens.clear();
      Polynomial whole = parse_expr();
      if (!whole.is_zero()) gens.push_back(whole);
      return gens;
    }
    return gens;
  }

  /// Parses a comma-separated list of ideals: "(a, b), (c)".
  std::vector<std::vector<Polynomial>> parse_ideal_list() {
    std::vector<std::vector<Polynomial>> out;
    skip_space();
    if (at_end()) return out;
    while (true) {
      out.push_back(parse_ideal());
      skip_space();
      if (at_end()) break;
      if (peek() != ',') fail("expected ',' between ideals");
      ++pos_;
    }
    return out;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, base_ + pos_ + 1, message); }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  Polynomial parse_expr() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    Polynomial acc = parse_term();
    if (negate) acc = -acc;
    while (true) {
      skip_space();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial t = parse_term();
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  Polynomial parse_term() {
    Polynomial acc = parse_power();
    while (true) {
      skip_space();
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * parse_power();
      } else if (c == '/') {
        ++pos_;
        std::size_t at = pos_;
        Polynomial d = parse_power();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division is only allowed by a nonzero constant");
        }
        acc = acc.scale(ring_->field().inv(d.leading_coeff()));
      } else {
        check_no_juxtaposition();
        break;
      }
    }
    return acc;
  }

  void check_no_juxtaposition() {
    char c = peek();
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(')
      fail("missing operator (write X*Y, not XY)");
  }

  Polynomial parse_power() {
    Polynomial base = parse_atom();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 5 || std::stoul(digits) > 10000) {
        pos_ = start;
        fail("exponent too large");
      }
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial parse_atom() {
    skip_space();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      mpz_class value(std::string(text_.substr(start, pos_ - start)));
      if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
        fail("missing operator (write 2*X, not 2X)");
      return Polynomial::constant(ring_, ring_->field().from_mpz(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto index = ring_->index_of(name);
      if (!index) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *index);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = parse_expr();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (at_end()) fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  RingPtr ring_;
  std::string_view text_;
  std::size_t line_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  return PolyParser(ring, text).parse_all();
}

/// Accepts "(f, g)", "f, g" or a single polynomial.
inline std::vector<Polynomial> parse_generators(const RingPtr& ring, std::string_view text) {
  PolyParser parser(ring, text);
  parser.skip_space();
  auto lists = parser.parse_ideal_list();
  std::vector<Polynomial> out;
  for (auto& l : lists)
    for (auto& p : l) out.push_back(std::move(p));
  return out;
}

}  // namespace jacwb
