#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>

#include "jacwb/error.hpp"

namespace jacwb {

inline constexpr std::size_t kMaxVariables = 16;

/// Exponent vector X_1^{k_1}...X_m^{k_m} with a fixed arity.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : arity_(check_arity(arity)) {}
  Monomial(std::initializer_list<unsigned> exps) : Monomial(std::span<const unsigned>(exps.begin(), exps.size())) {}
  explicit Monomial(std::span<const unsigned> exps) : arity_(check_arity(exps.size())) {
    for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
  }

  std::size_t arity() const { return arity_; }
  unsigned operator[](std::size_t i) const { return exp_[i]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t i, unsigned e) {
    if (e > 0xFFFF) throw Error("exponent overflow");
    degree_ = degree_ - exp_[i] + e;
    exp_[i] = static_cast<std::uint16_t>(e);
  }

  /// Bit i set iff X_i occurs.
  std::uint32_t support() const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < arity_; ++i)
      if (exp_[i]) mask |= 1u << i;
    return mask;
  }

  bool divides(const Monomial& other) const {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < arity_; ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < arity_; ++i)
      if (exp_[i] && other.exp_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out(a.arity_);
    for (std::size_t i = 0; i < a.arity_; ++i) {
      unsigned e = unsigned(a.exp_[i]) + b.exp_[i];
      if (e > 0xFFFF) throw Error("exponent overflow");
      out.exp_[i] = static_cast<std::uint16_t>(e);
    }
    out.degree_ = a.degree_ + b.degree_;
    return out;
  }

  /// Exact quotient; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial out(a.arity_);
    for (std::size_t i = 0; i < a.arity_; ++i) out.exp_[i] = static_cast<std::uint16_t>(a.exp_[i] - b.exp_[i]);
    out.degree_ = a.degree_ - b.degree_;
    return out;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial out(a.arity_);
    for (std::size_t i = 0; i < a.arity_; ++i) {
      out.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
      out.degree_ += out.exp_[i];
    }
    return out;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial out(a.arity_);
    for (std::size_t i = 0; i < a.arity_; ++i) {
      out.exp_[i] = std::min(a.exp_[i], b.exp_[i]);
      out.degree_ += out.exp_[i];
    }
    return out;
  }

  static Monomial variable(std::size_t arity, std::size_t i, unsigned e = 1) {
    Monomial m(arity);
    m.set(i, e);
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.arity_ == b.arity_ && a.degree_ == b.degree_ && a.exp_ == b.exp_;
  }

  std::size_t hash() const {
    std::size_t h = arity_;
    for (std::size_t i = 0; i < arity_; ++i) h = h * 1000003u + exp_[i];
    return h;
  }

 private:
  static std::uint8_t check_arity(std::size_t n) {
    if (n > kMaxVariables) throw Error("too many variables (limit " + std::to_string(kMaxVariables) + ")");
    return static_cast<std::uint8_t>(n);
  }

  std::array<std::uint16_t, kMaxVariables> exp_{};
  std::uint8_t arity_ = 0;
  std::uint32_t degree_ = 0;
};

/// Term order on monomials of a common arity.
class MonomialOrder {
 public:
  enum class Kind { lex, degrevlex, block };

  static MonomialOrder lex() { return MonomialOrder(Kind::lex, 0); }
  static MonomialOrder degrevlex() { return MonomialOrder(Kind::degrevlex, 0); }
  /// The first `split` variables dominate; degrevlex within each block.
  static MonomialOrder block(std::size_t split) { return MonomialOrder(Kind::block, split); }

  static MonomialOrder parse(std::string_view text) {
    if (text == "lex") return lex();
    if (text == "degrevlex" || text == "grevlex") return degrevlex();
    if (text.starts_with("block:")) {
      std::string digits(text.substr(6));
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return block(std::stoul(digits));
    }
    throw PreconditionFailed("unknown monomial order '" + std::string(text) + "'");
  }

  Kind kind() const { return kind_; }
  std::size_t split() const { return split_; }

  std::string name() const {
    switch (kind_) {
      case Kind::lex: return "lex";
      case Kind::degrevlex: return "degrevlex";
      case Kind::block: return "block:" + std::to_string(split_);
    }
    return {};
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (a.arity() != b.arity()) throw Error("monomial arity mismatch");
    switch (kind_) {
      case Kind::lex:
        for (std::size_t i = 0; i < a.arity(); ++i)
          if (a[i] != b[i]) return a[i] <=> b[i];
        return std::strong_ordering::equal;
      case Kind::degrevlex:
        if (a.degree() != b.degree()) return a.degree() <=> b.degree();
        return revlex(a, b, 0, a.arity());
      case Kind::block: {
        std::size_t s = std::min(split_, a.arity());
        if (auto c = block_compare(a, b, 0, s); c != 0) return c;
        return block_compare(a, b, s, a.arity());
      }
    }
    return std::strong_ordering::equal;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.split_ == b.split_;
  }

 private:
  MonomialOrder(Kind kind, std::size_t split) : kind_(kind), split_(split) {}

  static std::strong_ordering revlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = hi; i-- > lo;)
      if (a[i] != b[i]) return b[i] <=> a[i];
    return std::strong_ordering::equal;
  }

  static std::strong_ordering block_compare(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    unsigned da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da <=> db;
    return revlex(a, b, lo, hi);
  }

  Kind kind_;
  std::size_t split_;
};

inline std::strong_ordering compare_monomials(const MonomialOrder& order, const Monomial& a, const Monomial& b) {
  return order.compare(a, b);
}

}  // namespace jacwb
