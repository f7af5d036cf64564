#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "jacwb/error.hpp"

namespace jacwb {

/// Exact scalar. Holds a machine integer when the value is an integer that
/// fits in int64, otherwise a canonical GMP rational. The representation is
/// unique: a big value is never an int64-representable integer.
class Scalar {
 public:
  Scalar() = default;
  Scalar(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : small_(v) {}           // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpq_class& q) { assign(q); }
  explicit Scalar(const mpz_class& z) { assign(mpq_class(z)); }

  Scalar(const Scalar& other) : small_(other.small_) {
    if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
  }
  Scalar& operator=(const Scalar& other) {
    if (this != &other) {
      small_ = other.small_;
      big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
  }
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(Scalar&&) noexcept = default;

  bool is_small() const { return !big_; }
  std::int64_t small() const { return small_; }
  const mpq_class& big() const { return *big_; }

  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_one() const { return !big_ && small_ == 1; }
  bool is_integer() const { return !big_ || big_->get_den() == 1; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    set_int64(q.get_num(), small_);
    return q;
  }

  std::string to_string() const { return big_ ? big_->get_str() : std::to_string(small_); }

  std::size_t hash() const {
    if (!big_) return std::hash<std::int64_t>{}(small_);
    return std::hash<std::string>{}(big_->get_str());
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.big_ || b.big_) return a.big_ && b.big_ && *a.big_ == *b.big_;
    return a.small_ == b.small_;
  }

  static void set_int64(mpz_class& z, std::int64_t v) {
    if (v >= 0) {
      mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    } else {
      // -(v+1) cannot overflow
      std::uint64_t u = static_cast<std::uint64_t>(-(v + 1)) + 1;
      mpz_import(z.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
      z = -z;
    }
  }

  static mpz_class to_mpz(std::int64_t v) {
    mpz_class z;
    set_int64(z, v);
    return z;
  }

 private:
  void assign(const mpq_class& q) {
    if (q.get_den() == 1 && fits_int64(q.get_num())) {
      small_ = get_int64(q.get_num());
      big_.reset();
    } else {
      small_ = 0;
      big_ = std::make_unique<mpq_class>(q);
      big_->canonicalize();
      if (big_->get_den() == 1 && fits_int64(big_->get_num())) {
        small_ = get_int64(big_->get_num());
        big_.reset();
      }
    }
  }

  static bool fits_int64(const mpz_class& z) {
    return mpz_sizeinbase(z.get_mpz_t(), 2) <= 62;
  }
  static std::int64_t get_int64(const mpz_class& z) {
    // fits_int64 guarantees |z| < 2^62
    std::uint64_t u = 0;
    std::size_t count = 0;
    mpz_export(&u, &count, 1, sizeof(u), 0, 0, z.get_mpz_t());
    auto v = static_cast<std::int64_t>(u);
    return sgn(z) < 0 ? -v : v;
  }

  std::int64_t small_ = 0;
  std::unique_ptr<mpq_class> big_;

  friend class CoeffField;
};

/// Coefficient field: the rationals, or GF(p) for a prime p < 2^31.
/// Elements of GF(p) are stored as small integers in [0, p).
class CoeffField {
 public:
  enum class Kind { rationals, prime };

  static CoeffField rationals() { return CoeffField(Kind::rationals, 0); }

  static CoeffField prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31)) throw PreconditionFailed("field modulus must be below 2^31");
    if (!is_prime(p)) throw PreconditionFailed(std::to_string(p) + " is not prime");
    return CoeffField(Kind::prime, static_cast<std::uint32_t>(p));
  }

  static bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::rationals; }
  /// 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }

  std::string name() const { return is_rational() ? "Q" : "GF " + std::to_string(p_); }

  friend bool operator==(const CoeffField& a, const CoeffField& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

  Scalar from_int(std::int64_t v) const {
    if (is_rational()) return Scalar(v);
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return Scalar(r < 0 ? r + p_ : r);
  }

  Scalar from_mpz(const mpz_class& z) const {
    if (is_rational()) return Scalar(z);
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return Scalar(static_cast<std::int64_t>(r.get_ui()));
  }

  /// Maps a rational into the field; throws when the denominator vanishes mod p.
  Scalar from_mpq(const mpq_class& q) const {
    if (is_rational()) return Scalar(q);
    Scalar den = from_mpz(q.get_den());
    if (den.is_zero()) throw PreconditionFailed("denominator divisible by the characteristic");
    return mul(from_mpz(q.get_num()), inv(den));
  }

  /// Brings an arbitrary scalar into canonical field form.
  Scalar canonical(const Scalar& a) const {
    if (is_rational()) return a;
    if (a.is_small()) return from_int(a.small());
    return from_mpq(a.big());
  }

  Scalar add(const Scalar& a, const Scalar& b) const {
    if (!is_rational()) {
      std::int64_t s = a.small_ + b.small_;
      if (s >= p_) s -= p_;
      return Scalar(s);
    }
    std::int64_t out;
    if (a.is_small() && b.is_small() && !__builtin_add_overflow(a.small_, b.small_, &out))
      return Scalar(out);
    return Scalar(mpq_class(a.to_mpq() + b.to_mpq()));
  }

  Scalar sub(const Scalar& a, const Scalar& b) const {
    if (!is_rational()) {
      std::int64_t s = a.small_ - b.small_;
      if (s < 0) s += p_;
      return Scalar(s);
    }
    std::int64_t out;
    if (a.is_small() && b.is_small() && !__builtin_sub_overflow(a.small_, b.small_, &out))
      return Scalar(out);
    return Scalar(mpq_class(a.to_mpq() - b.to_mpq()));
  }

  Scalar neg(const Scalar& a) const {
    if (!is_rational()) return Scalar(a.small_ == 0 ? 0 : p_ - a.small_);
    if (a.is_small() && a.small_ != INT64_MIN) return Scalar(-a.small_);
    return Scalar(mpq_class(-a.to_mpq()));
  }

  Scalar mul(const Scalar& a, const Scalar& b) const {
    if (!is_rational()) return Scalar((a.small_ * b.small_) % p_);
    std::int64_t out;
    if (a.is_small() && b.is_small() && !__builtin_mul_overflow(a.small_, b.small_, &out))
      return Scalar(out);
    return Scalar(mpq_class(a.to_mpq() * b.to_mpq()));
  }

  Scalar inv(const Scalar& a) const {
    if (a.is_zero()) throw std::domain_error("division by zero in coefficient field");
    if (!is_rational()) return Scalar(pow_mod(a.small_, p_ - 2));
    return Scalar(mpq_class(1 / a.to_mpq()));
  }

  Scalar div(const Scalar& a, const Scalar& b) const {
    if (b.is_zero()) throw std::domain_error("division by zero in coefficient field");
    if (!is_rational()) return mul(a, inv(b));
    if (a.is_small() && b.is_small() && b.small_ != -1 && a.small_ % b.small_ == 0)
      return Scalar(a.small_ / b.small_);
    return Scalar(mpq_class(a.to_mpq() / b.to_mpq()));
  }

  /// k * a for a non-negative machine integer k, reduced into the field.
  Scalar mul_int(const Scalar& a, std::uint64_t k) const {
    return mul(a, from_mpz(mpz_class(static_cast<unsigned long>(k))));
  }

  /// Signed representative in (-p/2, p/2] for GF(p); identity over Q.
  Scalar display(const Scalar& a) const {
    if (is_rational()) return a;
    return a.small_ > static_cast<std::int64_t>(p_ / 2) ? Scalar(a.small_ - p_) : a;
  }

 private:
  CoeffField(Kind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  std::int64_t pow_mod(std::int64_t base, std::int64_t e) const {
    std::int64_t result = 1;
    base %= p_;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return result;
  }

  Kind kind_;
  std::uint32_t p_;
};

}  // namespace jacwb
