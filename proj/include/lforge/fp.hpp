#pragma once

#include "lforge/rational.hpp"

#include <cstdint>
#include <string>

namespace lforge {

/// Element of the prime field F_p, p <= 2^31. Plain value type; the modulus
/// travels with the element so tensors over different fields cannot be mixed
/// silently.
class Fp {
 public:
  using Context = std::uint32_t;  // the modulus

  Fp() : v_(0), p_(0) {}
  Fp(std::uint32_t value, std::uint32_t p) : v_(value % p), p_(p) {}

  static Fp zero(Context p) { return Fp(0, p); }
  static Fp one(Context p) { return Fp(1, p); }
  static Fp from_long(Context p, long long n) {
    long long r = n % static_cast<long long>(p);
    if (r < 0) r += p;
    return Fp(static_cast<std::uint32_t>(r), p);
  }
  static Fp from_rational(Context p, const Rational& q) {
    Integer num = numerator(q) % p;
    Integer den = denominator(q) % p;
    if (den == 0) throw PreconditionError("rational with denominator divisible by " + std::to_string(p));
    if (num < 0) num += p;
    Fp n(static_cast<std::uint32_t>(num), p);
    Fp d(static_cast<std::uint32_t>(den < 0 ? den + p : den), p);
    return n * d.inverse();
  }

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  Context context() const { return p_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp operator+(const Fp& o) const {
    check(o);
    std::uint64_t s = static_cast<std::uint64_t>(v_) + o.v_;
    return Fp(static_cast<std::uint32_t>(s >= p_ ? s - p_ : s), p_, raw_tag{});
  }
  Fp operator-(const Fp& o) const {
    check(o);
    return Fp(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_, raw_tag{});
  }
  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_, raw_tag{}); }
  Fp operator*(const Fp& o) const {
    check(o);
    return Fp(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_), p_, raw_tag{});
  }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inverse() const {
    if (v_ == 0) throw PreconditionError("division by zero in F_" + std::to_string(p_));
    return pow(p_ - 2);
  }
  Fp operator/(const Fp& o) const { return *this * o.inverse(); }

  Fp pow(std::uint64_t e) const {
    Fp r = Fp(1, p_, raw_tag{});
    Fp b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  std::string str() const { return std::to_string(v_); }

 private:
  struct raw_tag {};
  Fp(std::uint32_t v, std::uint32_t p, raw_tag) : v_(v), p_(p) {}
  void check(const Fp& o) const {
    if (p_ != o.p_) throw ShapeError("mixed moduli " + std::to_string(p_) + " and " + std::to_string(o.p_));
  }

  std::uint32_t v_;
  std::uint32_t p_;
};

}  // namespace lforge
