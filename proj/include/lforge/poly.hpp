#pragma once

#include "lforge/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace lforge {

/// Exponent vector aligned with a ring's parameter list.
using Mono = std::vector<std::uint32_t>;

inline bool mono_is_one(const Mono& m) {
  return std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; });
}

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// Exact division a / b; false if some exponent would go negative.
inline bool mono_div(const Mono& a, const Mono& b, Mono& out) {
  out.assign(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    out[i] = a[i] - b[i];
  }
  return true;
}

/// Orders monomials so that map iteration yields the lexicographically
/// largest exponent vector first (declaration-order lex, degree-rich first).
struct MonoOrder {
  bool operator()(const Mono& a, const Mono& b) const {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored.
using Poly = std::map<Mono, Rational, MonoOrder>;

inline void poly_add_term(Poly& p, const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

inline Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b) poly_add_term(r, m, c);
  return r;
}

inline Poly poly_neg(const Poly& a) {
  Poly r = a;
  for (auto& [m, c] : r) c = -c;
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) poly_add_term(r, mono_mul(ma, mb), ca * cb);
  return r;
}

inline Poly poly_scale(const Poly& a, const Rational& q) {
  Poly r;
  if (q == 0) return r;
  for (const auto& [m, c] : a) r.emplace(m, c * q);
  return r;
}

inline Poly poly_mul_mono(const Poly& a, const Mono& m) {
  Poly r;
  for (const auto& [ma, ca] : a) r.emplace(mono_mul(ma, m), ca);
  return r;
}

inline std::uint32_t poly_degree_in(const Poly& p, std::size_t var) {
  std::uint32_t d = 0;
  for (const auto& [m, c] : p) d = std::max(d, m[var]);
  return d;
}

inline bool poly_contains_var(const Poly& p, std::size_t var) {
  for (const auto& [m, c] : p)
    if (m[var] > 0) return true;
  return false;
}

/// Splits p = p0 + p1 * x_var, assuming deg_var(p) <= 1.
inline void poly_split_linear(const Poly& p, std::size_t var, Poly& p0, Poly& p1) {
  p0.clear();
  p1.clear();
  for (const auto& [m, c] : p) {
    if (m[var] == 0) {
      p0.emplace(m, c);
    } else {
      Mono stripped = m;
      stripped[var] -= 1;
      p1.emplace(stripped, c);
    }
  }
}

/// Exact division by a single-monomial polynomial q*mono; false when not divisible.
inline bool poly_div_monomial(const Poly& p, const Rational& q, const Mono& mono, Poly& out) {
  out.clear();
  if (q == 0) return false;
  for (const auto& [m, c] : p) {
    Mono d;
    if (!mono_div(m, mono, d)) return false;
    out.emplace(d, c / q);
  }
  return true;
}

}  // namespace lforge
