#pragma once

#include "lforge/fp.hpp"
#include "lforge/ring.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

namespace lforge {

/// Exact element of a characteristic-0 scalar ring: a rational-coefficient
/// multivariate polynomial divided by a monomial in the ring's invertible
/// parameters, kept reduced modulo the ring's quadratic relations. Values are
/// immutable once constructed and always in normal form: every designated
/// parameter appears with exponent <= 1, the denominator is a plain monomial,
/// and no invertible parameter divides both numerator (in the quotient ring)
/// and denominator. Zero is the empty numerator over denominator 1.
class Scalar {
 public:
  using Context = RingPtr;

  static Scalar zero(const RingPtr& ring) { return Scalar(ring, Poly{}, Mono(ring->param_count(), 0)); }
  static Scalar one(const RingPtr& ring) { return from_rational(ring, 1); }
  static Scalar from_long(const RingPtr& ring, long long n) { return from_rational(ring, Rational(n)); }
  static Scalar from_rational(const RingPtr& ring, const Rational& q) {
    Poly p;
    if (q != 0) p.emplace(Mono(ring->param_count(), 0), q);
    return Scalar(ring, std::move(p), Mono(ring->param_count(), 0));
  }
  static Scalar parameter(const RingPtr& ring, const std::string& name) {
    auto idx = ring->index_of(name);
    if (!idx) throw PreconditionError("undeclared parameter '" + name + "'");
    return parameter(ring, *idx);
  }
  static Scalar parameter(const RingPtr& ring, std::size_t idx) {
    Mono m(ring->param_count(), 0);
    m[idx] = 1;
    Poly p;
    p.emplace(std::move(m), Rational(1));
    return Scalar(ring, std::move(p), Mono(ring->param_count(), 0));
  }
  /// Raw constructor; normalizes (reduction + cancellation).
  static Scalar from_parts(const RingPtr& ring, Poly num, Mono den) {
    return Scalar(ring, std::move(num), std::move(den));
  }

  const RingPtr& ring() const { return ring_; }
  const RingPtr& context() const { return ring_; }
  const Poly& numerator() const { return num_; }
  const Mono& denominator() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  bool is_one() const {
    return num_.size() == 1 && mono_is_one(num_.begin()->first) && num_.begin()->second == 1 && mono_is_one(den_);
  }
  bool is_rational() const { return mono_is_one(den_) && (num_.empty() || (num_.size() == 1 && mono_is_one(num_.begin()->first))); }
  Rational as_rational() const {
    if (!is_rational()) throw PreconditionError("scalar is not a plain rational");
    return num_.empty() ? Rational(0) : num_.begin()->second;
  }

  Scalar operator-() const {
    Scalar r = *this;
    for (auto& [m, c] : r.num_) c = -c;
    return r;
  }

  Scalar operator+(const Scalar& o) const {
    check_ring(o);
    // Common denominator = lcm of the two monomials.
    Mono lcm(den_.size());
    for (std::size_t i = 0; i < den_.size(); ++i) lcm[i] = std::max(den_[i], o.den_[i]);
    Mono f1, f2;
    mono_div(lcm, den_, f1);
    mono_div(lcm, o.den_, f2);
    Poly sum = poly_add(poly_mul_mono(num_, f1), poly_mul_mono(o.num_, f2));
    return Scalar(ring_, std::move(sum), std::move(lcm));
  }
  Scalar operator-(const Scalar& o) const { return *this + (-o); }
  Scalar operator*(const Scalar& o) const {
    check_ring(o);
    return Scalar(ring_, poly_mul(num_, o.num_), mono_mul(den_, o.den_));
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar scale(const Rational& q) const { return Scalar(ring_, poly_scale(num_, q), den_); }

  /// Division is legal only by nonzero rationals times monomials in
  /// invertible parameters (possibly themselves carrying a monomial
  /// denominator).
  Scalar operator/(const Scalar& o) const {
    check_ring(o);
    return *this * o.reciprocal();
  }

  Scalar reciprocal() const {
    if (num_.empty()) throw PreconditionError("division by zero");
    if (num_.size() != 1)
      throw PreconditionError("division only by rationals or monomials in invertible parameters");
    const auto& [mono, coeff] = *num_.begin();
    for (std::size_t i = 0; i < mono.size(); ++i)
      if (mono[i] > 0 && !ring_->invertible(i))
        throw PreconditionError("division by non-invertible parameter '" + ring_->name_of(i) + "'");
    Poly num;
    poly_add_term(num, den_, Rational(1) / coeff);
    return Scalar(ring_, std::move(num), mono);
  }

  Scalar pow(std::uint32_t e) const {
    Scalar r = one(ring_);
    Scalar b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  /// Exact ring equality. Structural comparison of normal forms, with a
  /// difference-is-zero fallback so equality stays exact even for elements
  /// whose minimal fraction form is not unique in the localized quotient.
  bool operator==(const Scalar& o) const {
    if (ring_.get() != o.ring_.get() && !ring_->same_spec(*o.ring_)) return false;
    if (num_ == o.num_ && den_ == o.den_) return true;
    return (*this - o).is_zero();
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Canonical printing; parse_scalar(str()) reproduces the value exactly.
  std::string str() const {
    if (num_.empty()) return "0";
    std::ostringstream out;
    bool multi_term = num_.size() > 1;
    bool has_den = !mono_is_one(den_);
    if (multi_term && has_den) out << "(";
    bool first = true;
    for (const auto& [m, c] : num_) {
      Rational q = c;
      if (first) {
        if (q < 0) {
          out << "-";
          q = -q;
        }
      } else {
        out << (q < 0 ? " - " : " + ");
        if (q < 0) q = -q;
      }
      out << term_str(q, m);
      first = false;
    }
    if (multi_term && has_den) out << ")";
    if (has_den) out << "/" << mono_str(den_);
    return out.str();
  }

 private:
  Scalar(RingPtr ring, Poly num, Mono den) : ring_(std::move(ring)), num_(std::move(num)), den_(std::move(den)) {
    if (den_.size() != ring_->param_count()) den_.assign(ring_->param_count(), 0);
    for (std::size_t i = 0; i < den_.size(); ++i)
      if (den_[i] > 0 && !ring_->invertible(i))
        throw PreconditionError("denominator uses non-invertible parameter '" + ring_->name_of(i) + "'");
    normalize();
  }

  void check_ring(const Scalar& o) const {
    if (ring_.get() == o.ring_.get()) return;
    if (!ring_->same_spec(*o.ring_)) throw ShapeError("scalars from different rings");
  }

  void normalize() {
    reduce_in_place(num_, &den_);
    if (num_.empty()) {
      den_.assign(ring_->param_count(), 0);
      return;
    }
    for (std::size_t t = 0; t < den_.size(); ++t) {
      while (den_[t] > 0) {
        auto q = try_div_param(num_, t);
        if (!q) break;
        num_ = std::move(*q);
        den_[t] -= 1;
        if (num_.empty()) {  // cannot happen for nonzero values; guard anyway
          den_.assign(ring_->param_count(), 0);
          return;
        }
      }
    }
  }

  /// Substitutes theta^2 -> (-b*theta - c)/a until every designated
  /// parameter has exponent <= 1. When 'a' carries a monomial, the
  /// denominator absorbs it (den may be null only if no relation has a
  /// non-rational 'a'; callers that cannot grow the denominator pass null).
  bool reduce_in_place(Poly& p, Mono* den) const {
    if (!ring_->has_relations()) return true;
    for (int guard = 0; guard < 100000; ++guard) {
      const Relation* hit = nullptr;
      Poly::iterator hit_it = p.end();
      for (auto it = p.begin(); it != p.end() && !hit; ++it) {
        for (const auto& rel : ring_->relations()) {
          if (it->first[rel.theta] >= 2) {
            hit = &rel;
            hit_it = it;
            break;
          }
        }
      }
      if (!hit) return true;
      Mono base = hit_it->first;
      Rational coeff = hit_it->second;
      base[hit->theta] -= 2;
      p.erase(hit_it);
      // term = coeff * base * theta^2  ->  (coeff/a_coeff) * base * (-b*theta - c) / a_mono
      Poly subst;
      Mono theta1(ring_->param_count(), 0);
      theta1[hit->theta] = 1;
      subst = poly_add(poly_mul_mono(poly_neg(hit->b), theta1), poly_neg(hit->c));
      Poly newpart = poly_mul_mono(poly_scale(subst, coeff / hit->a_coeff), base);
      if (!mono_is_one(hit->a_mono)) {
        if (!den) return false;
        p = poly_mul_mono(p, hit->a_mono);
        *den = mono_mul(*den, hit->a_mono);
      }
      p = poly_add(p, newpart);
    }
    throw InternalInconsistencyError("relation reduction did not terminate");
  }

  /// Exact division of a reduced numerator by parameter t inside the
  /// quotient ring; nullopt when not divisible (or not decidable for this
  /// relation shape, in which case the fraction is simply left uncancelled).
  std::optional<Poly> try_div_param(const Poly& p, std::size_t t) const {
    const Relation* rel = ring_->relation_for(t);
    if (!rel) {
      Poly out;
      Mono shift(ring_->param_count(), 0);
      shift[t] = 1;
      for (const auto& [m, c] : p) {
        Mono d;
        if (!mono_div(m, shift, d)) return std::nullopt;
        out.emplace(std::move(d), c);
      }
      return out;
    }
    // p = p0 + p1*theta; p = theta*q requires q1 = -a*p0/c, q0 = p1 - p0*b/c.
    Poly p0, p1;
    poly_split_linear(p, t, p0, p1);
    if (p0.empty()) {
      Poly q = p1;  // q1 = 0
      if (!reduce_nodeno(q)) return std::nullopt;
      return q;
    }
    if (rel->c.size() != 1) return std::nullopt;  // need a monomial c for a decidable test
    const Rational& c_coeff = rel->c.begin()->second;
    const Mono& c_mono = rel->c.begin()->first;
    Poly q1, q0_sub;
    if (!poly_div_monomial(poly_mul_mono(poly_scale(p0, -rel->a_coeff), rel->a_mono), c_coeff, c_mono, q1))
      return std::nullopt;
    if (!poly_div_monomial(poly_mul(p0, rel->b), c_coeff, c_mono, q0_sub)) return std::nullopt;
    Mono theta1(ring_->param_count(), 0);
    theta1[t] = 1;
    Poly q = poly_add(poly_add(p1, poly_neg(q0_sub)), poly_mul_mono(q1, theta1));
    if (!reduce_nodeno(q)) return std::nullopt;
    return q;
  }

  bool reduce_nodeno(Poly& p) const {
    Poly copy = p;
    if (!reduce_in_place(copy, nullptr)) return false;
    p = std::move(copy);
    return true;
  }

  std::string term_str(const Rational& q, const Mono& m) const {
    std::ostringstream out;
    bool constant = mono_is_one(m);
    if (constant) {
      out << q.str();
      return out.str();
    }
    bool wrote = false;
    if (q != 1) {
      out << q.str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << "*";
      out << ring_->name_of(i);
      if (m[i] > 1) out << "^" << m[i];
      wrote = true;
    }
    return out.str();
  }

  std::string mono_str(const Mono& m) const {
    std::ostringstream out;
    int factors = 0;
    for (auto e : m)
      if (e > 0) ++factors;
    if (factors > 1) out << "(";
    bool wrote = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << "*";
      out << ring_->name_of(i);
      if (m[i] > 1) out << "^" << m[i];
      wrote = true;
    }
    if (factors > 1) out << ")";
    return out.str();
  }

  RingPtr ring_;
  Poly num_;
  Mono den_;
};

/// Normal-form projection. Values are kept canonical by construction, so
/// this is the identity; it exists as the spec'd reduction entry point and
/// for idempotence tests.
inline Scalar reduce_modulo(const Scalar& value) { return value; }

namespace detail {
inline Rational eval_poly(const Poly& p, const std::vector<Rational>& vals) {
  Rational acc = 0;
  for (const auto& [m, c] : p) {
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) term *= vals[i];
    acc += term;
  }
  return acc;
}
}  // namespace detail

/// Exact substitution of rational values for parameters. The assignment must
/// cover every parameter occurring in the value and every parameter of every
/// ring relation, satisfy the relations exactly, and be nonzero on invertible
/// parameters it assigns.
inline Rational evaluate(const Scalar& value, const std::map<std::string, Rational>& assignment) {
  const Ring& R = *value.ring();
  std::vector<Rational> vals(R.param_count(), 0);
  std::vector<bool> assigned(R.param_count(), false);
  for (const auto& [name, q] : assignment) {
    auto idx = R.index_of(name);
    if (!idx) throw PreconditionError("assignment names undeclared parameter '" + name + "'");
    vals[*idx] = q;
    assigned[*idx] = true;
    if (R.invertible(*idx) && q == 0)
      throw PreconditionError("zero assigned to invertible parameter '" + name + "'");
  }
  auto require_assigned = [&](std::size_t i) {
    if (!assigned[i]) throw PreconditionError("missing parameter '" + R.name_of(i) + "'");
  };
  for (const auto& [m, c] : value.numerator())
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) require_assigned(i);
  for (std::size_t i = 0; i < value.denominator().size(); ++i)
    if (value.denominator()[i] > 0) require_assigned(i);
  for (const auto& rel : R.relations()) {
    for (std::size_t i = 0; i < R.param_count(); ++i)
      if (poly_contains_var(rel.source, i)) require_assigned(i);
    if (detail::eval_poly(rel.source, vals) != 0)
      throw PreconditionError("assignment violates a ring relation");
  }
  Rational num = detail::eval_poly(value.numerator(), vals);
  Rational den = 1;
  for (std::size_t i = 0; i < value.denominator().size(); ++i)
    for (std::uint32_t k = 0; k < value.denominator()[i]; ++k) den *= vals[i];
  if (den == 0) throw PreconditionError("denominator evaluates to zero");
  return num / den;
}

/// Exact substitution with values taken in F_p: the bridge from symbolic
/// families to concrete prime-field instances for the search oracle. The
/// assignment must satisfy the ring relations mod p and be nonzero mod p on
/// invertible parameters.
inline Fp evaluate_mod(const Scalar& value, const std::map<std::string, Rational>& assignment, std::uint32_t p) {
  const Ring& R = *value.ring();
  std::vector<Fp> vals(R.param_count(), Fp::zero(p));
  std::vector<bool> assigned(R.param_count(), false);
  for (const auto& [name, q] : assignment) {
    auto idx = R.index_of(name);
    if (!idx) throw PreconditionError("assignment names undeclared parameter '" + name + "'");
    vals[*idx] = Fp::from_rational(p, q);
    assigned[*idx] = true;
    if (R.invertible(*idx) && vals[*idx].is_zero())
      throw PreconditionError("zero assigned to invertible parameter '" + name + "'");
  }
  auto require_assigned = [&](std::size_t i) {
    if (!assigned[i]) throw PreconditionError("missing parameter '" + R.name_of(i) + "'");
  };
  auto eval_poly_mod = [&](const Poly& poly) {
    Fp acc = Fp::zero(p);
    for (const auto& [m, c] : poly) {
      Fp term = Fp::from_rational(p, c);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::uint32_t k = 0; k < m[i]; ++k) term *= vals[i];
      acc += term;
    }
    return acc;
  };
  for (const auto& [m, c] : value.numerator())
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) require_assigned(i);
  for (std::size_t i = 0; i < value.denominator().size(); ++i)
    if (value.denominator()[i] > 0) require_assigned(i);
  for (const auto& rel : R.relations()) {
    for (std::size_t i = 0; i < R.param_count(); ++i)
      if (poly_contains_var(rel.source, i)) require_assigned(i);
    if (!eval_poly_mod(rel.source).is_zero())
      throw PreconditionError("assignment violates a ring relation mod " + std::to_string(p));
  }
  Fp num = eval_poly_mod(value.numerator());
  Fp den = Fp::one(p);
  for (std::size_t i = 0; i < value.denominator().size(); ++i)
    for (std::uint32_t k = 0; k < value.denominator()[i]; ++k) den *= vals[i];
  if (den.is_zero()) throw PreconditionError("denominator evaluates to zero mod " + std::to_string(p));
  return num / den;
}

/// Transports a value into a ring with a superset of parameters (matched by
/// name). Used to introduce fresh parameters over existing data.
inline Scalar transport(const Scalar& value, const RingPtr& target) {
  const Ring& src = *value.ring();
  std::vector<std::size_t> map(src.param_count());
  for (std::size_t i = 0; i < src.param_count(); ++i) {
    auto idx = target->index_of(src.name_of(i));
    if (!idx) throw PreconditionError("target ring lacks parameter '" + src.name_of(i) + "'");
    map[i] = *idx;
  }
  auto remap = [&](const Mono& m) {
    Mono r(target->param_count(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) r[map[i]] += m[i];
    return r;
  };
  Poly num;
  for (const auto& [m, c] : value.numerator()) num.emplace(remap(m), c);
  return Scalar::from_parts(target, std::move(num), remap(value.denominator()));
}

}  // namespace lforge
