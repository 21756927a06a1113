#pragma once

#include "lforge/poly.hpp"

#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lforge {

/// One quadratic parameter relation a*theta^2 + b*theta + c = 0, with theta a
/// designated parameter, a a nonzero rational times a monomial in invertible
/// parameters, and b, c polynomials free of theta. Reduction substitutes
/// theta^2 -> (-b*theta - c)/a.
struct Relation {
  std::size_t theta = 0;
  Rational a_coeff = 1;
  Mono a_mono;  // theta-free, parameters must be invertible
  Poly b;
  Poly c;
  Poly source;  // the relation polynomial as given, for round-tripping
};

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char ch : s)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

inline bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Declares the scalar ring every value lives in: named parameters, the
/// subset allowed in denominators, quadratic parameter relations, and the
/// characteristic (0, or a prime for the search oracle's fields; prime
/// fields admit no parameters).
class Ring {
 public:
  static std::shared_ptr<const Ring> make(std::vector<std::string> parameters,
                                          std::vector<std::string> invertible,
                                          std::vector<Relation> relations = {},
                                          std::uint32_t characteristic = 0) {
    auto ring = std::shared_ptr<Ring>(new Ring());
    ring->params_ = std::move(parameters);
    ring->characteristic_ = characteristic;
    ring->invertible_.assign(ring->params_.size(), false);

    for (std::size_t i = 0; i < ring->params_.size(); ++i) {
      if (!is_identifier(ring->params_[i]))
        throw PreconditionError("invalid parameter name '" + ring->params_[i] + "'");
      for (std::size_t j = i + 1; j < ring->params_.size(); ++j)
        if (ring->params_[i] == ring->params_[j])
          throw PreconditionError("duplicate parameter name '" + ring->params_[i] + "'");
    }
    for (const auto& name : invertible) {
      auto idx = ring->index_of(name);
      if (!idx) throw PreconditionError("invertible parameter '" + name + "' is not declared");
      ring->invertible_[*idx] = true;
    }
    if (characteristic != 0) {
      if (!is_prime_u32(characteristic) || characteristic > (1u << 31))
        throw PreconditionError("characteristic must be 0 or a prime <= 2^31");
      if (!ring->params_.empty())
        throw PreconditionError("prime-field rings admit no parameters");
    }
    for (auto& rel : relations) ring->add_relation_checked(std::move(rel));
    return ring;
  }

  /// Characteristic-0 ring with no parameters (plain rationals).
  static std::shared_ptr<const Ring> rationals() { return make({}, {}); }

  const std::vector<std::string>& parameters() const { return params_; }
  std::size_t param_count() const { return params_.size(); }
  std::uint32_t characteristic() const { return characteristic_; }
  bool invertible(std::size_t idx) const { return invertible_[idx]; }
  const std::vector<Relation>& relations() const { return relations_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
      if (params_[i] == name) return i;
    return std::nullopt;
  }
  const std::string& name_of(std::size_t idx) const { return params_[idx]; }

  const Relation* relation_for(std::size_t theta) const {
    for (const auto& r : relations_)
      if (r.theta == theta) return &r;
    return nullptr;
  }

  bool has_relations() const { return !relations_.empty(); }

  bool same_spec(const Ring& o) const {
    if (params_ != o.params_ || invertible_ != o.invertible_ || characteristic_ != o.characteristic_) return false;
    if (relations_.size() != o.relations_.size()) return false;
    for (std::size_t i = 0; i < relations_.size(); ++i)
      if (relations_[i].source != o.relations_[i].source || relations_[i].theta != o.relations_[i].theta)
        return false;
    return true;
  }

  /// Decomposes a relation polynomial into the a*theta^2 + b*theta + c shape.
  /// The designated parameter is the first declared parameter (preferring
  /// ones with a purely rational leading coefficient) for which the shape is
  /// valid.
  Relation decompose_relation(const Poly& p) const {
    std::optional<Relation> fallback;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t t = 0; t < params_.size(); ++t) {
        auto rel = try_shape(p, t);
        if (!rel) continue;
        if (mono_is_one(rel->a_mono)) return *rel;  // rational leading coefficient
        if (pass == 1) return *rel;
        if (!fallback) fallback = *rel;
      }
      if (pass == 0 && fallback) return *fallback;
    }
    throw PreconditionError("relation polynomial is not quadratic in a single designated parameter");
  }

 private:
  Ring() = default;

  std::optional<Relation> try_shape(const Poly& p, std::size_t theta) const {
    if (poly_degree_in(p, theta) != 2) return std::nullopt;
    Poly a, b, c;
    for (const auto& [m, coeff] : p) {
      Mono stripped = m;
      std::uint32_t k = m[theta];
      stripped[theta] = 0;
      if (k == 2)
        poly_add_term(a, stripped, coeff);
      else if (k == 1)
        poly_add_term(b, stripped, coeff);
      else
        poly_add_term(c, stripped, coeff);
    }
    if (a.size() != 1) return std::nullopt;
    Relation rel;
    rel.theta = theta;
    rel.a_coeff = a.begin()->second;
    rel.a_mono = a.begin()->first;
    rel.b = std::move(b);
    rel.c = std::move(c);
    rel.source = p;
    for (std::size_t i = 0; i < params_.size(); ++i) {
      if (rel.a_mono[i] > 0 && !invertible_[i]) return std::nullopt;
    }
    return rel;
  }

  void add_relation_checked(Relation rel) {
    if (rel.theta >= params_.size()) throw PreconditionError("relation designates an unknown parameter");
    for (const auto& other : relations_)
      if (other.theta == rel.theta)
        throw PreconditionError("parameter '" + params_[rel.theta] + "' designated by two relations");
    if (rel.a_coeff == 0) throw PreconditionError("relation leading coefficient is zero");
    if (rel.a_mono.empty()) rel.a_mono.assign(params_.size(), 0);
    if (rel.a_mono[rel.theta] != 0 || poly_contains_var(rel.b, rel.theta) || poly_contains_var(rel.c, rel.theta))
      throw PreconditionError("relation coefficients must not contain the designated parameter");
    for (std::size_t i = 0; i < params_.size(); ++i)
      if (rel.a_mono[i] > 0 && !invertible_[i])
        throw PreconditionError("relation leading monomial uses non-invertible parameter '" + params_[i] + "'");
    if (rel.source.empty()) {
      Mono theta2(params_.size(), 0);
      theta2[rel.theta] = 2;
      poly_add_term(rel.source, mono_mul(theta2, rel.a_mono), rel.a_coeff);
      Mono theta1(params_.size(), 0);
      theta1[rel.theta] = 1;
      rel.source = poly_add(rel.source, poly_mul_mono(rel.b, theta1));
      rel.source = poly_add(rel.source, rel.c);
    }
    relations_.push_back(std::move(rel));
  }

  std::vector<std::string> params_;
  std::vector<bool> invertible_;
  std::vector<Relation> relations_;
  std::uint32_t characteristic_ = 0;
};

using RingPtr = std::shared_ptr<const Ring>;

}  // namespace lforge
