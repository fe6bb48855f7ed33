#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omega/rational.hpp"

namespace omega {

// Positive real r^(1/k) with rational r > 0. Stored with the smallest k, which
// makes the (r, k) pair canonical for a given value.
class ScaledScalar {
 public:
  ScaledScalar();
  ScaledScalar(Rational radicand, unsigned index = 1);

  static ScaledScalar one() { return ScaledScalar(); }

  const Rational& radicand() const { return radicand_; }
  unsigned index() const { return index_; }

  bool is_rational() const { return index_ == 1; }
  std::optional<Rational> as_rational() const;
  double to_double() const;

  ScaledScalar operator*(const ScaledScalar& other) const;
  ScaledScalar pow(unsigned exponent) const;
  ScaledScalar inverse() const;
  ScaledScalar root(unsigned k) const;

  bool operator==(const ScaledScalar& other) const;
  bool operator<(const ScaledScalar& other) const;

  std::string to_string() const;

 private:
  void reduce();

  Rational radicand_;
  unsigned index_;
};

// a / b when that ratio is rational.
std::optional<Rational> rational_ratio(const ScaledScalar& a, const ScaledScalar& b);

inline bool is_zero_value(const Rational& v) { return sgn(v) == 0; }

// Finite sum of radical * value. Radicals in distinct groups have irrational
// ratios, and positive real radicals with pairwise irrational ratios are
// linearly independent over the rationals, so the representation is zero
// exactly when every group value is zero.
template <class V>
class RadicalCombination {
 public:
  struct Group {
    ScaledScalar radical;
    V value;
  };

  RadicalCombination() = default;
  explicit RadicalCombination(V value) { add(ScaledScalar(), value); }
  RadicalCombination(const ScaledScalar& radical, V value) { add(radical, value); }

  void add(const ScaledScalar& radical, const V& value) {
    if (is_zero_value(value)) return;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      auto ratio = rational_ratio(radical, groups_[g].radical);
      if (!ratio) continue;
      groups_[g].value = groups_[g].value + value * *ratio;
      if (is_zero_value(groups_[g].value)) groups_.erase(groups_.begin() + static_cast<long>(g));
      return;
    }
    groups_.push_back({radical, value});
  }

  void add(const RadicalCombination& other) {
    for (const auto& g : other.groups_) add(g.radical, g.value);
  }

  RadicalCombination& operator+=(const RadicalCombination& other) {
    add(other);
    return *this;
  }

  RadicalCombination operator+(const RadicalCombination& other) const {
    RadicalCombination out = *this;
    out.add(other);
    return out;
  }

  RadicalCombination operator-(const RadicalCombination& other) const {
    RadicalCombination out = *this;
    for (const auto& g : other.groups_) out.add(g.radical, g.value * Rational(-1));
    return out;
  }

  RadicalCombination scaled(const ScaledScalar& s) const {
    RadicalCombination out;
    for (const auto& g : groups_) out.groups_.push_back({g.radical * s, g.value});
    return out;
  }

  RadicalCombination scaled(const Rational& q) const {
    RadicalCombination out;
    if (sgn(q) == 0) return out;
    for (const auto& g : groups_) out.groups_.push_back({g.radical, g.value * q});
    return out;
  }

  const std::vector<Group>& groups() const { return groups_; }
  bool is_zero() const { return groups_.empty(); }

  std::optional<V> rational_value() const {
    if (groups_.empty()) return std::nullopt;
    if (groups_.size() != 1) return std::nullopt;
    auto q = groups_[0].radical.as_rational();
    if (!q) return std::nullopt;
    return groups_[0].value * *q;
  }

  bool is_rational() const {
    return groups_.empty() || (groups_.size() == 1 && groups_[0].radical.is_rational());
  }

  bool operator==(const RadicalCombination& other) const { return (*this - other).is_zero(); }

  // Builds the product using mul(V, V) for the value parts.
  template <class Mul>
  static RadicalCombination product(const RadicalCombination& a, const RadicalCombination& b, Mul mul) {
    RadicalCombination out;
    for (const auto& x : a.groups_)
      for (const auto& y : b.groups_) out.add(x.radical * y.radical, mul(x.value, y.value));
    return out;
  }

 private:
  std::vector<Group> groups_;
};

using RadicalNumber = RadicalCombination<Rational>;

double to_double(const RadicalNumber& value);

}  // namespace omega
