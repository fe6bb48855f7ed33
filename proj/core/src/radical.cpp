#include "omega/radical.hpp"

#include <cmath>
#include <numeric>

#include "omega/error.hpp"

namespace omega {

ScaledScalar::ScaledScalar() : radicand_(1), index_(1) {}

ScaledScalar::ScaledScalar(Rational radicand, unsigned index) : radicand_(std::move(radicand)), index_(index) {
  radicand_.canonicalize();
  if (index_ == 0) fail(ErrorCode::InvalidArgument, "radical index must be positive");
  if (sgn(radicand_) <= 0) fail(ErrorCode::InvalidArgument, "radicand must be positive");
  reduce();
}

void ScaledScalar::reduce() {
  bool changed = true;
  while (changed && index_ > 1) {
    changed = false;
    for (unsigned d = 2; d <= index_; ++d) {
      if (index_ % d != 0) continue;
      if (auto r = exact_root(radicand_, d)) {
        radicand_ = *r;
        index_ /= d;
        changed = true;
        break;
      }
    }
  }
}

std::optional<Rational> ScaledScalar::as_rational() const {
  if (index_ == 1) return radicand_;
  return std::nullopt;
}

double ScaledScalar::to_double() const {
  if (index_ == 1) return radicand_.get_d();
  return std::pow(radicand_.get_d(), 1.0 / static_cast<double>(index_));
}

ScaledScalar ScaledScalar::operator*(const ScaledScalar& other) const {
  if (other.index_ == 1 && other.radicand_ == 1) return *this;
  if (index_ == 1 && radicand_ == 1) return other;
  unsigned l = std::lcm(index_, other.index_);
  Rational r = omega::pow(radicand_, l / index_) * omega::pow(other.radicand_, l / other.index_);
  return ScaledScalar(r, l);
}

ScaledScalar ScaledScalar::pow(unsigned exponent) const {
  return ScaledScalar(omega::pow(radicand_, exponent), index_);
}

ScaledScalar ScaledScalar::inverse() const { return ScaledScalar(Rational(1) / radicand_, index_); }

ScaledScalar ScaledScalar::root(unsigned k) const { return ScaledScalar(radicand_, index_ * k); }

bool ScaledScalar::operator==(const ScaledScalar& other) const {
  return index_ == other.index_ && radicand_ == other.radicand_;
}

bool ScaledScalar::operator<(const ScaledScalar& other) const {
  if (index_ != other.index_) return index_ < other.index_;
  return radicand_ < other.radicand_;
}

std::string ScaledScalar::to_string() const {
  if (index_ == 1) return omega::to_string(radicand_);
  return "(" + omega::to_string(radicand_) + ")^(1/" + std::to_string(index_) + ")";
}

std::optional<Rational> rational_ratio(const ScaledScalar& a, const ScaledScalar& b) {
  if (a == b) return Rational(1);
  unsigned l = std::lcm(a.index(), b.index());
  Rational q = pow(a.radicand(), l / a.index()) / pow(b.radicand(), l / b.index());
  return exact_root(q, l);
}

double to_double(const RadicalNumber& value) {
  double out = 0.0;
  for (const auto& g : value.groups()) out += g.radical.to_double() * g.value.get_d();
  return out;
}

}  // namespace omega
