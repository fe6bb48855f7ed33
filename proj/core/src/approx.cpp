#include "omega/approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "omega/error.hpp"

namespace omega {

namespace {

template <class Coeff>
BasicPolynomial<Coeff> homogenize_impl(const BasicPolynomial<Coeff>& p, unsigned d) {
  std::vector<unsigned> sites = p.sites();
  for (auto& s : sites) ++s;
  BasicPolynomial<Coeff> out(sites);
  for (const auto& [e, c] : p.terms()) {
    Exponent h;
    unsigned off = 0;
    for (std::size_t i = 0; i < p.site_count(); ++i) {
      unsigned deg = 0;
      for (unsigned v = 0; v < p.sites()[i]; ++v) deg += e[off + v];
      require(deg <= d, ErrorCode::NotHomogeneous, "block degree exceeds the target degree");
      h.push_back(d - deg);
      h.insert(h.end(), e.begin() + off, e.begin() + off + p.sites()[i]);
      off += p.sites()[i];
    }
    out.add_term(h, c);
  }
  return out;
}

void normalize_blocks(std::vector<double>& x, const std::vector<unsigned>& sites) {
  std::size_t off = 0;
  for (unsigned s : sites) {
    double norm = 0.0;
    for (unsigned v = 0; v < s; ++v) norm += x[off + v] * x[off + v];
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      x[off] = 1.0;
      norm = 1.0;
    }
    for (unsigned v = 0; v < s; ++v) x[off + v] /= norm;
    off += s;
  }
}

}  // namespace

Polynomial homogenize(const Polynomial& p, unsigned d) { return homogenize_impl(p, d); }
FloatPolynomial homogenize(const FloatPolynomial& p, unsigned d) { return homogenize_impl(p, d); }

NormEstimate infinity_norm_lower(const FloatPolynomial& p, std::size_t samples, std::uint64_t seed,
                                 std::size_t polish_iterations) {
  const auto& sites = p.sites();
  std::vector<long> degree(sites.size(), -1);
  for (const auto& [e, c] : p.terms()) {
    unsigned off = 0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      long deg = 0;
      for (unsigned v = 0; v < sites[i]; ++v) deg += e[off + v];
      if (degree[i] < 0) degree[i] = deg;
      require(degree[i] == deg, ErrorCode::NotHomogeneous, "polynomial is not homogeneous in site " + std::to_string(i));
      off += sites[i];
    }
  }
  const std::size_t dim = p.variable_count();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  NormEstimate best;
  best.point.assign(dim, 0.0);
  normalize_blocks(best.point, sites);
  best.value = std::abs(p.evaluate(best.point));
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> x(dim);
    for (auto& xi : x) xi = normal(rng);
    normalize_blocks(x, sites);
    double v = std::abs(p.evaluate(x));
    if (v > best.value) best = {v, x};
  }
  double step = 0.5;
  for (std::size_t it = 0; it < polish_iterations && step > 1e-12; ++it) {
    bool improved = false;
    for (std::size_t v = 0; v < dim; ++v)
      for (double dir : {1.0, -1.0}) {
        std::vector<double> x = best.point;
        x[v] += dir * step;
        normalize_blocks(x, sites);
        double val = std::abs(p.evaluate(x));
        if (val > best.value) {
          best = {val, x};
          improved = true;
        }
      }
    if (!improved) step /= 2.0;
  }
  return best;
}

GramNormBounds gram_norm_bounds(const Matrix& m) {
  GramNormBounds b;
  if (m.size() == 0) return b;
  Eigen::JacobiSVD<Matrix> svd(m);
  b.sigma_max = svd.singularValues()(0);
  b.schatten2 = m.norm();
  return b;
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

void SeparableGram::validate(double tol) const {
  const long D = static_cast<long>(local_monomial_basis(m, d).size());
  require(weights.size() == factors.size(), ErrorCode::DimensionMismatch, "one weight per term expected");
  for (std::size_t t = 0; t < factors.size(); ++t) {
    require(weights[t] > 0.0, ErrorCode::InvalidArgument, "weights must be positive");
    require(factors[t].size() == n + 1, ErrorCode::DimensionMismatch, "one factor per site expected");
    for (const auto& f : factors[t]) {
      require(f.rows() == D && f.cols() == D, ErrorCode::DimensionMismatch, "factor has the wrong size");
      require(is_psd(f, tol), ErrorCode::NotPSD, "factor is not positive semidefinite");
    }
  }
}

Matrix SeparableGram::assemble() const {
  const long D = static_cast<long>(local_monomial_basis(m, d).size());
  long total = 1;
  for (unsigned i = 0; i <= n; ++i) total *= D;
  Matrix out = Matrix::Zero(total, total);
  for (std::size_t t = 0; t < factors.size(); ++t) {
    Matrix k = factors[t][0];
    for (std::size_t i = 1; i < factors[t].size(); ++i) k = kron(k, factors[t][i]);
    out += weights[t] * k;
  }
  return out;
}

double SeparableGram::trace() const { return mu_upper(*this); }

double mu_upper(const SeparableGram& g) {
  double total = 0.0;
  for (std::size_t t = 0; t < g.factors.size(); ++t) {
    double prod = g.weights[t];
    for (const auto& f : g.factors[t]) prod *= f.trace();
    total += prod;
  }
  return total;
}

std::size_t maurey_samples(double epsilon) {
  require(epsilon > 0.0, ErrorCode::InvalidArgument, "epsilon must be positive");
  return static_cast<std::size_t>(std::ceil(8.0 * std::exp(4.0) / (epsilon * epsilon)));
}

namespace {

// Square split of m_d^T A m_d through the eigendecomposition of A, rounded to
// binary64 and converted exactly; the local is defined as the sum of squares.
std::vector<RadicalPolynomial> gram_square_split(const Matrix& a, double weight, unsigned m, unsigned d) {
  auto basis = local_monomial_basis(m, d);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  std::vector<RadicalPolynomial> out;
  const double top = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
  for (long r = 0; r < es.eigenvalues().size(); ++r) {
    double lambda = es.eigenvalues()(r);
    if (lambda <= 1e-14 * top) continue;
    double s = std::sqrt(lambda * weight);
    Polynomial tau(std::vector<unsigned>{m});
    for (std::size_t b = 0; b < basis.size(); ++b)
      tau.add_term(basis[b], rational_from_double(s * es.eigenvectors()(static_cast<long>(b), r)));
    if (!tau.is_zero()) out.emplace_back(tau);
  }
  return out;
}

}  // namespace

ApproxResult approx_separable(const SeparableGram& g, const SymmetryAction& a, double epsilon, std::uint64_t seed,
                              std::optional<std::size_t> samples, bool always_sample) {
  g.validate();
  require(!g.factors.empty(), ErrorCode::InvalidArgument, "witness has no terms");
  require(a.complex().vertex_count() == g.n + 1, ErrorCode::DimensionMismatch, "action and witness disagree on n");
  const double trace = mu_upper(g);
  require(trace <= 1.0 + 1e-9, ErrorCode::NotNormalized, "witness trace exceeds 1");
  GramRepresentation whole{g.n, g.m, g.d, g.assemble()};
  require(gram_invariance_defect(whole, a) <= 1e-9 * std::max(1.0, whole.entries.cwiseAbs().maxCoeff()),
          ErrorCode::NotInvariant, "witness matrix is not invariant");

  const std::size_t k = samples.value_or(maurey_samples(epsilon));
  require(k > 0, ErrorCode::InvalidArgument, "sample count must be positive");
  std::vector<double> mass(g.factors.size());
  for (std::size_t t = 0; t < g.factors.size(); ++t) {
    mass[t] = g.weights[t];
    for (const auto& f : g.factors[t]) mass[t] *= f.trace();
  }
  // weight of term t in the approximant, relative to normalized factors
  std::map<std::size_t, double> chosen;
  const bool verbatim = !always_sample && g.factors.size() <= k;
  if (verbatim) {
    for (std::size_t t = 0; t < mass.size(); ++t)
      if (mass[t] > 0.0) chosen[t] = mass[t];
  } else {
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(mass.begin(), mass.end());
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t s = 0; s < k; ++s) ++counts[pick(rng)];
    for (const auto& [t, c] : counts) chosen[t] = trace * static_cast<double>(c) / static_cast<double>(k);
  }

  SeparableGram sampled{g.n, g.m, g.d, {}, {}};
  std::vector<SeparableTerm> terms;
  for (const auto& [t, w] : chosen) {
    std::vector<Matrix> states;
    for (const auto& f : g.factors[t]) states.push_back(f / f.trace());
    sampled.weights.push_back(w);
    sampled.factors.push_back(states);
    SeparableTerm term;
    for (std::size_t i = 0; i < states.size(); ++i) {
      auto split = gram_square_split(states[i], i == 0 ? w : 1.0, g.m, g.d);
      RadicalPolynomial local;
      for (const auto& tau : split) local += square(tau);
      term.factors.push_back(local);
      term.squares.push_back(split);
    }
    terms.push_back(std::move(term));
  }

  ApproxResult out;
  out.samples = verbatim ? 0 : k;
  out.terms_used = chosen.size();
  out.verbatim = verbatim;
  out.index_budget = k * a.order();
  GramRepresentation raw{g.n, g.m, g.d, sampled.assemble()};
  out.approximant = Matrix::Zero(raw.entries.rows(), raw.entries.cols());
  for (std::size_t h = 0; h < a.order(); ++h) out.approximant += act_gram(h, raw, a);
  out.approximant /= static_cast<double>(a.order());
  out.error = (whole.entries - out.approximant).norm();
  std::vector<unsigned> vars(g.n + 1, g.m);
  out.decomposition = separable_symmetrize(terms, a, vars, LocalCone::SumOfSquares, false);
  return out;
}

SeparableGram random_invariant_witness(unsigned m, unsigned d, std::size_t terms, std::uint64_t seed) {
  const long D = static_cast<long>(local_monomial_basis(m, d).size());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  SeparableGram g{1, m, d, {}, {}};
  auto random_psd = [&]() {
    Matrix b(D, D);
    for (long i = 0; i < b.size(); ++i) b.data()[i] = normal(rng);
    return Matrix(b * b.transpose());
  };
  for (std::size_t t = 0; t < terms; ++t) {
    Matrix x = random_psd(), y = random_psd();
    double w = unif(rng);
    g.weights.push_back(w);
    g.factors.push_back({x, y});
    g.weights.push_back(w);
    g.factors.push_back({y, x});
  }
  double tr = mu_upper(g);
  for (auto& w : g.weights) w /= tr;
  return g;
}

}  // namespace omega
