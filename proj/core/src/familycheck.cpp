#include "omega/familycheck.hpp"

#include <cmath>
#include <string>

#include "omega/error.hpp"

namespace omega {

const char* const kUndecidabilityNote =
    "A bounded check cannot certify positivity for every n: deciding nonnegativity for all circle sizes is "
    "undecidable in general.";

void LocalFamily::validate() const {
  require(D >= 1 && m >= 1, ErrorCode::InvalidSize, "D and m must be positive");
  require(coeffs.size() == D, ErrorCode::DimensionMismatch, "coefficient array needs D rows");
  for (const auto& row : coeffs) {
    require(row.size() == D, ErrorCode::DimensionMismatch, "coefficient array needs D columns");
    for (const auto& v : row) require(v.size() == m, ErrorCode::DimensionMismatch, "coefficient vectors need m entries");
  }
}

std::vector<IntegerMatrix> transfer_matrices(const LocalFamily& f) {
  f.validate();
  std::vector<IntegerMatrix> a(f.m, IntegerMatrix(f.D, std::vector<Integer>(f.D)));
  for (std::size_t j = 0; j < f.m; ++j)
    for (std::size_t x = 0; x < f.D; ++x)
      for (std::size_t y = 0; y < f.D; ++y) a[j][x][y] = f.coeffs[x][y][j];
  return a;
}

namespace {

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  const std::size_t d = a.size();
  IntegerMatrix out(d, std::vector<Integer>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Integer trace(const IntegerMatrix& a) {
  Integer t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

void check_size(std::size_t m, std::size_t n, std::size_t max_entries) {
  double entries = std::pow(static_cast<double>(m), static_cast<double>(n + 1));
  if (entries > static_cast<double>(max_entries))
    fail(ErrorCode::SizeTooLarge, "transfer tensor for n = " + std::to_string(n) + " has more than " +
                                      std::to_string(max_entries) + " entries");
}

}  // namespace

std::vector<Integer> transfer_tensor(const LocalFamily& f, std::size_t n, std::size_t max_entries) {
  check_size(f.m, n, max_entries);
  auto a = transfer_matrices(f);
  std::vector<Integer> out;
  // Depth-first over j_0..j_n reusing prefix products.
  std::vector<IntegerMatrix> prefix(n + 1);
  std::vector<std::size_t> idx(n + 1, 0);
  std::size_t depth = 0;
  prefix[0] = a[0];
  while (true) {
    if (depth == n) {
      out.push_back(trace(prefix[n]));
      // advance
      while (true) {
        if (++idx[depth] < f.m) break;
        idx[depth] = 0;
        if (depth == 0) return out;
        --depth;
      }
      prefix[depth] = depth == 0 ? a[idx[0]] : multiply(prefix[depth - 1], a[idx[depth]]);
      continue;
    }
    ++depth;
    prefix[depth] = multiply(prefix[depth - 1], a[idx[depth]]);
  }
}

std::vector<Integer> brute_force_tensor(const LocalFamily& f, std::size_t n) {
  f.validate();
  const std::size_t sites = n + 1;
  std::size_t entries = 1, cycles = 1;
  for (std::size_t i = 0; i < sites; ++i) {
    entries *= f.m;
    cycles *= f.D;
  }
  std::vector<Integer> out(entries);
  for (std::size_t e = 0; e < entries; ++e) {
    std::vector<std::size_t> j(sites);
    for (std::size_t i = sites, r = e; i-- > 0; r /= f.m) j[i] = r % f.m;
    Integer total = 0;
    for (std::size_t c = 0; c < cycles; ++c) {
      std::vector<std::size_t> alpha(sites);
      for (std::size_t i = sites, r = c; i-- > 0; r /= f.D) alpha[i] = r % f.D;
      Integer prod = 1;
      for (std::size_t t = 0; t < sites && sgn(prod) != 0; ++t) prod *= f.coeffs[alpha[t]][alpha[(t + 1) % sites]][j[t]];
      total += prod;
    }
    out[e] = total;
  }
  return out;
}

FamilyReport bounded_positivity_check(const LocalFamily& f, std::size_t n_max, std::size_t n_min,
                                      std::size_t max_entries) {
  f.validate();
  require(n_min <= n_max, ErrorCode::InvalidArgument, "n_min must not exceed n_max");
  FamilyReport report;
  report.n_min = n_min;
  report.n_max = n_max;
  report.disclaimer = kUndecidabilityNote;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    auto t = transfer_tensor(f, n, max_entries);
    std::size_t best = 0;
    for (std::size_t k = 1; k < t.size(); ++k)
      if (t[k] < t[best]) best = k;
    FamilyStep step;
    step.n = n;
    step.min_entry = t[best];
    step.argmin.assign(n + 1, 0);
    for (std::size_t i = n + 1, r = best; i-- > 0; r /= f.m) step.argmin[i] = r % f.m + 1;
    report.steps.push_back(step);
    if (sgn(step.min_entry) < 0) {
      report.violation = true;
      report.first_violation = n;
      report.witness = step.argmin;
      report.witness_value = step.min_entry;
      break;
    }
  }
  return report;
}

}  // namespace omega
