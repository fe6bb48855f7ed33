#pragma once

#include "json.hpp"
#include <string>
#include <vector>

#include "omega/approx.hpp"
#include "omega/familycheck.hpp"
#include "omega/tensorbridge.hpp"

namespace omega::io {

using json = nlohmann::json;

json read_file(const std::string& path);
// 64-bit FNV-1a of the raw file bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

WeightedComplex complex_from_json(const json& j);
json to_json(const WeightedComplex& c);

SymmetryAction action_from_json(const WeightedComplex& c, const json& j, std::size_t max_group = kDefaultMaxGroup);
json to_json(const SymmetryAction& a);

ScaledScalar scale_from_json(const json& j);
json to_json(const ScaledScalar& s);

// {"sites": [..], "mode": "rational"|"float", "terms": [{"exps": [[..]], "coeff": ..}]}
Polynomial polynomial_from_json(const json& j, const std::vector<unsigned>* default_sites = nullptr);
FloatPolynomial float_polynomial_from_json(const json& j);
json to_json(const Polynomial& p);
json to_json(const FloatPolynomial& p);

// A polynomial with an optional "scale" multiplier.
RadicalPolynomial radical_from_json(const json& j, const std::vector<unsigned>& sites);
// Rational polynomials are written plainly, others as {"groups": [{"scale", "poly"}]}.
json to_json(const RadicalPolynomial& p, const std::vector<unsigned>& sites);

// {"complex", "action"?, "site_vars"?, "index_size", "scale"?, "locals": [{"site", "beta", "poly", "scale"?}],
//  "target"?}; beta values are 1-based.
struct DecompositionFile {
  OmegaGDecomposition dec;
  std::optional<Polynomial> target;
};
DecompositionFile decomposition_from_json(const json& j, std::size_t max_group = kDefaultMaxGroup);
json to_json(const OmegaGDecomposition& d, const std::optional<Polynomial>& target = std::nullopt);

// {"complex", "action"?, "site_vars"?, "terms": [[poly per site], ..]}
struct TermsFile {
  SymmetryAction action;
  std::vector<unsigned> site_vars;
  std::vector<ElementaryTerm> terms;
};
TermsFile terms_from_json(const json& j, std::size_t max_group = kDefaultMaxGroup);

GramRepresentation gram_from_json(const json& j);
json to_json(const GramRepresentation& g);

RationalTensor tensor_from_json(const json& j);
json to_json(const RationalTensor& t);

LocalFamily family_from_json(const json& j);
json to_json(const LocalFamily& f);

// {"n", "m", "d", "terms": [{"weight", "factors": [[row-major D x D], ..]}], "complex"?, "action"?}
struct WitnessFile {
  SeparableGram gram;
  SymmetryAction action;
};
WitnessFile witness_from_json(const json& j, std::size_t max_group = kDefaultMaxGroup);
json to_json(const SeparableGram& g);

json matrix_to_json(const Matrix& m);

}  // namespace omega::io
