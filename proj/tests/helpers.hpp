#pragma once

#include "cusp/forms.hpp"
#include "cusp/parse.hpp"
#include "cusp/poly.hpp"

#include <random>
#include <string>

namespace testing_helpers {

inline const cusp::VarList& xyz() {
  static const cusp::VarList v{"x", "y", "z"};
  return v;
}

inline cusp::SparsePoly P(const std::string& text, const cusp::VarList& vars = xyz()) {
  return cusp::parse_poly(text, vars);
}

inline cusp::SparsePoly U(const std::string& text) { return cusp::parse_univariate(text, "u"); }

inline cusp::TruncSeries S(const std::string& text) { return cusp::TruncSeries::exact(U(text)); }

/// Random polynomial with small integer or half-integer coefficients.
inline cusp::SparsePoly random_poly(std::mt19937& rng, const cusp::VarList& vars, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> den(1, 2);
  std::uniform_int_distribution<int> deg(0, max_deg);
  cusp::SparsePoly f(vars);
  for (int t = 0; t < terms; ++t) {
    cusp::Exponent e{};
    int budget = deg(rng);
    for (std::size_t v = 0; v < vars.size() && budget > 0; ++v) {
      std::uniform_int_distribution<int> part(0, budget);
      const int k = part(rng);
      e[v] = static_cast<std::uint16_t>(k);
      budget -= k;
    }
    f.add_term(e, cusp::GaussianRational(cusp::Rational(coef(rng), den(rng))));
  }
  return f;
}

}  // namespace testing_helpers
