#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "edsys/eds.hpp"
#include "edsys/exterior.hpp"
#include "edsys/linalg.hpp"

namespace edsys::testing {

inline ChartPtr coordinate_chart(std::size_t n, std::size_t base = 0) {
  std::vector<std::string> names;
  std::vector<Index> b;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < base; ++i) b.push_back(static_cast<Index>(i));
  return make_chart(names, b);
}

/// Canonical a/b; mpq_class(a, b) alone leaves the fraction unreduced.
inline Rational frac(std::int64_t a, std::int64_t b) {
  Rational q(static_cast<long>(a), static_cast<long>(b));
  q.canonicalize();
  return q;
}

inline Poly random_poly(Rng& rng, std::size_t n, int max_terms = 3, int max_degree = 2) {
  Poly p;
  const auto terms = rng.uniform(0, max_terms);
  for (std::int64_t t = 0; t < terms; ++t) {
    Monomial m;
    const auto deg = rng.uniform(0, max_degree);
    for (std::int64_t j = 0; j < deg; ++j) m.push_back(static_cast<Index>(rng.uniform(0, n - 1)));
    std::sort(m.begin(), m.end());
    p.add_term(m, frac(rng.uniform(-5, 5), rng.uniform(1, 3)));
  }
  return p;
}

inline Basis random_basis(Rng& rng, std::size_t n, int k) {
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(all[i - 1], all[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }
  Basis b(all.begin(), all.begin() + k);
  std::sort(b.begin(), b.end());
  return b;
}

inline Form random_form(Rng& rng, const ChartPtr& chart, int k, int max_terms = 3) {
  Form f(chart, k);
  const auto terms = rng.uniform(0, max_terms);
  for (std::int64_t t = 0; t < terms; ++t) {
    f.add_term(random_basis(rng, chart->size(), k), random_poly(rng, chart->size()));
  }
  return f;
}

inline Point random_rational_point(Rng& rng, std::size_t n) {
  Point p;
  for (std::size_t i = 0; i < n; ++i) p.values.push_back(frac(rng.uniform(-9, 9), rng.uniform(1, 4)));
  return p;
}

inline TangentVector random_vector(Rng& rng, std::size_t n) {
  TangentVector v{std::vector<Rational>(n)};
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.uniform(-6, 6);
  return v;
}

inline Rational sign_power(int k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace edsys::testing
