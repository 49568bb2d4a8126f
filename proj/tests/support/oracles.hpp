#pragma once

// Independent reference computations for tests. Nothing here calls into
// the library's numerical routines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace dirprior::testing {

/// Calls visit(f) for every composition f of n into k non-negative parts.
inline void for_each_composition(int n, int k,
                                 const std::function<void(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> f(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      f[static_cast<std::size_t>(pos)] = left;
      visit(f);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      f[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, n);
}

/// Dirichlet-multinomial pmf from factorial / gamma ratios evaluated with
/// tgamma and direct products (small n only).
inline double dirichlet_multinomial_pmf_direct(const std::vector<double>& alpha,
                                               const std::vector<std::int64_t>& f) {
  double n = 0.0;
  double a0 = 0.0;
  double value = 1.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    n += static_cast<double>(f[i]);
    a0 += alpha[i];
    // Rising factorial alpha_i^(f_i) / f_i!
    double term = 1.0;
    for (std::int64_t j = 0; j < f[i]; ++j) {
      term *= (alpha[i] + static_cast<double>(j)) / static_cast<double>(j + 1);
    }
    value *= term;
  }
  double rising = 1.0;
  double nfact = 1.0;
  for (int j = 0; j < static_cast<int>(n); ++j) {
    rising *= a0 + j;
    nfact *= j + 1;
  }
  return value * nfact / rising;
}

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& g, double a, double b,
                      int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = g(a) + g(b);
  for (int i = 1; i < panels; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Pearson statistic by explicit double loop over an r x c table.
inline double chi_squared_brute(const std::vector<std::vector<double>>& table) {
  const std::size_t r = table.size();
  const std::size_t c = table[0].size();
  double n = 0.0;
  for (const auto& row : table) for (double v : row) n += v;
  double stat = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    double ri = 0.0;
    for (std::size_t j = 0; j < c; ++j) ri += table[i][j];
    for (std::size_t j = 0; j < c; ++j) {
      double cj = 0.0;
      for (std::size_t q = 0; q < r; ++q) cj += table[q][j];
      const double e = ri * cj / n;
      stat += (table[i][j] - e) * (table[i][j] - e) / e;
    }
  }
  return stat;
}

/// One-sample Kolmogorov-Smirnov statistic against Uniform(0, 1).
inline double ks_uniform_statistic(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - x[i], x[i] - lo});
  }
  return d;
}

/// Squared Euclidean distance.
inline double dist2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace dirprior::testing
