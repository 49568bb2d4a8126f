#include "dirprior/special_functions.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "dirprior/error.hpp"

namespace dirprior {
namespace {

constexpr int kMaxFractionTerms = 10000;
constexpr double kFractionEps = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a,b) / (x^a (1-x)^b / (a B(a,b))).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxFractionTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kFractionEps) return h;
  }
  throw Error(ErrorCode::NoConvergence,
              "incomplete beta continued fraction did not converge");
}

}  // namespace

double log_multivariate_beta(std::span<const double> a) {
  double sum = 0.0;
  double log_terms = 0.0;
  for (double v : a) {
    sum += v;
    log_terms += std::lgamma(v);
  }
  return log_terms - std::lgamma(sum);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidParams,
                "incomplete beta requires positive shape parameters");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "incomplete beta requires x in [0,1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  // x^a (1-x)^b / B(a,b); the lgamma route loses digits for large shapes.
  const double front = boost::math::ibeta_derivative(a, b, x) * x * (1.0 - x);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double beta_density(double a, double b, double x) {
  if (x < 0.0 || x > 1.0) return 0.0;
  if ((x == 0.0 && a > 1.0) || (x == 1.0 && b > 1.0)) return 0.0;
  if ((x == 0.0 && a < 1.0) || (x == 1.0 && b < 1.0)) {
    return std::numeric_limits<double>::infinity();
  }
  const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  const double lx = (a == 1.0) ? 0.0 : (a - 1.0) * std::log(x);
  const double l1x = (b == 1.0) ? 0.0 : (b - 1.0) * std::log1p(-x);
  return std::exp(log_norm + lx + l1x);
}

double chi_squared_survival(double statistic, double degrees_of_freedom) {
  if (!(degrees_of_freedom > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "chi-square needs positive df");
  }
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(degrees_of_freedom / 2.0, statistic / 2.0);
}

}  // namespace dirprior
