#include "dirprior/bounds.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "dirprior/error.hpp"

namespace dirprior {
namespace {

// Lower bounds recovered from upper bounds can land a few ulps below zero
// when an inequality holds with equality.
constexpr double kClampSlack = 1e-12;

double clamp_to_zero(double v) { return (v < 0.0 && v > -kClampSlack) ? 0.0 : v; }

void check_unit_range(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      std::ostringstream msg;
      msg << what << " bound " << (i + 1) << " = " << v << " lies outside [0,1]";
      throw Error(ErrorCode::InvalidBounds, msg.str(), "range", i);
    }
  }
}

double sum(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

SubSimplex::SubSimplex(std::vector<double> lower)
    : lower_(std::move(lower)), upper_(lower_.size()), lower_sum_(sum(lower_)) {
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    double others = 0.0;
    for (std::size_t j = 0; j < lower_.size(); ++j) {
      if (j != i) others += lower_[j];
    }
    upper_[i] = 1.0 - others;
  }
}

double SubSimplex::edge_length() const noexcept {
  return std::sqrt(2.0) * (1.0 - lower_sum_);
}

std::vector<double> SubSimplex::vertex(std::size_t i) const {
  if (i >= k()) {
    throw Error(ErrorCode::DimensionMismatch, "vertex index out of range");
  }
  std::vector<double> v = lower_;
  v[i] = upper_[i];
  return v;
}

std::vector<std::vector<double>> SubSimplex::vertices() const {
  std::vector<std::vector<double>> out;
  out.reserve(k());
  for (std::size_t i = 0; i < k(); ++i) out.push_back(vertex(i));
  return out;
}

std::vector<double> SubSimplex::centroid() const {
  const double share = (1.0 - lower_sum_) / static_cast<double>(k());
  std::vector<double> c(k());
  for (std::size_t i = 0; i < k(); ++i) c[i] = lower_[i] + share;
  return c;
}

double SubSimplex::uniform_content() const {
  return std::pow(1.0 - lower_sum_, static_cast<double>(k() - 1));
}

bool SubSimplex::contains(std::span<const double> p, double tol) const {
  if (p.size() != k()) {
    throw Error(ErrorCode::DimensionMismatch,
                "point has " + std::to_string(p.size()) +
                    " coordinates, region has " + std::to_string(k()));
  }
  if (std::abs(sum(p) - 1.0) > tol) return false;
  for (std::size_t i = 0; i < k(); ++i) {
    if (p[i] < lower_[i] - tol || p[i] > upper_[i] + tol) return false;
  }
  return true;
}

SubSimplex from_lower_bounds(std::span<const double> lower) {
  if (lower.size() < 2) {
    throw Error(ErrorCode::InvalidBounds, "need at least 2 categories", "range");
  }
  check_unit_range(lower, "lower");
  const double total = sum(lower);
  if (total == 1.0) {
    throw Error(ErrorCode::DegenerateRegion,
                "lower bounds sum to 1, so the probabilities are completely "
                "determined",
                "ineq1");
  }
  if (total > 1.0) {
    std::ostringstream msg;
    msg << "lower bounds sum to " << total << ", must be < 1";
    throw Error(ErrorCode::InvalidBounds, msg.str(), "ineq1");
  }
  return SubSimplex(std::vector<double>(lower.begin(), lower.end()));
}

SubSimplex lower_from_upper(std::span<const double> upper) {
  const std::size_t k = upper.size();
  if (k < 2) {
    throw Error(ErrorCode::InvalidBounds, "need at least 2 categories", "range");
  }
  check_unit_range(upper, "upper");
  const double total = sum(upper);
  if (!(total > 1.0) || total > static_cast<double>(k)) {
    std::ostringstream msg;
    msg << "upper bounds sum to " << total << ", must satisfy 1 < U <= " << k;
    throw Error(ErrorCode::InvalidBounds, msg.str(), "ineq2");
  }
  const double km1 = static_cast<double>(k - 1);
  const double threshold = (total - 1.0) / km1;
  std::vector<double> lower(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (upper[i] < threshold) {
      std::ostringstream msg;
      msg << "upper bound " << (i + 1) << " = " << upper[i]
          << " is below (U - 1)/(k - 1) = " << threshold;
      throw Error(ErrorCode::InvalidBounds, msg.str(), "ineq3", i);
    }
    lower[i] = clamp_to_zero(upper[i] + (1.0 - total) / km1);
  }
  return from_lower_bounds(lower);
}

SubSimplex lower_from_mixed(std::span<const double> lower_head,
                            std::span<const double> upper_tail) {
  const std::size_t m = lower_head.size();
  const std::size_t tail = upper_tail.size();
  const std::size_t k = m + tail;
  if (m < 1 || k < 2) {
    throw Error(ErrorCode::InvalidBounds,
                "mixed bounds need at least one lower and one upper bound",
                "range");
  }
  if (tail == 1) {
    throw Error(ErrorCode::ForcedUpperBound,
                "with k - m = 1 the last upper bound is forced to "
                "1 - l_1 - ... - l_{k-1}; supply a lower bound for it instead",
                "", k - 1);
  }
  check_unit_range(lower_head, "lower");
  try {
    check_unit_range(upper_tail, "upper");
  } catch (const Error& e) {
    throw e.with_index(m + *e.index());
  }

  const double head_sum = sum(lower_head);
  if (!(head_sum < 1.0)) {
    std::ostringstream msg;
    msg << "lower bounds sum to " << head_sum << ", must be < 1";
    throw Error(ErrorCode::InvalidBounds, msg.str(), "ineq1");
  }
  const double slack = 1.0 - head_sum;
  const double tail_sum = sum(upper_tail);
  const double tail_dim = static_cast<double>(tail);
  if (!(tail_sum > slack) || tail_sum > tail_dim * slack) {
    std::ostringstream msg;
    msg << "upper bounds sum to " << tail_sum << ", must satisfy " << slack
        << " < U <= " << tail_dim * slack;
    throw Error(ErrorCode::InvalidBounds, msg.str(), "ineq4");
  }
  const double threshold = (tail_sum - slack) / (tail_dim - 1.0);
  std::vector<double> lower(lower_head.begin(), lower_head.end());
  lower.resize(k);
  for (std::size_t i = 0; i < tail; ++i) {
    if (upper_tail[i] < threshold) {
      std::ostringstream msg;
      msg << "upper bound " << (m + i + 1) << " = " << upper_tail[i]
          << " is below " << threshold;
      throw Error(ErrorCode::InvalidBounds, msg.str(), "ineq5", m + i);
    }
    lower[m + i] =
        clamp_to_zero(upper_tail[i] + (slack - tail_sum) / (tail_dim - 1.0));
  }
  return from_lower_bounds(lower);
}

std::vector<double> independence_bounds(std::span<const double> row_lower,
                                        std::span<const double> col_lower) {
  // Each margin must itself be a valid set of lower bounds.
  (void)from_lower_bounds(row_lower);
  (void)from_lower_bounds(col_lower);
  std::vector<double> out;
  out.reserve(row_lower.size() * col_lower.size());
  for (double a : row_lower) {
    for (double b : col_lower) out.push_back(a * b);
  }
  return out;
}

BoundSpec::BoundSpec(std::vector<Bound> entries)
    : entries_(std::move(entries)), permutation_(entries_.size()) {
  if (entries_.size() < 2) {
    throw Error(ErrorCode::InvalidBounds, "need at least 2 categories", "range");
  }
  std::size_t next = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].kind == BoundKind::Lower) permutation_[i] = next++;
  }
  lower_count_ = next;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].kind == BoundKind::Upper) permutation_[i] = next++;
  }
}

SubSimplex BoundSpec::resolve() const {
  const std::size_t n = k();
  std::vector<double> canonical(n);
  std::vector<std::size_t> original_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    canonical[permutation_[i]] = entries_[i].value;
    original_of[permutation_[i]] = i;
  }
  auto remap = [&](const Error& e) {
    return e.index() ? e.with_index(original_of.at(*e.index())) : e;
  };

  try {
    if (lower_count_ == n) return from_lower_bounds(canonical);
    const std::span<const double> all(canonical);
    if (lower_count_ == 0) return lower_from_upper(all);
    const SubSimplex s =
        lower_from_mixed(all.first(lower_count_), all.subspan(lower_count_));
    std::vector<double> lower(n);
    for (std::size_t i = 0; i < n; ++i) lower[i] = s.lower()[permutation_[i]];
    return from_lower_bounds(lower);
  } catch (const Error& e) {
    throw remap(e);
  }
}

}  // namespace dirprior
