#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dirprior {

/// Default tolerance for subsimplex membership, applied to both the
/// simplex sum and the box constraints.
inline constexpr double kMembershipTolerance = 1e-9;

/// Equal-edge subsimplex {p : sum p = 1, l <= p <= u} of the probability
/// simplex S_k, where u_i = 1 - sum_{j != i} l_j. Only constructible from
/// validated lower bounds.
class SubSimplex {
 public:
  std::size_t k() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  /// Sum of the lower bounds.
  double lower_sum() const noexcept { return lower_sum_; }
  /// Common length sqrt(2) (1 - L) of every edge.
  double edge_length() const noexcept;

  /// Vertex i is l with coordinate i replaced by u_i.
  std::vector<double> vertex(std::size_t i) const;
  std::vector<std::vector<double>> vertices() const;
  /// Coordinate-wise l_i + (1 - L) / k.
  std::vector<double> centroid() const;
  /// Relative (k-1)-volume within S_k, (1 - L)^(k-1); equals the content
  /// under the uniform Dirichlet.
  double uniform_content() const;

  bool contains(std::span<const double> p,
                double tol = kMembershipTolerance) const;

  friend SubSimplex from_lower_bounds(std::span<const double> lower);

 private:
  explicit SubSimplex(std::vector<double> lower);

  std::vector<double> lower_;
  std::vector<double> upper_;
  double lower_sum_ = 0.0;
};

/// Region implied by lower bounds alone. Throws DegenerateRegion when the
/// bounds sum to exactly 1 and InvalidBounds ("ineq1" or "range") otherwise.
SubSimplex from_lower_bounds(std::span<const double> lower);

/// Region implied by an upper bound on every coordinate. Requires
/// 1 < U <= k ("ineq2") and u_i >= (U - 1)/(k - 1) ("ineq3").
SubSimplex lower_from_upper(std::span<const double> upper);

/// Region implied by lower bounds on the first m coordinates and upper
/// bounds on the remaining k - m, 1 <= m <= k - 2. With m = k - 1 the last
/// upper bound is forced, so ForcedUpperBound is thrown and the caller must
/// supply a lower bound for p_k instead.
SubSimplex lower_from_mixed(std::span<const double> lower_head,
                            std::span<const double> upper_tail);

/// Lower bounds l_ij = a_i b_j for an r x c table (row-major), from lower
/// bounds on the row and column margins.
std::vector<double> independence_bounds(std::span<const double> row_lower,
                                        std::span<const double> col_lower);

enum class BoundKind { Lower, Upper };

struct Bound {
  BoundKind kind = BoundKind::Lower;
  double value = 0.0;

  friend bool operator==(const Bound&, const Bound&) = default;
};

/// One lower or upper bound per coordinate, in the user's order. Mixed
/// input is relabelled internally so lower-bounded coordinates come first;
/// results and errors are reported in the original order.
class BoundSpec {
 public:
  explicit BoundSpec(std::vector<Bound> entries);

  std::size_t k() const noexcept { return entries_.size(); }
  const std::vector<Bound>& entries() const noexcept { return entries_; }
  /// Number of lower-bounded coordinates.
  std::size_t lower_count() const noexcept { return lower_count_; }
  /// permutation()[original] = canonical position.
  const std::vector<std::size_t>& permutation() const noexcept {
    return permutation_;
  }

  SubSimplex resolve() const;

  friend bool operator==(const BoundSpec& a, const BoundSpec& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Bound> entries_;
  std::vector<std::size_t> permutation_;
  std::size_t lower_count_ = 0;
};

}  // namespace dirprior
