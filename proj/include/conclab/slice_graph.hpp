#pragma once

// The slice G_{n,k} of the discrete cube: all k-subsets of {1..n}, with
// neighbors differing by one swap, under the uniform measure.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "conclab/rng.hpp"

namespace conclab::slice {

/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k) noexcept;

class SliceGraph {
 public:
  static constexpr std::uint64_t kDefaultBudget = 2'000'000;
  static constexpr std::uint64_t kDefaultEigenBudget = 4096;

  /// Requires 1 <= k <= n-1.
  SliceGraph(int n, int k, std::uint64_t budget = kDefaultBudget,
             std::uint64_t eigen_budget = kDefaultEigenBudget);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int degree() const noexcept { return k_ * (n_ - k_); }
  std::uint64_t vertex_count() const noexcept { return vertex_count_; }
  std::uint64_t budget() const noexcept { return budget_; }
  std::uint64_t eigen_budget() const noexcept { return eigen_budget_; }

  /// Throws BudgetError when C(n,k) exceeds the enumeration budget.
  void require_enumerable() const;

  friend bool operator==(const SliceGraph& a, const SliceGraph& b) noexcept {
    return a.n_ == b.n_ && a.k_ == b.k_;
  }

 private:
  int n_;
  int k_;
  std::uint64_t vertex_count_;
  std::uint64_t budget_;
  std::uint64_t eigen_budget_;
};

/// A k-subset tau = {i_1 < ... < i_k} of {1..n}, 1-based like the sets it
/// models. Keeps a bit mask alongside the indices when n <= 64.
class SubsetVertex {
 public:
  SubsetVertex(int n, std::vector<int> indices);

  int n() const noexcept { return n_; }
  int k() const noexcept { return static_cast<int>(indices_.size()); }
  std::span<const int> indices() const noexcept { return indices_; }
  std::optional<std::uint64_t> mask() const noexcept { return mask_; }
  bool contains(int i) const noexcept;

  friend bool operator==(const SubsetVertex& a, const SubsetVertex& b) noexcept {
    return a.n_ == b.n_ && a.indices_ == b.indices_;
  }
  friend bool operator<(const SubsetVertex& a, const SubsetVertex& b) noexcept {
    return a.indices_ < b.indices_;
  }

 private:
  int n_;
  std::vector<int> indices_;
  std::optional<std::uint64_t> mask_;
};

/// Real function on the vertices, indexed by lexicographic vertex rank.
class GraphFunction {
 public:
  GraphFunction(const SliceGraph& g, std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }

 private:
  int n_;
  int k_;
  std::vector<double> values_;
};

/// Dense lexicographic enumeration of a slice with O(k) ranking; shared by
/// all whole-graph operations.
class SliceIndex {
 public:
  explicit SliceIndex(const SliceGraph& g);

  const SliceGraph& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return count_; }

  /// Indices of vertex `v` (1-based members, ascending).
  std::span<const int> members(std::size_t v) const noexcept {
    return {members_.data() + v * static_cast<std::size_t>(graph_.k()),
            static_cast<std::size_t>(graph_.k())};
  }

  SubsetVertex vertex(std::size_t v) const;

  /// Lexicographic rank of a sorted 1-based index set.
  std::size_t rank(std::span<const int> sorted_members) const noexcept;

  /// Ranks of all k(n-k) neighbors of `v` (swap order: member i ascending,
  /// then non-member j ascending). Served from a precomputed table when it
  /// fits in kTableLimit entries; otherwise computed into `scratch`.
  std::span<const std::uint32_t> neighbors(std::size_t v,
                                           std::vector<std::uint32_t>& scratch) const;

  static constexpr std::size_t kTableLimit = std::size_t{1} << 24;

 private:
  void compute_neighbors(std::size_t v, std::uint32_t* out) const;

  SliceGraph graph_;
  std::size_t count_;
  std::vector<int> members_;
  std::vector<std::uint64_t> binom_;  // (n+1) x (k+2) table
  std::vector<std::uint32_t> adjacency_;  // empty when above kTableLimit
};

std::vector<SubsetVertex> enumerate_vertices(const SliceGraph& g);

/// All vertices at distance one, lexicographically sorted.
std::vector<SubsetVertex> neighbors(const SliceGraph& g, const SubsetVertex& x);

/// Half the Hamming distance between the indicator vectors.
int slice_distance(const SubsetVertex& x, const SubsetVertex& y);

/// |grad f(x)|^2 = sum over neighbors y of (f(x) - f(y))^2.
double gradient_sq_norm(const SliceGraph& g, const GraphFunction& f, const SubsetVertex& x);
double gradient_sq_norm(const SliceIndex& index, std::span<const double> f, std::size_t v);

struct MeanVariance {
  double mean;
  double variance;
};

MeanVariance mean_variance(const SliceGraph& g, const GraphFunction& f);
MeanVariance mean_variance(std::span<const double> f);

/// E(f, h) = integral of sum_{y ~ x} (f(x)-f(y))(h(x)-h(y)) dmu(x).
double dirichlet_form(const SliceGraph& g, const GraphFunction& f, const GraphFunction& h);
double dirichlet_form(const SliceIndex& index, std::span<const double> f,
                      std::span<const double> h);

/// Same quantity as dirichlet_form(f, f), accumulated as the mu-average of
/// per-vertex gradient norms.
double dirichlet_energy_by_gradients(const SliceIndex& index, std::span<const double> f);

/// Ent(h) = E h log h - E h log E h, with 0 log 0 = 0. Requires h >= 0.
double entropy(const SliceGraph& g, const GraphFunction& h);
double entropy(std::span<const double> h);

/// (1/2n) E(f,f) - Var(f); nonnegative by the spectral-gap inequality.
double check_poincare(const SliceGraph& g, const GraphFunction& f);
double check_poincare(const SliceIndex& index, std::span<const double> f);

struct MlsiSlack {
  double left;   // E(e^f, f) - (n+2) Ent(e^f)
  double right;  // int |grad f|^2 e^f dmu - E(e^f, f)
};

/// Both sides of the modified log-Sobolev inequality. Throws RangeError when
/// max f - min f > 500 or max f > 700.
MlsiSlack check_mlsi(const SliceGraph& g, const GraphFunction& f);
MlsiSlack check_mlsi(const SliceIndex& index, std::span<const double> f);

/// Smallest nonzero value of E(f,f)/Var(f). Dense symmetric eigen-solve for
/// small graphs, distance-partition quotient above kDenseLimit vertices.
double spectral_gap(const SliceGraph& g);
double spectral_gap_dense(const SliceGraph& g);
double spectral_gap_quotient(const SliceGraph& g);
inline constexpr std::uint64_t kDenseLimit = 256;

struct DeviationResult {
  double probability;          // mu{|f - E f| >= h}
  double sigma;                // max_x |grad f(x)|
  std::optional<double> bound;  // 2 exp(-(n+2) h^2 / (4 sigma^2)); empty when sigma = 0
};

DeviationResult deviation_probability(const SliceGraph& g, const GraphFunction& f, double h);
DeviationResult deviation_probability(const SliceIndex& index, std::span<const double> f,
                                      double h);

/// Uniform draw from mu by partial Fisher-Yates selection.
SubsetVertex sample_vertex(const SliceGraph& g, Stream& rng);

}  // namespace conclab::slice
