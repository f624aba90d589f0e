#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "qpart/report.hpp"
#include "qpart/series.hpp"

namespace qpart {

using AdjacencyMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

struct DimensionVector {
  std::vector<int> d;
  int total() const;
};

class SymmetricQuiver {
 public:
  // Throws InvalidArgument unless C is square, symmetric and nonnegative.
  explicit SymmetricQuiver(AdjacencyMatrix C);

  // C = [[2,1],[1,1]]: the quiver matching the even basal series.
  static SymmetricQuiver two_node();
  static SymmetricQuiver from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int nodes() const { return static_cast<int>(C_.rows()); }
  const AdjacencyMatrix& adjacency() const { return C_; }
  // sum_{i,j} C_ij d_i d_j
  long long exponent(const DimensionVector& dv) const;

 private:
  AdjacencyMatrix C_;
};

// Value substituted for one node variable: sign * monomial.
struct NodeWeight {
  int sign = 1;
  Monomial monomial;
};

// x_1 = q^5 x, x_2 = -a q^3 x
std::vector<NodeWeight> prop2_weights();

// Calls visit for every dimension vector with total at most max_total,
// in lexicographic order.
void for_each_dimension_vector(int nodes, int max_total, const std::function<void(const DimensionVector&)>& visit);

// sum_d (-q)^{d^T C d} prod_i w_i^{d_i} / (q^2;q^2)_{d_i}, over dimension
// vectors with total <= policy.x_cap, denominators expanded to policy.q_cap.
// MissingCap without both caps.
MultiSeries quiver_series_unreduced(const SymmetricQuiver& Q, const std::vector<NodeWeight>& weights,
                                    const TruncationPolicy& policy);

// Same with numerator (q^2;q^2)_{total}: each summand is a q-multinomial, so
// no q_cap is needed. MissingCap without x_cap.
MultiSeries quiver_series_reduced(const SymmetricQuiver& Q, const std::vector<NodeWeight>& weights,
                                  const TruncationPolicy& policy);

// Even basal billiard series stratified by x^{n-1} (largest part 2n) and a
// (weight), without the leading 1, summed directly over (n, d).
MultiSeries basal_even_stratified(int x_cap);
// The same via i = 2n-d-1, j = d-n: q^2 sum x^{i+j} a^i q^{i^2+2ij+2j^2+3i+5j} [i+j choose i]_{q^2}.
MultiSeries basal_even_stratified_ij(int x_cap);
// Same slices built from enumerated basal partitions.
MultiSeries basal_even_enumerated(int x_cap);

// stratified - q^2 P_Q(q^5 x, -a q^3 x) through x^{x_cap}.
CheckReport verify_prop2(int x_cap);
CheckReport verify_stratified_vs_enumeration(int x_cap);

}  // namespace qpart
