#include "qpart/quiver.hpp"

#include <numeric>

#include "qpart/billiard_genfun.hpp"
#include "qpart/errors.hpp"

namespace qpart {

int DimensionVector::total() const { return std::accumulate(d.begin(), d.end(), 0); }

SymmetricQuiver::SymmetricQuiver(AdjacencyMatrix C) : C_(std::move(C)) {
  if (C_.rows() != C_.cols() || C_.rows() == 0) throw InvalidArgument("quiver adjacency must be a nonempty square matrix");
  if (C_ != C_.transpose()) throw InvalidArgument("quiver adjacency must be symmetric");
  if ((C_.array() < 0).any()) throw InvalidArgument("quiver adjacency entries must be nonnegative");
}

SymmetricQuiver SymmetricQuiver::two_node() {
  AdjacencyMatrix C(2, 2);
  C << 2, 1, 1, 1;
  return SymmetricQuiver(std::move(C));
}

SymmetricQuiver SymmetricQuiver::from_json(const nlohmann::json& j) {
  const int m = j.at("nodes").get<int>();
  const auto& rows = j.at("adjacency");
  if (m < 1 || static_cast<int>(rows.size()) != m) throw InvalidArgument("quiver JSON: adjacency must have `nodes` rows");
  AdjacencyMatrix C(m, m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].size()) != m) throw InvalidArgument("quiver JSON: adjacency must be square");
    for (int k = 0; k < m; ++k) C(i, k) = rows[i][k].get<long long>();
  }
  return SymmetricQuiver(std::move(C));
}

nlohmann::json SymmetricQuiver::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < nodes(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < nodes(); ++k) row.push_back(C_(i, k));
    rows.push_back(std::move(row));
  }
  return {{"nodes", nodes()}, {"adjacency", std::move(rows)}};
}

long long SymmetricQuiver::exponent(const DimensionVector& dv) const {
  if (static_cast<int>(dv.d.size()) != nodes()) throw InvalidArgument("dimension vector length differs from node count");
  Eigen::Matrix<long long, Eigen::Dynamic, 1> v(nodes());
  for (int i = 0; i < nodes(); ++i) v(i) = dv.d[i];
  return v.dot(C_ * v);
}

std::vector<NodeWeight> prop2_weights() {
  return {{1, {5, 0, 1, 0}}, {-1, {3, 1, 1, 0}}};
}

namespace {

void dimension_walk(std::vector<int>& d, std::size_t node, int budget,
                    const std::function<void(const DimensionVector&)>& visit) {
  if (node == d.size()) {
    visit(DimensionVector{d});
    return;
  }
  for (int v = 0; v <= budget; ++v) {
    d[node] = v;
    dimension_walk(d, node + 1, budget - v, visit);
  }
  d[node] = 0;
}

struct Summand {
  int sign;
  Monomial prefactor;
};

// (-q)^E prod_i w_i^{d_i}
Summand summand_prefactor(const SymmetricQuiver& Q, const std::vector<NodeWeight>& weights, const DimensionVector& dv) {
  const long long E = Q.exponent(dv);
  int sign = E % 2 == 0 ? 1 : -1;
  Monomial m = Monomial::q(static_cast<int>(E));
  for (int i = 0; i < Q.nodes(); ++i) {
    for (int t = 0; t < dv.d[i]; ++t) m = m * weights[i].monomial;
    if (weights[i].sign < 0 && dv.d[i] % 2 != 0) sign = -sign;
  }
  return {sign, m};
}

void check_weights(const SymmetricQuiver& Q, const std::vector<NodeWeight>& weights) {
  if (static_cast<int>(weights.size()) != Q.nodes()) throw InvalidArgument("need one node weight per quiver node");
  for (const auto& w : weights) {
    if (w.sign != 1 && w.sign != -1) throw InvalidArgument("node weight sign must be +1 or -1");
  }
}

}  // namespace

void for_each_dimension_vector(int nodes, int max_total, const std::function<void(const DimensionVector&)>& visit) {
  std::vector<int> d(nodes, 0);
  dimension_walk(d, 0, max_total, visit);
}

MultiSeries quiver_series_unreduced(const SymmetricQuiver& Q, const std::vector<NodeWeight>& weights,
                                    const TruncationPolicy& policy) {
  if (!policy.x_cap) throw MissingCap("unreduced quiver series needs an x_cap on the total dimension");
  if (!policy.q_cap) throw MissingCap("unreduced quiver series needs a q_cap for the denominators");
  check_weights(Q, weights);
  const int q_cap = *policy.q_cap;
  MultiSeries out(policy);
  for_each_dimension_vector(Q.nodes(), *policy.x_cap, [&](const DimensionVector& dv) {
    const Summand pre = summand_prefactor(Q, weights, dv);
    const int room = q_cap - pre.prefactor.e_q;
    if (room < 0) return;
    MultiSeries denominators = MultiSeries::one();
    for (int di : dv.d) denominators *= inverse_q_pochhammer(2, di, room);
    for (const auto& [m, c] : denominators.terms()) out.add_term(m * pre.prefactor, pre.sign * c);
  });
  return out;
}

MultiSeries quiver_series_reduced(const SymmetricQuiver& Q, const std::vector<NodeWeight>& weights,
                                  const TruncationPolicy& policy) {
  if (!policy.x_cap) throw MissingCap("reduced quiver series needs an x_cap on the total dimension");
  check_weights(Q, weights);
  MultiSeries out(policy);
  for_each_dimension_vector(Q.nodes(), *policy.x_cap, [&](const DimensionVector& dv) {
    const Summand pre = summand_prefactor(Q, weights, dv);
    // (q^2;q^2)_{sum d} / prod (q^2;q^2)_{d_i} as a product of Gaussian binomials.
    MultiSeries multinomial = MultiSeries::one();
    int running = 0;
    for (int di : dv.d) {
      running += di;
      multinomial *= gaussian_binomial(running, di, 2);
    }
    for (const auto& [m, c] : multinomial.terms()) out.add_term(m * pre.prefactor, pre.sign * c);
  });
  return out;
}

MultiSeries basal_even_stratified(int x_cap) {
  if (x_cap < 0) throw InvalidArgument("basal_even_stratified: x_cap must be nonnegative");
  MultiSeries out(TruncationPolicy::x(x_cap));
  for (int n = 1; n <= x_cap + 1; ++n) {
    for (int d = n; d <= 2 * n - 1; ++d) {
      const Monomial m{2 * n * n - 2 * d * n - n + d * d + 2 * d, 2 * n - d - 1, n - 1, 0};
      out += MultiSeries::term(m) * gaussian_binomial(n - 1, 2 * n - d - 1, 2);
    }
  }
  return out;
}

MultiSeries basal_even_stratified_ij(int x_cap) {
  if (x_cap < 0) throw InvalidArgument("basal_even_stratified_ij: x_cap must be nonnegative");
  MultiSeries out(TruncationPolicy::x(x_cap));
  for (int i = 0; i <= x_cap; ++i) {
    for (int j = 0; i + j <= x_cap; ++j) {
      const Monomial m{2 + i * i + 2 * i * j + 2 * j * j + 3 * i + 5 * j, i, i + j, 0};
      out += MultiSeries::term(m) * gaussian_binomial(i + j, i, 2);
    }
  }
  return out;
}

MultiSeries basal_even_enumerated(int x_cap) {
  if (x_cap < 0) throw InvalidArgument("basal_even_enumerated: x_cap must be nonnegative");
  MultiSeries out(TruncationPolicy::x(x_cap));
  for (int n = 1; n <= x_cap + 1; ++n) {
    for (int d = n; d <= 2 * n - 1; ++d) {
      // s_brute tracks the weight in x; move it to a and stratify by n.
      const MultiSeries s = s_brute(d, 2 * n);
      for (const auto& [m, c] : s.terms()) out.add_term({m.e_q, m.e_x, n - 1, 0}, c);
    }
  }
  return out;
}

CheckReport verify_prop2(int x_cap) {
  if (x_cap < 0) throw InvalidArgument("verify_prop2: x_cap must be nonnegative");
  CheckReport rep{"prop2"};
  rep.detail = {{"x_cap", x_cap}, {"quiver", SymmetricQuiver::two_node().to_json()}, {"substitution", "x1=q^5x, x2=-aq^3x"}};
  const MultiSeries stratified = basal_even_stratified(x_cap);
  if (auto mm = first_mismatch(stratified, basal_even_stratified_ij(x_cap))) {
    rep.ok = false;
    rep.summary = "(n,d) and (i,j) forms of the stratified series differ";
    rep.counterexample = to_json(*mm);
    return rep;
  }
  const MultiSeries quiver =
      MultiSeries::term(Monomial::q(2)) *
      quiver_series_reduced(SymmetricQuiver::two_node(), prop2_weights(), TruncationPolicy::x(x_cap));
  auto mm = first_mismatch(stratified, quiver);
  rep.ok = !mm;
  if (mm) rep.counterexample = to_json(*mm);
  rep.summary = rep.ok ? "stratified even basal series = q^2 P_Q through x^" + std::to_string(x_cap)
                       : "stratified even basal series differs from q^2 P_Q";
  return rep;
}

CheckReport verify_stratified_vs_enumeration(int x_cap) {
  if (x_cap < 0) throw InvalidArgument("verify_stratified_vs_enumeration: x_cap must be nonnegative");
  CheckReport rep{"stratified-enumeration"};
  rep.detail = {{"x_cap", x_cap}};
  auto mm = first_mismatch(basal_even_stratified(x_cap), basal_even_enumerated(x_cap));
  rep.ok = !mm;
  if (mm) rep.counterexample = to_json(*mm);
  rep.summary = rep.ok ? "every x-slice matches enumerated basal partitions" : "x-slice differs from enumeration";
  return rep;
}

}  // namespace qpart
