#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpart/report.hpp"
#include "qpart/series.hpp"

namespace qpart {

enum class Step { Right, Up, Diagonal };

// Lattice path from (0,0) to (n,n) staying weakly below y = x.
class SchroederPath {
 public:
  SchroederPath() = default;
  // Throws InvalidArgument if the steps rise above the diagonal or do not end
  // on it.
  explicit SchroederPath(std::vector<Step> steps);
  // "RDRUU"
  static SchroederPath parse(std::string_view text);

  const std::vector<Step>& steps() const { return steps_; }
  int n() const { return n_; }
  int diagonals() const { return diagonals_; }
  // Twice the area between path and diagonal: a Right step leaving height
  // gap g adds 2g+1, a Diagonal step adds 2g.
  int twice_area() const { return twice_area_; }
  std::string to_string() const;

  friend bool operator==(const SchroederPath& l, const SchroederPath& r) { return l.steps_ == r.steps_; }

 private:
  std::vector<Step> steps_;
  int n_ = 0;
  int diagonals_ = 0;
  int twice_area_ = 0;
};

// Every path to (n,n), depth first with Right < Up < Diagonal.
std::vector<SchroederPath> enumerate_paths(int n);

// a^D q^{2A} x^n
Monomial path_weight(const SchroederPath& p);

// 1 + sum over paths with n <= n_cap of path_weight.
MultiSeries schroeder_series(int n_cap);

// Large Schroeder numbers by S(n) = S(n-1) + sum_k S(k) S(n-1-k).
std::vector<BigInt> large_schroeder_numbers(int n_max);

// Monomial factor F with lhs = F * rhs, F = c * m.
struct MonomialFactor {
  BigInt coeff;
  Monomial monomial;  // may carry negative exponents
};

std::string to_string(const MonomialFactor& f);
MultiSeries scale(const MultiSeries& s, const MonomialFactor& f);

// F from the lowest x-slice where both sides are nonzero. Throws
// InconsistentFactor if that ratio is not a monomial with integer coefficient.
MonomialFactor leading_factor(const MultiSeries& lhs, const MultiSeries& rhs);

// How the node variables are specialised in the two-node quiver series.
enum class QuotientConvention {
  SignedFirstNode,  // x1 = -x, x2 = a x
  Literal,          // x1 = x,  x2 = a x
};

const char* to_string(QuotientConvention c);

// P(x1 q, x2 q) / P(x1 q^-1, x2 q^-1) for the [[2,1],[1,1]] quiver through x^n_cap,
// every coefficient exact up to q^q_cap.
MultiSeries schroeder_quotient(int n_cap, int q_cap, QuotientConvention convention);

// Smallest q_cap that covers every path weight through n_cap.
int schroeder_q_window(int n_cap);

// Compares the quotient with F * schroeder_series inside the q-window
// [0, n^2] of each slice, reruns with q_cap + guard to check stability, and
// looks for leakage beyond the window. Default q_cap is window + 2 n_cap.
CheckReport verify_schroeder_quotient(int n_cap, std::optional<int> q_cap = std::nullopt,
                                      QuotientConvention convention = QuotientConvention::SignedFirstNode);

}  // namespace qpart
