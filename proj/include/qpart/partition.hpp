#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpart/report.hpp"
#include "qpart/series.hpp"

namespace qpart {

// Integer partition, parts stored non-increasing. Billiard and type-B work uses
// strict partitions only; type-A classes may repeat parts.
class Partition {
 public:
  Partition() = default;
  // Throws InvalidArgument unless the parts are positive and non-increasing.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  static Partition from_increasing(std::vector<int> parts);

  std::span<const int> parts() const { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }
  int num_parts() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }
  int smallest() const { return parts_.empty() ? 0 : parts_.back(); }
  int size() const;
  int odd_parts() const;
  bool is_strict() const;

  // "13+2"
  std::string to_string() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

// ---------------------------------------------------------------------------
// Euclidean billiard partitions: distinct parts, smallest part even (E1),
// adjacent parts never both odd (E2).

bool is_member_D(const Partition& p);

// Basal: smallest part 2, no adjacent odd pair, adjacent differences <= 2.
bool is_basal_D(const Partition& p);

// Exponent of the weight 2^e: d-1-2s when the largest part is even, d-2s when
// it is odd, s the number of odd parts. Throws NotInClass outside D.
int weight_exponent(const Partition& p);

// All members of D of each size 1..n_cap, decreasing lexicographic per size.
std::map<int, std::vector<Partition>> enumerate_D(int n_cap);

// 1 + sum over D of x^{weight_exponent} q^{|p|}, truncated at q^{q_cap}.
MultiSeries weighted_series_D(int q_cap);

// ---------------------------------------------------------------------------
// Residue classes mod k. Residues are numbered 1..k (k itself for multiples
// of k); c_r >= 1 with c_r = r (mod k), d_r >= 0.

class ResidueSpec {
 public:
  ResidueSpec(int k, std::vector<int> c, std::vector<int> d);

  int k() const { return k_; }
  std::span<const int> c() const { return c_; }
  std::span<const int> d() const { return d_; }
  int residue(int part) const;
  int min_part(int r) const { return c_[r - 1]; }
  int gap(int r) const { return d_[r - 1]; }
  bool odd_like(int r) const { return d_[r - 1] == 0; }
  // Number of odd-like residues.
  int ell() const;

  friend bool operator==(const ResidueSpec&, const ResidueSpec&) = default;

 private:
  int k_;
  std::vector<int> c_;
  std::vector<int> d_;
};

struct SipClassA : ResidueSpec {
  using ResidueSpec::ResidueSpec;
  // Goellnitz-Gordon: c = (1,2), d = (2,3).
  static SipClassA goellnitz_gordon() { return {2, {1, 2}, {2, 3}}; }
};

struct SipClassB : ResidueSpec {
  using ResidueSpec::ResidueSpec;
  static SipClassB billiard() { return {2, {1, 2}, {0, 1}}; }
  static SipClassB p32() { return {3, {1, 2, 3}, {0, 0, 1}}; }
  static SipClassB p31() { return {3, {1, 2, 3}, {0, 1, 1}}; }
  // c_r = r, the first ell residues odd-like, the rest with d_r = 1.
  static SipClassB lucas(int k, int ell);
};

class SmallestPartMode {
 public:
  static SmallestPartMode unrestricted() { return SmallestPartMode(std::nullopt); }
  static SmallestPartMode fixed(int v) { return SmallestPartMode(v); }

  bool is_fixed() const { return value_.has_value(); }
  int value() const { return *value_; }
  // Throws InvalidArgument if a fixed value is not one of c_1..c_k.
  void validate(const ResidueSpec& cls) const;
  std::string to_string() const;

 private:
  explicit SmallestPartMode(std::optional<int> v) : value_(v) {}
  std::optional<int> value_;
};

struct LucasParams {
  std::int64_t T;
  std::int64_t R;
  std::int64_t f1;
  std::int64_t f2;
};

// Literal conditions: p_i >= c_r and p_i - p_{i-1} >= max{1, d_r}, r the
// residue of the larger part.
bool satisfies_typeB_conditions(const Partition& p, const SipClassB& cls);

// The literal conditions plus: no two adjacent parts share an odd-like
// residue. This is exactly the set of basal + residual sums when c_r = r.
bool is_member_typeB(const Partition& p, const SipClassB& cls);

// b_1 = c_r and max{d_r,1} <= b_i - b_{i-1} < d_r + k, b_i >= c_r.
bool is_basal_typeB(const Partition& p, const SipClassB& cls);

bool is_member_typeA(const Partition& p, const SipClassA& cls);
// b_1 = c_r and d_r <= b_i - b_{i-1} < d_r + k. Repeated parts allowed.
bool is_basal_typeA(const Partition& p, const SipClassA& cls);

// Possible next parts above b in a basal partition, ascending.
std::vector<int> basal_successors(const SipClassB& cls, int b);

// Visit every basal partition with d parts; parts are passed smallest first.
void for_each_basal(const SipClassB& cls, int d, const SmallestPartMode& mode,
                    const std::function<void(std::span<const int>)>& visit);
// Same, skipping every partition whose largest part exceeds max_part.
void for_each_basal(const SipClassB& cls, int d, const SmallestPartMode& mode, int max_part,
                    const std::function<void(std::span<const int>)>& visit);

// Decreasing lexicographic order.
std::vector<Partition> enumerate_basis(const SipClassB& cls, int d, const SmallestPartMode& mode);

std::uint64_t count_basis(const SipClassB& cls, int d, const SmallestPartMode& mode);

struct RefinedCount {
  std::uint64_t odd_like_top = 0;  // a_d: largest part has an odd-like residue
  std::uint64_t rest = 0;          // b_d
  std::uint64_t total() const { return odd_like_top + rest; }
  friend bool operator==(const RefinedCount&, const RefinedCount&) = default;
};

RefinedCount count_basis_refined(const SipClassB& cls, int d, const SmallestPartMode& mode);

// T = k-1, R = ell-k and the initial values for the given mode. Throws
// HypothesisViolated unless every d_j is 0 or 1.
LucasParams lucas_params(const SipClassB& cls, const SmallestPartMode& mode);

struct LucasReport {
  LucasParams params{};
  std::vector<std::uint64_t> f;  // f[0] = f_1
  std::vector<RefinedCount> refined;
  bool initial_ok = false;
  bool recursion_ok = false;
  bool refined_ok = false;  // the (a_d, b_d) system
  std::optional<int> first_failure;
  bool ok() const { return initial_ok && recursion_ok && refined_ok; }
};

LucasReport verify_lucas(const SipClassB& cls, int d_max, const SmallestPartMode& mode);

// Every member of the class with size n_cap or less, decreasing lexicographic
// per size. Uses is_member_typeB.
std::map<int, std::vector<Partition>> enumerate_typeB(const SipClassB& cls, int n_cap);

struct Decomposition {
  Partition basal;
  // Multiples of k, non-decreasing, residual[0] belongs to the smallest part.
  std::vector<int> residual;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

// Unique basal + residual split. NotInClass for non-members; DecompositionFailed
// when the construction breaks down (possible only for classes with c_r > r).
Decomposition decompose(const Partition& p, const SipClassB& cls);

// Part-wise sum; ShapeMismatch on length mismatch or malformed residual,
// NotInClass if the result is not a member.
Partition recompose(const Partition& basal, std::span<const int> residual, const SipClassB& cls);

// Every basal + residual split of p, found by trying all basal partitions
// with the same number of parts. Slow; meant as a uniqueness oracle.
std::vector<Decomposition> all_decompositions(const Partition& p, const SipClassB& cls);

// Members of D with |p| <= n_cap: decompose / recompose round-trip and
// uniqueness against all_decompositions; weight_exponent preserved by the
// basal part for |p| <= weight_cap.
CheckReport verify_decomposition(int n_cap, int weight_cap);

// Billiard counts against Fibonacci, P32 and P31 in every smallest-part mode,
// and the (k, l) classes with k <= 4, all through d_max.
CheckReport verify_lucas_suite(int d_max);

}  // namespace qpart
