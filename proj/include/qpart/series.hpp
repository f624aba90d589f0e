#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include <json.hpp>

namespace qpart {

using BigInt = mpz_class;

// Formal variables. q carries Laurent exponents, the others are nonnegative.
enum class Var { q, a, x, z };

const char* to_string(Var v);

struct Monomial {
  int e_q = 0;
  int e_a = 0;
  int e_x = 0;
  int e_z = 0;

  static Monomial q(int e) { return {e, 0, 0, 0}; }
  static Monomial a(int e) { return {0, e, 0, 0}; }
  static Monomial x(int e) { return {0, 0, e, 0}; }
  static Monomial z(int e) { return {0, 0, 0, e}; }

  int exponent(Var v) const;
  int& exponent(Var v);
  bool is_one() const { return e_q == 0 && e_a == 0 && e_x == 0 && e_z == 0; }
  bool valid() const { return e_a >= 0 && e_x >= 0 && e_z >= 0; }

  friend Monomial operator*(Monomial l, const Monomial& r) {
    l.e_q += r.e_q;
    l.e_a += r.e_a;
    l.e_x += r.e_x;
    l.e_z += r.e_z;
    return l;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Canonical order (e_x, e_q, e_a, e_z); also the JSON serialization order.
struct MonomialOrder {
  bool operator()(const Monomial& l, const Monomial& r) const {
    return std::tie(l.e_x, l.e_q, l.e_a, l.e_z) < std::tie(r.e_x, r.e_q, r.e_a, r.e_z);
  }
};

std::string to_string(const Monomial& m);

// Caps are inclusive upper bounds on exponents. Products are exact below the
// caps as long as q-exponents are nonnegative; Laurent series should rely on
// x_cap only.
struct TruncationPolicy {
  std::optional<int> x_cap;
  std::optional<int> q_cap;
  std::optional<int> z_cap;

  static TruncationPolicy none() { return {}; }
  static TruncationPolicy x(int cap) { return {cap, std::nullopt, std::nullopt}; }
  static TruncationPolicy q(int cap) { return {std::nullopt, cap, std::nullopt}; }
  static TruncationPolicy z(int cap) { return {std::nullopt, std::nullopt, cap}; }

  bool admits(const Monomial& m) const;
  TruncationPolicy intersect(const TruncationPolicy& other) const;
  bool bounded() const { return x_cap || q_cap || z_cap; }

  friend bool operator==(const TruncationPolicy&, const TruncationPolicy&) = default;
};

// Sparse exact series in q, a, x, z with big-integer coefficients. Values are
// immutable once built: every operation returns a new series.
class MultiSeries {
 public:
  using TermMap = std::map<Monomial, BigInt, MonomialOrder>;

  MultiSeries() = default;
  explicit MultiSeries(TruncationPolicy policy) : policy_(policy) {}

  static MultiSeries constant(const BigInt& c, TruncationPolicy policy = {});
  static MultiSeries term(const Monomial& m, const BigInt& c = 1, TruncationPolicy policy = {});
  static MultiSeries one(TruncationPolicy policy = {}) { return constant(1, policy); }

  const TermMap& terms() const { return terms_; }
  const TruncationPolicy& policy() const { return policy_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Throws OutsideTruncation when m lies beyond a cap (its value is unknown).
  BigInt coefficient(const Monomial& m) const;

  // Accumulate c*m; silently dropped when beyond the caps.
  void add_term(const Monomial& m, const BigInt& c);

  // Terms whose v-exponent is e, with that exponent reset to 0.
  MultiSeries coefficient_of(Var v, int e) const;
  // Terms whose x-exponent is n, exponent kept.
  MultiSeries x_slice(int n) const;

  MultiSeries truncated(const TruncationPolicy& policy) const;
  MultiSeries with_policy(const TruncationPolicy& policy) const;

  std::optional<int> min_exponent(Var v) const;
  std::optional<int> max_exponent(Var v) const;
  bool has_negative_q() const;
  // Throws InvalidArgument when a negative q-exponent is present.
  void require_nonnegative_q(const char* where) const;

  MultiSeries operator-() const;
  MultiSeries& operator+=(const MultiSeries& rhs);
  MultiSeries& operator-=(const MultiSeries& rhs);
  MultiSeries& operator*=(const MultiSeries& rhs);

  friend MultiSeries operator+(MultiSeries l, const MultiSeries& r) { return l += r; }
  friend MultiSeries operator-(MultiSeries l, const MultiSeries& r) { return l -= r; }
  friend MultiSeries operator*(const MultiSeries& l, const MultiSeries& r);

  // Equality of terms; truncation policies are not compared.
  friend bool operator==(const MultiSeries& l, const MultiSeries& r) { return l.terms_ == r.terms_; }

 private:
  TermMap terms_;
  TruncationPolicy policy_;
};

MultiSeries add(const MultiSeries& s1, const MultiSeries& s2);
MultiSeries mul(const MultiSeries& s1, const MultiSeries& s2);

// x-adic inverse. The x^0 slice must be exactly +1 or -1 and an x_cap must be
// set (NonUnitConstantTerm, MissingCap otherwise).
MultiSeries invert(const MultiSeries& s);

// Replace var by sign * q^q_shift * var.
MultiSeries substitute_scale(const MultiSeries& s, Var var, int sign, int q_shift);

// Replace var by sign * replacement (replacement may include var itself).
MultiSeries substitute(const MultiSeries& s, Var var, int sign, const Monomial& replacement);

// Formal evaluation var -> 1: coefficients collapse onto the remaining exponents.
MultiSeries evaluate_at_one(const MultiSeries& s, Var var);

// prod_{i=1}^{n} (1 - q^{step*i}); 1 when n = 0.
MultiSeries q_pochhammer(int step, int n);

// 1/(q^step; q^step)_n expanded up to q^{q_cap}.
MultiSeries inverse_q_pochhammer(int step, int n, int q_cap);

// Gaussian binomial [A choose B] in q^step; 0 outside 0 <= B <= A.
// Memoized q-Pascal recursion, thread-safe.
MultiSeries gaussian_binomial(int A, int B, int step);

// Compact text such as "6+3x" or "x^2q^23+x^2q^25"; "0" for the zero series.
std::string to_string(const MultiSeries& s);

// Canonical JSON: {"truncation": {...}, "terms": [{e_q,e_a,e_x,e_z,coeff}]}
// with terms sorted by (e_x, e_q, e_a, e_z) and decimal-string coefficients.
nlohmann::json to_json(const MultiSeries& s);
MultiSeries series_from_json(const nlohmann::json& j);

}  // namespace qpart
