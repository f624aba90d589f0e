#include "qpart/series.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <sstream>
#include <vector>

#include "qpart/errors.hpp"

namespace qpart {

const char* to_string(Var v) {
  switch (v) {
    case Var::q: return "q";
    case Var::a: return "a";
    case Var::x: return "x";
    case Var::z: return "z";
  }
  return "?";
}

int Monomial::exponent(Var v) const {
  switch (v) {
    case Var::q: return e_q;
    case Var::a: return e_a;
    case Var::x: return e_x;
    case Var::z: return e_z;
  }
  return 0;
}

int& Monomial::exponent(Var v) {
  switch (v) {
    case Var::q: return e_q;
    case Var::a: return e_a;
    case Var::x: return e_x;
    case Var::z: break;
  }
  return e_z;
}

std::string to_string(const Monomial& m) {
  std::string out;
  auto put = [&](Var v, int e) {
    if (e == 0) return;
    out += to_string(v);
    if (e != 1) out += "^" + std::to_string(e);
  };
  put(Var::a, m.e_a);
  put(Var::x, m.e_x);
  put(Var::z, m.e_z);
  put(Var::q, m.e_q);
  return out.empty() ? "1" : out;
}

bool TruncationPolicy::admits(const Monomial& m) const {
  if (x_cap && m.e_x > *x_cap) return false;
  if (q_cap && m.e_q > *q_cap) return false;
  if (z_cap && m.e_z > *z_cap) return false;
  return true;
}

namespace {

std::optional<int> min_cap(std::optional<int> l, std::optional<int> r) {
  if (!l) return r;
  if (!r) return l;
  return std::min(*l, *r);
}

}  // namespace

TruncationPolicy TruncationPolicy::intersect(const TruncationPolicy& other) const {
  return {min_cap(x_cap, other.x_cap), min_cap(q_cap, other.q_cap), min_cap(z_cap, other.z_cap)};
}

MultiSeries MultiSeries::constant(const BigInt& c, TruncationPolicy policy) {
  return term(Monomial{}, c, policy);
}

MultiSeries MultiSeries::term(const Monomial& m, const BigInt& c, TruncationPolicy policy) {
  MultiSeries s(policy);
  s.add_term(m, c);
  return s;
}

BigInt MultiSeries::coefficient(const Monomial& m) const {
  if (!policy_.admits(m)) {
    throw OutsideTruncation("coefficient of " + to_string(m) + " lies beyond the truncation caps");
  }
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void MultiSeries::add_term(const Monomial& m, const BigInt& c) {
  if (c == 0 || !policy_.admits(m)) return;
  if (!m.valid()) throw InvalidArgument("negative exponent on a, x or z: " + to_string(m));
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiSeries MultiSeries::coefficient_of(Var v, int e) const {
  MultiSeries out(policy_);
  for (const auto& [m, c] : terms_) {
    if (m.exponent(v) != e) continue;
    Monomial r = m;
    r.exponent(v) = 0;
    out.terms_.emplace(r, c);
  }
  return out;
}

MultiSeries MultiSeries::x_slice(int n) const {
  MultiSeries out(policy_);
  auto lo = terms_.lower_bound(Monomial{std::numeric_limits<int>::min(), 0, n, 0});
  for (auto it = lo; it != terms_.end() && it->first.e_x == n; ++it) out.terms_.insert(*it);
  return out;
}

MultiSeries MultiSeries::truncated(const TruncationPolicy& policy) const {
  MultiSeries out(policy_.intersect(policy));
  for (const auto& [m, c] : terms_) {
    if (out.policy_.admits(m)) out.terms_.emplace(m, c);
  }
  return out;
}

MultiSeries MultiSeries::with_policy(const TruncationPolicy& policy) const {
  MultiSeries out(policy);
  for (const auto& [m, c] : terms_) {
    if (policy.admits(m)) out.terms_.emplace(m, c);
  }
  return out;
}

std::optional<int> MultiSeries::min_exponent(Var v) const {
  std::optional<int> best;
  for (const auto& [m, c] : terms_) {
    if (!best || m.exponent(v) < *best) best = m.exponent(v);
  }
  return best;
}

std::optional<int> MultiSeries::max_exponent(Var v) const {
  std::optional<int> best;
  for (const auto& [m, c] : terms_) {
    if (!best || m.exponent(v) > *best) best = m.exponent(v);
  }
  return best;
}

bool MultiSeries::has_negative_q() const {
  auto lo = min_exponent(Var::q);
  return lo && *lo < 0;
}

void MultiSeries::require_nonnegative_q(const char* where) const {
  if (has_negative_q()) throw InvalidArgument(std::string(where) + ": negative q-exponent");
}

MultiSeries MultiSeries::operator-() const {
  MultiSeries out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& rhs) {
  policy_ = policy_.intersect(rhs.policy_);
  if (policy_.bounded()) {
    std::erase_if(terms_, [this](const auto& kv) { return !policy_.admits(kv.first); });
  }
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

MultiSeries& MultiSeries::operator-=(const MultiSeries& rhs) {
  return *this += -rhs;
}

MultiSeries operator*(const MultiSeries& l, const MultiSeries& r) {
  MultiSeries out(l.policy_.intersect(r.policy_));
  const auto& pol = out.policy_;
  for (const auto& [ml, cl] : l.terms_) {
    if (pol.x_cap && ml.e_x > *pol.x_cap) continue;
    for (const auto& [mr, cr] : r.terms_) {
      Monomial m = ml * mr;
      if (!pol.admits(m)) {
        // r is sorted by e_x first: nothing further in r can fit.
        if (pol.x_cap && m.e_x > *pol.x_cap) break;
        continue;
      }
      auto [it, inserted] = out.terms_.try_emplace(m, cl * cr);
      if (!inserted) it->second += cl * cr;
    }
  }
  std::erase_if(out.terms_, [](const auto& kv) { return kv.second == 0; });
  return out;
}

MultiSeries& MultiSeries::operator*=(const MultiSeries& rhs) {
  *this = *this * rhs;
  return *this;
}

MultiSeries add(const MultiSeries& s1, const MultiSeries& s2) { return s1 + s2; }
MultiSeries mul(const MultiSeries& s1, const MultiSeries& s2) { return s1 * s2; }

MultiSeries invert(const MultiSeries& s) {
  if (!s.policy().x_cap) throw MissingCap("invert requires an x_cap");
  const int cap = *s.policy().x_cap;

  MultiSeries head = s.x_slice(0);
  if (head.size() != 1 || !head.terms().begin()->first.is_one()) {
    throw NonUnitConstantTerm("invert: the x^0 slice must be the constant +1 or -1");
  }
  const BigInt unit = head.terms().begin()->second;
  if (unit != 1 && unit != -1) {
    throw NonUnitConstantTerm("invert: constant term " + unit.get_str() + " is not a unit");
  }

  std::vector<MultiSeries> slices;
  slices.reserve(cap + 1);
  for (int n = 0; n <= cap; ++n) slices.push_back(s.x_slice(n));

  // t_0 = unit, t_n = -unit * sum_{k=1}^{n} s_k t_{n-k}
  std::vector<MultiSeries> inv;
  inv.reserve(cap + 1);
  inv.push_back(MultiSeries::constant(unit, s.policy()));
  for (int n = 1; n <= cap; ++n) {
    MultiSeries acc(s.policy());
    for (int k = 1; k <= n; ++k) {
      if (slices[k].is_zero() || inv[n - k].is_zero()) continue;
      acc += slices[k] * inv[n - k];
    }
    inv.push_back(unit == 1 ? -acc : acc);
  }

  MultiSeries out(s.policy());
  for (const auto& t : inv) out += t;
  return out;
}

MultiSeries substitute(const MultiSeries& s, Var var, int sign, const Monomial& replacement) {
  if (sign != 1 && sign != -1) throw InvalidArgument("substitute: sign must be +1 or -1");
  MultiSeries out(s.policy());
  for (const auto& [m, c] : s.terms()) {
    const int e = m.exponent(var);
    Monomial r = m;
    r.exponent(var) = 0;
    for (int i = 0; i < e; ++i) r = r * replacement;
    out.add_term(r, (sign < 0 && e % 2 != 0) ? BigInt(-c) : c);
  }
  return out;
}

MultiSeries substitute_scale(const MultiSeries& s, Var var, int sign, int q_shift) {
  if (var == Var::q) throw InvalidArgument("substitute_scale: var must be a, x or z");
  Monomial rep = Monomial::q(q_shift);
  rep.exponent(var) = 1;
  return substitute(s, var, sign, rep);
}

MultiSeries evaluate_at_one(const MultiSeries& s, Var var) {
  TruncationPolicy pol = s.policy();
  if (var == Var::q) pol.q_cap.reset();
  if (var == Var::x) pol.x_cap.reset();
  if (var == Var::z) pol.z_cap.reset();
  MultiSeries out(pol);
  for (const auto& [m, c] : s.terms()) {
    Monomial r = m;
    r.exponent(var) = 0;
    out.add_term(r, c);
  }
  return out;
}

MultiSeries q_pochhammer(int step, int n) {
  if (step <= 0) throw InvalidArgument("q_pochhammer: step must be positive");
  if (n < 0) throw InvalidArgument("q_pochhammer: n must be nonnegative");
  MultiSeries out = MultiSeries::one();
  for (int i = 1; i <= n; ++i) {
    MultiSeries factor = MultiSeries::one();
    factor.add_term(Monomial::q(step * i), -1);
    out *= factor;
  }
  return out;
}

MultiSeries inverse_q_pochhammer(int step, int n, int q_cap) {
  if (step <= 0) throw InvalidArgument("inverse_q_pochhammer: step must be positive");
  if (n < 0) throw InvalidArgument("inverse_q_pochhammer: n must be nonnegative");
  // Dense accumulation: multiply by 1/(1 - q^{step*i}) as a running prefix sum.
  std::vector<BigInt> coeffs(static_cast<std::size_t>(std::max(q_cap, 0)) + 1, 0);
  if (q_cap < 0) return MultiSeries(TruncationPolicy::q(q_cap));
  coeffs[0] = 1;
  for (int i = 1; i <= n; ++i) {
    const int w = step * i;
    for (int e = w; e <= q_cap; ++e) coeffs[e] += coeffs[e - w];
  }
  MultiSeries out(TruncationPolicy::q(q_cap));
  for (int e = 0; e <= q_cap; ++e) out.add_term(Monomial::q(e), coeffs[e]);
  return out;
}

namespace {

struct BinomialCache {
  std::mutex mu;
  std::map<std::tuple<int, int, int>, MultiSeries> table;
};

BinomialCache& binomial_cache() {
  static BinomialCache cache;
  return cache;
}

MultiSeries gaussian_uncached(int A, int B, int step) {
  // Row-by-row q-Pascal: [i j] = [i-1 j] + q^{step(i-j)} [i-1 j-1].
  const int width = std::min(B, A - B);
  std::vector<MultiSeries> row(width + 1);
  row[0] = MultiSeries::one();
  for (int i = 1; i <= A; ++i) {
    for (int j = std::min(i, width); j >= 1; --j) {
      MultiSeries shifted = row[j - 1] * MultiSeries::term(Monomial::q(step * (i - j)));
      row[j] = (j == i) ? MultiSeries::one() : row[j] + shifted;
    }
  }
  return row[width];
}

}  // namespace

MultiSeries gaussian_binomial(int A, int B, int step) {
  if (step <= 0) throw InvalidArgument("gaussian_binomial: step must be positive");
  if (B < 0 || B > A) return MultiSeries();
  if (B == 0 || B == A) return MultiSeries::one();
  const int b = std::min(B, A - B);

  auto& cache = binomial_cache();
  const auto key = std::make_tuple(A, b, step);
  {
    std::lock_guard lock(cache.mu);
    if (auto it = cache.table.find(key); it != cache.table.end()) return it->second;
  }
  MultiSeries value = gaussian_uncached(A, b, step);
  std::lock_guard lock(cache.mu);
  return cache.table.try_emplace(key, std::move(value)).first->second;
}

std::string to_string(const MultiSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : s.terms()) {
    const bool neg = c < 0;
    BigInt mag = neg ? BigInt(-c) : c;
    if (!first || neg) out += neg ? "-" : "+";
    first = false;
    if (m.is_one()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str();
      out += to_string(m);
    }
  }
  return out;
}

nlohmann::json to_json(const MultiSeries& s) {
  auto cap = [](const std::optional<int>& c) { return c ? nlohmann::json(*c) : nlohmann::json(nullptr); };
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : s.terms()) {
    terms.push_back({{"e_q", m.e_q}, {"e_a", m.e_a}, {"e_x", m.e_x}, {"e_z", m.e_z}, {"coeff", c.get_str()}});
  }
  return {{"truncation", {{"x_cap", cap(s.policy().x_cap)}, {"q_cap", cap(s.policy().q_cap)}, {"z_cap", cap(s.policy().z_cap)}}},
          {"terms", std::move(terms)}};
}

MultiSeries series_from_json(const nlohmann::json& j) {
  auto cap = [](const nlohmann::json& v) -> std::optional<int> {
    if (v.is_null()) return std::nullopt;
    return v.get<int>();
  };
  TruncationPolicy pol;
  if (j.contains("truncation")) {
    const auto& t = j.at("truncation");
    pol = {cap(t.value("x_cap", nlohmann::json())), cap(t.value("q_cap", nlohmann::json())),
           cap(t.value("z_cap", nlohmann::json()))};
  }
  MultiSeries out(pol);
  for (const auto& t : j.at("terms")) {
    Monomial m{t.at("e_q").get<int>(), t.at("e_a").get<int>(), t.at("e_x").get<int>(), t.at("e_z").get<int>()};
    out.add_term(m, BigInt(t.at("coeff").get<std::string>()));
  }
  return out;
}

}  // namespace qpart
