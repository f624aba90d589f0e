#include "qpart/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "qpart/errors.hpp"

namespace qpart {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw InvalidArgument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw InvalidArgument("partition parts must be non-increasing");
  }
}

Partition Partition::from_increasing(std::vector<int> parts) {
  std::reverse(parts.begin(), parts.end());
  return Partition(std::move(parts));
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::odd_parts() const {
  return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int v) { return v % 2 != 0; }));
}

bool Partition::is_strict() const {
  return std::adjacent_find(parts_.begin(), parts_.end()) == parts_.end();
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i > 0) out += '+';
    out += std::to_string(parts_[i]);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

bool is_member_D(const Partition& p) {
  if (p.empty() || !p.is_strict()) return false;
  if (p.smallest() % 2 != 0) return false;
  const auto parts = p.parts();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] % 2 != 0 && parts[i - 1] % 2 != 0) return false;
  }
  return true;
}

bool is_basal_D(const Partition& p) {
  if (!is_member_D(p) || p.smallest() != 2) return false;
  const auto parts = p.parts();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i - 1] - parts[i] > 2) return false;
  }
  return true;
}

int weight_exponent(const Partition& p) {
  if (!is_member_D(p)) throw NotInClass("weight_exponent: " + p.to_string() + " is not a billiard partition");
  const int d = p.num_parts();
  const int s = p.odd_parts();
  return p.largest() % 2 == 0 ? d - 1 - 2 * s : d - 2 * s;
}

namespace {

// Parts below `above` summing to `remaining`, no odd part next to an odd one,
// smallest part even. Largest choices first.
void extend_D(std::vector<int>& parts, int remaining, std::vector<Partition>& out) {
  if (remaining == 0) {
    if (!parts.empty() && parts.back() % 2 == 0) out.emplace_back(parts);
    return;
  }
  const int above = parts.empty() ? remaining + 1 : parts.back();
  const bool prev_odd = !parts.empty() && parts.back() % 2 != 0;
  for (int v = std::min(remaining, above - 1); v >= 1; --v) {
    if (prev_odd && v % 2 != 0) continue;
    // The smallest part must be even, so an odd part needs room for a
    // smaller even part after it.
    if (v == remaining && v % 2 != 0) continue;
    parts.push_back(v);
    extend_D(parts, remaining - v, out);
    parts.pop_back();
  }
}

}  // namespace

std::map<int, std::vector<Partition>> enumerate_D(int n_cap) {
  if (n_cap < 1) throw InvalidArgument("enumerate_D: n_cap must be positive");
  std::map<int, std::vector<Partition>> out;
  for (int n = 1; n <= n_cap; ++n) {
    std::vector<int> parts;
    auto& list = out[n];
    extend_D(parts, n, list);
  }
  return out;
}

MultiSeries weighted_series_D(int q_cap) {
  if (q_cap < 1) throw InvalidArgument("weighted_series_D: q_cap must be positive");
  MultiSeries out = MultiSeries::one(TruncationPolicy::q(q_cap));
  for (const auto& [n, list] : enumerate_D(q_cap)) {
    for (const auto& p : list) out.add_term({n, 0, weight_exponent(p), 0}, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------

ResidueSpec::ResidueSpec(int k, std::vector<int> c, std::vector<int> d) : k_(k), c_(std::move(c)), d_(std::move(d)) {
  if (k_ < 1) throw InvalidArgument("class modulus k must be positive");
  if (static_cast<int>(c_.size()) != k_ || static_cast<int>(d_.size()) != k_) {
    throw InvalidArgument("class spec needs exactly k values of c and d");
  }
  for (int r = 1; r <= k_; ++r) {
    if (c_[r - 1] < 1) throw InvalidArgument("c_r must be positive");
    if (residue(c_[r - 1]) != r) throw InvalidArgument("c_" + std::to_string(r) + " is not congruent to r mod k");
    if (d_[r - 1] < 0) throw InvalidArgument("d_r must be nonnegative");
  }
}

int ResidueSpec::residue(int part) const {
  const int r = ((part % k_) + k_) % k_;
  return r == 0 ? k_ : r;
}

int ResidueSpec::ell() const {
  return static_cast<int>(std::count(d_.begin(), d_.end(), 0));
}

SipClassB SipClassB::lucas(int k, int ell) {
  if (ell < 0 || ell > k) throw InvalidArgument("lucas class: need 0 <= ell <= k");
  std::vector<int> c(k), d(k);
  for (int r = 1; r <= k; ++r) {
    c[r - 1] = r;
    d[r - 1] = r <= ell ? 0 : 1;
  }
  return {k, std::move(c), std::move(d)};
}

void SmallestPartMode::validate(const ResidueSpec& cls) const {
  if (!value_) return;
  const auto c = cls.c();
  if (std::find(c.begin(), c.end(), *value_) == c.end()) {
    throw InvalidArgument("smallest part " + std::to_string(*value_) + " is not one of the c_r");
  }
}

std::string SmallestPartMode::to_string() const {
  return value_ ? "fixed:" + std::to_string(*value_) : "any";
}

namespace {

// Adjacent pair (lower, upper) of a type-B member, literal conditions.
bool typeB_pair_ok(const SipClassB& cls, int lower, int upper) {
  const int r = cls.residue(upper);
  return upper - lower >= std::max(1, cls.gap(r));
}

bool typeB_pair_member(const SipClassB& cls, int lower, int upper) {
  if (!typeB_pair_ok(cls, lower, upper)) return false;
  const int r = cls.residue(upper);
  return !(cls.odd_like(r) && cls.residue(lower) == r);
}

bool typeB_window(const SipClassB& cls, int lower, int upper) {
  const int r = cls.residue(upper);
  const int g = upper - lower;
  return upper >= cls.min_part(r) && g >= std::max(cls.gap(r), 1) && g < cls.gap(r) + cls.k();
}

}  // namespace

bool satisfies_typeB_conditions(const Partition& p, const SipClassB& cls) {
  if (p.empty()) return false;
  const auto parts = p.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < cls.min_part(cls.residue(parts[i]))) return false;
    if (i > 0 && !typeB_pair_ok(cls, parts[i], parts[i - 1])) return false;
  }
  return true;
}

bool is_member_typeB(const Partition& p, const SipClassB& cls) {
  if (!satisfies_typeB_conditions(p, cls)) return false;
  const auto parts = p.parts();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!typeB_pair_member(cls, parts[i], parts[i - 1])) return false;
  }
  return true;
}

bool is_basal_typeB(const Partition& p, const SipClassB& cls) {
  if (p.empty() || !p.is_strict()) return false;
  const auto parts = p.parts();
  if (p.smallest() != cls.min_part(cls.residue(p.smallest()))) return false;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!typeB_window(cls, parts[i], parts[i - 1])) return false;
  }
  return true;
}

bool is_member_typeA(const Partition& p, const SipClassA& cls) {
  if (p.empty()) return false;
  const auto parts = p.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < cls.min_part(cls.residue(parts[i]))) return false;
    if (i > 0 && parts[i - 1] - parts[i] < cls.gap(cls.residue(parts[i - 1]))) return false;
  }
  return true;
}

bool is_basal_typeA(const Partition& p, const SipClassA& cls) {
  if (p.empty()) return false;
  const auto parts = p.parts();
  if (p.smallest() != cls.min_part(cls.residue(p.smallest()))) return false;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const int upper = parts[i - 1];
    const int r = cls.residue(upper);
    const int g = upper - parts[i];
    if (g < cls.gap(r) || g >= cls.gap(r) + cls.k()) return false;
  }
  return true;
}

std::vector<int> basal_successors(const SipClassB& cls, int b) {
  std::vector<int> out;
  for (int r = 1; r <= cls.k(); ++r) {
    const int lo = b + std::max(cls.gap(r), 1);
    const int hi = b + cls.gap(r) + cls.k();  // exclusive
    // Smallest value >= lo with residue r.
    const int v = lo + ((r - cls.residue(lo)) % cls.k() + cls.k()) % cls.k();
    if (v < hi && v >= cls.min_part(r)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<int> roots(const SipClassB& cls, const SmallestPartMode& mode) {
  mode.validate(cls);
  if (mode.is_fixed()) return {mode.value()};
  std::vector<int> out(cls.c().begin(), cls.c().end());
  std::sort(out.begin(), out.end());
  return out;
}

void walk_basal(const SipClassB& cls, int d, int max_part, std::vector<int>& parts,
                const std::function<void(std::span<const int>)>& visit) {
  if (static_cast<int>(parts.size()) == d) {
    visit(parts);
    return;
  }
  for (int next : basal_successors(cls, parts.back())) {
    if (next > max_part) break;
    parts.push_back(next);
    walk_basal(cls, d, max_part, parts, visit);
    parts.pop_back();
  }
}

}  // namespace

void for_each_basal(const SipClassB& cls, int d, const SmallestPartMode& mode, int max_part,
                    const std::function<void(std::span<const int>)>& visit) {
  if (d < 1) throw InvalidArgument("basis enumeration needs d >= 1");
  for (int root : roots(cls, mode)) {
    if (root > max_part) continue;
    std::vector<int> parts{root};
    walk_basal(cls, d, max_part, parts, visit);
  }
}

void for_each_basal(const SipClassB& cls, int d, const SmallestPartMode& mode,
                    const std::function<void(std::span<const int>)>& visit) {
  for_each_basal(cls, d, mode, std::numeric_limits<int>::max(), visit);
}

std::vector<Partition> enumerate_basis(const SipClassB& cls, int d, const SmallestPartMode& mode) {
  std::vector<Partition> out;
  for_each_basal(cls, d, mode, [&](std::span<const int> parts) {
    out.push_back(Partition::from_increasing({parts.begin(), parts.end()}));
  });
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

RefinedCount count_basis_refined(const SipClassB& cls, int d, const SmallestPartMode& mode) {
  if (d < 1) throw InvalidArgument("basis counting needs d >= 1");
  // Memoize on (value, remaining): the subtree below a part depends only on it.
  std::map<std::pair<int, int>, RefinedCount> memo;
  std::function<RefinedCount(int, int)> count = [&](int b, int remaining) -> RefinedCount {
    if (remaining == 0) {
      RefinedCount leaf;
      (cls.odd_like(cls.residue(b)) ? leaf.odd_like_top : leaf.rest) = 1;
      return leaf;
    }
    const auto key = std::make_pair(b, remaining);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    RefinedCount acc;
    for (int next : basal_successors(cls, b)) {
      const RefinedCount sub = count(next, remaining - 1);
      acc.odd_like_top += sub.odd_like_top;
      acc.rest += sub.rest;
    }
    memo.emplace(key, acc);
    return acc;
  };
  RefinedCount total;
  for (int root : roots(cls, mode)) {
    const RefinedCount sub = count(root, d - 1);
    total.odd_like_top += sub.odd_like_top;
    total.rest += sub.rest;
  }
  return total;
}

std::uint64_t count_basis(const SipClassB& cls, int d, const SmallestPartMode& mode) {
  return count_basis_refined(cls, d, mode).total();
}

LucasParams lucas_params(const SipClassB& cls, const SmallestPartMode& mode) {
  for (int g : cls.d()) {
    if (g != 0 && g != 1) throw HypothesisViolated("Lucas recursion needs every d_j in {0, 1}");
  }
  mode.validate(cls);
  const std::int64_t k = cls.k();
  const std::int64_t ell = cls.ell();
  LucasParams p{k - 1, ell - k, 0, 0};
  if (!mode.is_fixed()) {
    p.f1 = k;
    p.f2 = k * k - ell;
  } else if (cls.odd_like(cls.residue(mode.value()))) {
    p.f1 = 1;
    p.f2 = k - 1;
  } else {
    p.f1 = 1;
    p.f2 = k;
  }
  return p;
}

LucasReport verify_lucas(const SipClassB& cls, int d_max, const SmallestPartMode& mode) {
  if (d_max < 2) throw InvalidArgument("verify_lucas: d_max must be at least 2");
  LucasReport rep;
  rep.params = lucas_params(cls, mode);
  for (int d = 1; d <= d_max; ++d) {
    rep.refined.push_back(count_basis_refined(cls, d, mode));
    rep.f.push_back(rep.refined.back().total());
  }
  const auto f = [&](int d) { return static_cast<std::int64_t>(rep.f[d - 1]); };
  rep.initial_ok = f(1) == rep.params.f1 && f(2) == rep.params.f2;

  rep.recursion_ok = true;
  for (int d = 1; d + 2 <= d_max; ++d) {
    if (f(d + 2) != rep.params.T * f(d + 1) - rep.params.R * f(d)) {
      rep.recursion_ok = false;
      if (!rep.first_failure) rep.first_failure = d;
    }
  }

  const std::int64_t k = cls.k();
  const std::int64_t ell = cls.ell();
  rep.refined_ok = true;
  for (int d = 1; d < d_max; ++d) {
    const auto a = static_cast<std::int64_t>(rep.refined[d - 1].odd_like_top);
    const auto b = static_cast<std::int64_t>(rep.refined[d - 1].rest);
    const auto a1 = static_cast<std::int64_t>(rep.refined[d].odd_like_top);
    const auto b1 = static_cast<std::int64_t>(rep.refined[d].rest);
    const bool ok = f(d + 1) == (k - 1) * a + k * b && a1 == (ell - 1) * a + ell * b && b1 == (k - ell) * (a + b);
    if (!ok) {
      rep.refined_ok = false;
      if (!rep.first_failure) rep.first_failure = d;
    }
  }
  return rep;
}

namespace {

void extend_typeB(const SipClassB& cls, std::vector<int>& parts, int remaining, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(parts);
    return;
  }
  const int above = parts.empty() ? remaining + 1 : parts.back();
  for (int v = std::min(remaining, above - 1); v >= 1; --v) {
    if (v < cls.min_part(cls.residue(v))) continue;
    if (!parts.empty() && !typeB_pair_member(cls, v, parts.back())) continue;
    parts.push_back(v);
    extend_typeB(cls, parts, remaining - v, out);
    parts.pop_back();
  }
}

}  // namespace

std::map<int, std::vector<Partition>> enumerate_typeB(const SipClassB& cls, int n_cap) {
  if (n_cap < 1) throw InvalidArgument("enumerate_typeB: n_cap must be positive");
  std::map<int, std::vector<Partition>> out;
  for (int n = 1; n <= n_cap; ++n) {
    std::vector<int> parts;
    extend_typeB(cls, parts, n, out[n]);
  }
  return out;
}

Decomposition decompose(const Partition& p, const SipClassB& cls) {
  if (!is_member_typeB(p, cls)) throw NotInClass("decompose: " + p.to_string() + " is not a member");
  const auto desc = p.parts();
  std::vector<int> up(desc.rbegin(), desc.rend());

  std::vector<int> basal(up.size());
  std::vector<int> residual(up.size());
  basal[0] = cls.min_part(cls.residue(up[0]));
  residual[0] = up[0] - basal[0];
  for (std::size_t i = 1; i < up.size(); ++i) {
    const int r = cls.residue(up[i]);
    int next = 0;
    for (int s : basal_successors(cls, basal[i - 1])) {
      if (cls.residue(s) == r) next = s;
    }
    if (next == 0) {
      throw DecompositionFailed("decompose: no basal successor of " + std::to_string(basal[i - 1]) +
                                " with residue " + std::to_string(r) + " for " + p.to_string());
    }
    basal[i] = next;
    residual[i] = up[i] - next;
    if (residual[i] < residual[i - 1]) {
      throw DecompositionFailed("decompose: residual would decrease for " + p.to_string());
    }
  }
  if (residual[0] < 0) throw DecompositionFailed("decompose: negative residual for " + p.to_string());
  return {Partition::from_increasing(std::move(basal)), std::move(residual)};
}

Partition recompose(const Partition& basal, std::span<const int> residual, const SipClassB& cls) {
  if (static_cast<int>(residual.size()) != basal.num_parts()) {
    throw ShapeMismatch("recompose: residual length differs from the number of basal parts");
  }
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (residual[i] < 0 || residual[i] % cls.k() != 0) throw ShapeMismatch("recompose: residual parts must be nonnegative multiples of k");
    if (i > 0 && residual[i] < residual[i - 1]) throw ShapeMismatch("recompose: residual must be non-decreasing");
  }
  if (!is_basal_typeB(basal, cls)) throw NotInClass("recompose: " + basal.to_string() + " is not basal");
  const auto desc = basal.parts();
  std::vector<int> up(desc.rbegin(), desc.rend());
  for (std::size_t i = 0; i < up.size(); ++i) up[i] += residual[i];
  Partition out = Partition::from_increasing(std::move(up));
  if (!is_member_typeB(out, cls)) throw NotInClass("recompose: result " + out.to_string() + " is not a member");
  return out;
}

}  // namespace qpart

namespace qpart {

std::vector<Decomposition> all_decompositions(const Partition& p, const SipClassB& cls) {
  std::vector<Decomposition> out;
  if (p.empty()) return out;
  const auto desc = p.parts();
  const std::vector<int> up(desc.rbegin(), desc.rend());
  for_each_basal(cls, p.num_parts(), SmallestPartMode::unrestricted(), p.largest(), [&](std::span<const int> b) {
    std::vector<int> residual(up.size());
    for (std::size_t i = 0; i < up.size(); ++i) {
      residual[i] = up[i] - b[i];
      if (residual[i] < 0 || residual[i] % cls.k() != 0) return;
      if (i > 0 && residual[i] < residual[i - 1]) return;
    }
    out.push_back({Partition::from_increasing({b.begin(), b.end()}), std::move(residual)});
  });
  return out;
}

CheckReport verify_decomposition(int n_cap, int weight_cap) {
  if (n_cap < 1 || weight_cap < 1) throw InvalidArgument("verify_decomposition: caps must be positive");
  CheckReport rep("decomposition");
  const SipClassB cls = SipClassB::billiard();
  std::size_t round_trips = 0;
  std::size_t weights = 0;
  const auto fail = [&](const std::string& what, const Partition& p) {
    rep.ok = false;
    rep.summary = what + " fails for " + p.to_string();
    rep.counterexample = nlohmann::json{{"partition", p.to_string()}, {"check", what}};
    return rep;
  };
  for (const auto& [n, members] : enumerate_D(std::max(n_cap, weight_cap))) {
    for (const auto& p : members) {
      const Decomposition dec = decompose(p, cls);
      if (n <= n_cap) {
        if (recompose(dec.basal, dec.residual, cls) != p) return fail("round-trip", p);
        const auto all = all_decompositions(p, cls);
        if (all.size() != 1 || all.front() != dec) return fail("uniqueness", p);
        ++round_trips;
      }
      if (n <= weight_cap) {
        if (weight_exponent(dec.basal) != weight_exponent(p)) return fail("weight preservation", p);
        ++weights;
      }
    }
  }
  rep.ok = true;
  rep.detail = {{"n_cap", n_cap}, {"weight_cap", weight_cap}, {"round_trips", round_trips}, {"weights_checked", weights}};
  rep.summary = "unique decomposition for " + std::to_string(round_trips) + " members of D, weight preserved for " +
                std::to_string(weights);
  return rep;
}

CheckReport verify_lucas_suite(int d_max) {
  if (d_max < 3) throw InvalidArgument("verify_lucas_suite: d_max must be at least 3");
  CheckReport rep("lucas");
  nlohmann::json cases = nlohmann::json::array();
  rep.ok = true;
  const auto run = [&](const std::string& name, const SipClassB& cls, const SmallestPartMode& mode) {
    const LucasReport r = verify_lucas(cls, d_max, mode);
    nlohmann::json row{{"class", name},
                       {"smallest", mode.to_string()},
                       {"T", r.params.T},
                       {"R", r.params.R},
                       {"f", r.f},
                       {"status", r.ok() ? "pass" : "fail"}};
    if (r.first_failure) row["first_failure_d"] = *r.first_failure;
    if (!r.ok() && rep.ok) {
      rep.ok = false;
      rep.counterexample = row;
    }
    cases.push_back(std::move(row));
  };

  // Billiard with smallest part 2 gives the Fibonacci numbers 1, 2, 3, 5, ...
  const SipClassB billiard = SipClassB::billiard();
  const auto fib = enumerate_basis(billiard, 1, SmallestPartMode::fixed(2)).size();
  std::uint64_t f0 = 1, f1 = 2;
  bool fib_ok = fib == 1 && count_basis(billiard, 2, SmallestPartMode::fixed(2)) == 2;
  for (int d = 3; d <= d_max; ++d) {
    const std::uint64_t next = f0 + f1;
    fib_ok = fib_ok && count_basis(billiard, d, SmallestPartMode::fixed(2)) == next;
    f0 = f1;
    f1 = next;
  }
  if (!fib_ok && rep.ok) {
    rep.ok = false;
    rep.counterexample = nlohmann::json{{"class", "billiard"}, {"check", "Fibonacci"}};
  }

  const auto all_modes = [&](const std::string& name, const SipClassB& cls) {
    run(name, cls, SmallestPartMode::unrestricted());
    for (int c : cls.c()) run(name, cls, SmallestPartMode::fixed(c));
  };
  all_modes("billiard", billiard);
  all_modes("p32", SipClassB::p32());
  all_modes("p31", SipClassB::p31());
  for (auto [k, ell] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}}) {
    all_modes("k=" + std::to_string(k) + ",l=" + std::to_string(ell), SipClassB::lucas(k, ell));
  }
  rep.detail = {{"d_max", d_max}, {"fibonacci", fib_ok}, {"cases", std::move(cases)}};
  rep.summary = rep.ok ? "basal counts satisfy the Lucas recursions through d = " + std::to_string(d_max)
                       : "basal counts break a Lucas recursion";
  return rep;
}

}  // namespace qpart
