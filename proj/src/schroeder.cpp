#include "qpart/schroeder.hpp"

#include "qpart/errors.hpp"
#include "qpart/quiver.hpp"

namespace qpart {

SchroederPath::SchroederPath(std::vector<Step> steps) : steps_(std::move(steps)) {
  int x = 0;
  int y = 0;
  for (Step s : steps_) {
    switch (s) {
      case Step::Right:
        twice_area_ += 2 * (x - y) + 1;
        ++x;
        break;
      case Step::Up:
        ++y;
        break;
      case Step::Diagonal:
        twice_area_ += 2 * (x - y);
        ++x;
        ++y;
        ++diagonals_;
        break;
    }
    if (y > x) throw InvalidArgument("Schroeder path rises above the diagonal");
  }
  if (x != y) throw InvalidArgument("Schroeder path does not end on the diagonal");
  n_ = x;
}

SchroederPath SchroederPath::parse(std::string_view text) {
  std::vector<Step> steps;
  for (char c : text) {
    if (c == 'R') steps.push_back(Step::Right);
    else if (c == 'U') steps.push_back(Step::Up);
    else if (c == 'D') steps.push_back(Step::Diagonal);
    else throw InvalidArgument(std::string("bad Schroeder step '") + c + "'");
  }
  return SchroederPath(std::move(steps));
}

std::string SchroederPath::to_string() const {
  std::string out;
  for (Step s : steps_) out += s == Step::Right ? 'R' : s == Step::Up ? 'U' : 'D';
  return out;
}

namespace {

void path_walk(int n, int x, int y, std::vector<Step>& prefix, std::vector<SchroederPath>& out) {
  if (x == n && y == n) {
    out.emplace_back(prefix);
    return;
  }
  if (x < n) {
    prefix.push_back(Step::Right);
    path_walk(n, x + 1, y, prefix, out);
    prefix.pop_back();
  }
  if (y < x) {
    prefix.push_back(Step::Up);
    path_walk(n, x, y + 1, prefix, out);
    prefix.pop_back();
  }
  if (x < n) {
    prefix.push_back(Step::Diagonal);
    path_walk(n, x + 1, y + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<SchroederPath> enumerate_paths(int n) {
  if (n < 0) throw InvalidArgument("enumerate_paths: n must be nonnegative");
  std::vector<SchroederPath> out;
  std::vector<Step> prefix;
  path_walk(n, 0, 0, prefix, out);
  return out;
}

Monomial path_weight(const SchroederPath& p) { return {p.twice_area(), p.diagonals(), p.n(), 0}; }

MultiSeries schroeder_series(int n_cap) {
  if (n_cap < 0) throw InvalidArgument("schroeder_series: n_cap must be nonnegative");
  MultiSeries out(TruncationPolicy::x(n_cap));
  for (int n = 0; n <= n_cap; ++n) {
    for (const auto& p : enumerate_paths(n)) out.add_term(path_weight(p), 1);
  }
  return out;
}

std::vector<BigInt> large_schroeder_numbers(int n_max) {
  std::vector<BigInt> S{1};
  for (int n = 1; n <= n_max; ++n) {
    BigInt v = S[n - 1];
    for (int k = 0; k < n; ++k) v += S[k] * S[n - 1 - k];
    S.push_back(v);
  }
  return S;
}

std::string to_string(const MonomialFactor& f) {
  const std::string m = to_string(f.monomial);
  if (f.monomial.is_one()) return f.coeff.get_str();
  if (f.coeff == 1) return m;
  if (f.coeff == -1) return "-" + m;
  return f.coeff.get_str() + m;
}

MultiSeries scale(const MultiSeries& s, const MonomialFactor& f) {
  MultiSeries out(s.policy());
  for (const auto& [m, c] : s.terms()) out.add_term(m * f.monomial, c * f.coeff);
  return out;
}

MonomialFactor leading_factor(const MultiSeries& lhs, const MultiSeries& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) throw InconsistentFactor("one side is zero");
  const int lo = std::max(*lhs.min_exponent(Var::x), *rhs.min_exponent(Var::x));
  const MultiSeries l = lhs.x_slice(lo);
  const MultiSeries r = rhs.x_slice(lo);
  if (l.is_zero() || r.is_zero()) throw InconsistentFactor("lowest x-slices are not both nonzero");
  const auto& [lm, lc] = *l.terms().begin();
  const auto& [rm, rc] = *r.terms().begin();
  if (lc % rc != 0) throw InconsistentFactor("leading coefficients are not in integer ratio");
  MonomialFactor f{lc / rc, {lm.e_q - rm.e_q, lm.e_a - rm.e_a, lm.e_x - rm.e_x, lm.e_z - rm.e_z}};
  if (scale(r, f) != l) throw InconsistentFactor("lowest x-slices differ by more than a monomial");
  return f;
}

const char* to_string(QuotientConvention c) {
  return c == QuotientConvention::SignedFirstNode ? "x1=-x, x2=ax" : "x1=x, x2=ax";
}

int schroeder_q_window(int n_cap) { return n_cap * n_cap; }

MultiSeries schroeder_quotient(int n_cap, int q_cap, QuotientConvention convention) {
  if (n_cap < 0 || q_cap < 0) throw InvalidArgument("schroeder_quotient: caps must be nonnegative");
  const int s1 = convention == QuotientConvention::SignedFirstNode ? -1 : 1;
  const auto weights = [&](int shift) {
    return std::vector<NodeWeight>{{s1, {shift, 0, 1, 0}}, {1, {shift, 1, 1, 0}}};
  };
  const SymmetricQuiver Q = SymmetricQuiver::two_node();
  const TruncationPolicy policy{n_cap, q_cap, std::nullopt};
  // Both sides have nonnegative q-exponents (d^T C d >= |d|), so the q_cap
  // truncation stays exact through the product.
  const MultiSeries num = quiver_series_unreduced(Q, weights(1), policy);
  const MultiSeries den = quiver_series_unreduced(Q, weights(-1), policy);
  return num * invert(den);
}

namespace {

struct Split {
  MultiSeries window;
  MultiSeries beyond;
};

Split split_window(const MultiSeries& s) {
  Split out{MultiSeries(s.policy()), MultiSeries(s.policy())};
  for (const auto& [m, c] : s.terms()) {
    (m.e_q >= 0 && m.e_q <= m.e_x * m.e_x ? out.window : out.beyond).add_term(m, c);
  }
  return out;
}

struct QuotientCheck {
  bool ok = false;
  std::optional<MonomialFactor> factor;
  std::string diagnosis;
  nlohmann::json mismatches = nlohmann::json::array();
  bool stable = false;
  std::size_t leakage_terms = 0;
};

QuotientCheck check_quotient(int n_cap, int q_cap, int guard, QuotientConvention convention,
                             const MultiSeries& series) {
  QuotientCheck out;
  const MultiSeries quotient = schroeder_quotient(n_cap, q_cap, convention);
  const MultiSeries wider = schroeder_quotient(n_cap, q_cap + guard, convention);
  out.stable = wider.truncated(quotient.policy()) == quotient;
  const Split parts = split_window(quotient);
  out.leakage_terms = parts.beyond.size();

  try {
    out.factor = leading_factor(parts.window, series);
  } catch (const InconsistentFactor& e) {
    out.diagnosis = std::string("no monomial factor: ") + e.what();
    return out;
  }
  const MultiSeries expected = scale(series, *out.factor).truncated(TruncationPolicy::x(n_cap));
  const MultiSeries diff = parts.window - expected;
  for (const auto& [m, c] : diff.terms()) {
    if (out.mismatches.size() >= 10) break;
    auto get = [&](const MultiSeries& s) {
      auto it = s.terms().find(m);
      return it == s.terms().end() ? BigInt(0) : it->second;
    };
    out.mismatches.push_back(to_json(Mismatch{m, get(parts.window), get(expected)}));
  }
  out.ok = diff.is_zero() && out.leakage_terms == 0 && out.stable;
  if (out.ok) {
    out.diagnosis = "quotient = F * Schroeder series";
  } else if (!out.stable) {
    out.diagnosis = "truncation leakage: quotient changes when the q-band grows";
  } else if (parts.window == scale(substitute(series, Var::q, -1, Monomial::q(1)), *out.factor)) {
    out.diagnosis = "convention mismatch: quotient = F * Schroeder series with q -> -q, i.e. sign (-1)^(n-D)";
  } else if (out.leakage_terms != 0) {
    out.diagnosis = "convention mismatch: quotient has terms beyond the path q-window";
  } else {
    out.diagnosis = "convention mismatch";
  }
  return out;
}

}  // namespace

CheckReport verify_schroeder_quotient(int n_cap, std::optional<int> q_cap, QuotientConvention convention) {
  if (n_cap < 1) throw InvalidArgument("verify_schroeder_quotient: n_cap must be positive");
  const int window = schroeder_q_window(n_cap);
  const int guard = 2 * n_cap;
  const int cap = q_cap.value_or(window + guard);
  if (cap < window) {
    throw InvalidArgument("verify_schroeder_quotient: q_cap must be at least n_cap^2 = " + std::to_string(window));
  }
  const MultiSeries series = schroeder_series(n_cap);
  const QuotientCheck main = check_quotient(n_cap, cap, guard, convention, series);

  CheckReport rep{"schroeder"};
  rep.ok = main.ok;
  rep.detail = {{"n_cap", n_cap},
                {"q_cap", cap},
                {"q_window", window},
                {"guard", guard},
                {"convention", to_string(convention)},
                {"factor_F", main.factor ? nlohmann::json(to_string(*main.factor)) : nlohmann::json(nullptr)},
                {"stable", main.stable},
                {"leakage_terms", main.leakage_terms},
                {"diagnosis", main.diagnosis},
                {"mismatches", main.mismatches}};
  if (convention == QuotientConvention::SignedFirstNode) {
    const QuotientCheck literal = check_quotient(n_cap, cap, guard, QuotientConvention::Literal, series);
    rep.detail["literal_convention"] = {
        {"convention", to_string(QuotientConvention::Literal)},
        {"status", literal.ok ? "pass" : "fail"},
        {"factor_F", literal.factor ? nlohmann::json(to_string(*literal.factor)) : nlohmann::json(nullptr)},
        {"diagnosis", literal.diagnosis}};
  }
  if (!main.mismatches.empty()) rep.counterexample = main.mismatches.front();
  rep.summary = rep.ok ? "quotient = F * Schroeder series with F = " + to_string(*main.factor) + " through x^" +
                             std::to_string(n_cap)
                       : main.diagnosis;
  return rep;
}

}  // namespace qpart
