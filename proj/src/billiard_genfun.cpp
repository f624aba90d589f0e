#include "qpart/billiard_genfun.hpp"

#include "qpart/errors.hpp"

namespace qpart {

namespace {

MultiSeries q_pow(int e) { return MultiSeries::term(Monomial::q(e)); }
MultiSeries z_pow(int e) { return MultiSeries::term(Monomial::z(e)); }

MultiSeries qz(int eq, int ez, const BigInt& c = 1) { return MultiSeries::term({eq, 0, 0, ez}, c); }

void require_positive(int v, const char* what) {
  if (v < 1) throw InvalidArgument(std::string(what) + " must be positive");
}

}  // namespace

MultiSeries s_closed(int d, int m, OddExponentForm form) {
  require_positive(d, "s_closed: d");
  require_positive(m, "s_closed: m");
  const int n = m / 2;
  const int lower = m % 2 == 0 ? 2 * n - d - 1 : 2 * n - d;
  if (lower < 0 || lower > n - 1) return MultiSeries();
  int e_q = 0;
  if (m % 2 == 0) {
    e_q = 2 * n * n - 2 * d * n - n + d * d + 2 * d;
  } else {
    e_q = 2 * n * n - 2 * d * n + d * d + 3 * n;
    if (form == OddExponentForm::Theorem) e_q -= n;
  }
  return MultiSeries::term({e_q, 0, lower, 0}) * gaussian_binomial(n - 1, lower, 2);
}

MultiSeries s_brute(int d, int m) {
  require_positive(d, "s_brute: d");
  require_positive(m, "s_brute: m");
  MultiSeries out;
  for_each_basal(SipClassB::billiard(), d, SmallestPartMode::fixed(2), m, [&](std::span<const int> parts) {
    if (parts.back() != m) return;
    const Partition p = Partition::from_increasing({parts.begin(), parts.end()});
    out.add_term({p.size(), 0, weight_exponent(p), 0}, 1);
  });
  return out;
}

const MultiSeries& SRecursion::operator()(int d, int m) {
  const auto key = std::make_pair(d, m);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  MultiSeries value;
  if (d == 1) {
    if (m == 2) value = q_pow(2);
  } else if (d > 1 && m > 2) {
    if (m % 2 == 0) {
      value = q_pow(m) * ((*this)(d - 1, m - 2) + (*this)(d - 1, m - 1));
    } else {
      value = q_pow(m) * (*this)(d - 1, m - 1);
    }
  }
  return memo_.try_emplace(key, std::move(value)).first->second;
}

MultiSeries s_recursive(int d, int m) {
  require_positive(d, "s_recursive: d");
  require_positive(m, "s_recursive: m");
  SRecursion rec;
  return rec(d, m);
}

std::vector<SdnTerm> s_table(int d_max) {
  require_positive(d_max, "s_table: d_max");
  std::vector<SdnTerm> out;
  for (int d = 1; d <= d_max; ++d) {
    for (int m = d + 1; m <= 2 * d; ++m) out.push_back({d, m, s_closed(d, m)});
  }
  return out;
}

MultiSeries sn_z(int n) {
  require_positive(n, "sn_z: n");
  MultiSeries out = qz(n * (n + 1), n);
  for (int i = 1; i <= n - 1; ++i) out *= MultiSeries::one() + qz(2 * i + 1, 1);
  return out;
}

MultiSeries sn_z_binomial(int n) {
  require_positive(n, "sn_z_binomial: n");
  MultiSeries out;
  for (int d = n; d <= 2 * n - 1; ++d) {
    out += qz(2 * n * n - 2 * d * n - n + d * d + 2 * d, d) * gaussian_binomial(n - 1, d - n, 2);
  }
  return out;
}

MultiSeries sn_z_recursive(int n) {
  require_positive(n, "sn_z_recursive: n");
  SRecursion rec;
  MultiSeries out;
  // s(d,2n) vanishes unless d+1 <= 2n <= 2d.
  for (int d = 1; d <= 2 * n; ++d) out += rec(d, 2 * n) * z_pow(d);
  return out;
}

MultiSeries full_series_D(int q_cap, OddExponentForm form) {
  require_positive(q_cap, "full_series_D: q_cap");
  const auto pol = TruncationPolicy::q(q_cap);
  MultiSeries out = MultiSeries::one(pol);
  // The smallest basal partition with d parts is 2+3+...+(d+1).
  for (int d = 1; d * (d + 3) / 2 <= q_cap; ++d) {
    MultiSeries basal(pol);
    for (int m = d + 1; m <= 2 * d; ++m) basal += s_closed(d, m, form).truncated(pol);
    out += basal * inverse_q_pochhammer(2, d, q_cap);
  }
  return out;
}

const MultiSeries& TRecursion::operator()(int d, int m) {
  const auto key = std::make_pair(d, m);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  MultiSeries value;
  if (d == 1) {
    const bool root = base_ == TBase::SmallestThree ? m == 3 : (m >= 1 && m <= 3);
    if (root) value = q_pow(m);
  } else if (d > 1 && m > 1) {
    const int n = m / 3;
    auto& self = *this;
    switch (m % 3) {
      case 0:
        value = q_pow(m) * (self(d - 1, 3 * n - 3) + self(d - 1, 3 * n - 2) + self(d - 1, 3 * n - 1));
        break;
      case 1:
        value = q_pow(m) * (self(d - 1, 3 * n - 1) + self(d - 1, 3 * n));
        break;
      default:
        value = q_pow(m) * (self(d - 1, 3 * n) + self(d - 1, 3 * n + 1));
        break;
    }
  }
  return memo_.try_emplace(key, std::move(value)).first->second;
}

MultiSeries TRecursion::aggregate(int m) {
  MultiSeries out;
  // Each step adds at most 3 to the largest part and at least 1: d <= m.
  for (int d = 1; d <= m; ++d) out += (*this)(d, m) * z_pow(d);
  return out;
}

MultiSeries t_recursive(int d, int m, TBase base) {
  if (d < 1 || m < 1) return MultiSeries();
  TRecursion rec(base);
  return rec(d, m);
}

MultiSeries t_brute(int d, int m, TBase base) {
  require_positive(d, "t_brute: d");
  const auto mode = base == TBase::SmallestThree ? SmallestPartMode::fixed(3) : SmallestPartMode::unrestricted();
  MultiSeries out;
  for_each_basal(SipClassB::p32(), d, mode, m, [&](std::span<const int> parts) {
    if (parts.back() != m) return;
    int size = 0;
    for (int v : parts) size += v;
    out.add_term(Monomial::q(size), 1);
  });
  return out;
}

MultiSeries cn_z(int n) {
  require_positive(n, "cn_z: n");
  MultiSeries out = qz(8, 2) + qz(12, 3);
  for (int i = 2; i <= n; ++i) {
    MultiSeries factor = qz(3 * i + 3, 1) + qz(6 * i + 2, 2) + qz(6 * i + 3, 2) + qz(6 * i + 4, 2) + qz(9 * i + 3, 3);
    out *= factor;
  }
  return out;
}

MultiSeries an_z(int n) {
  if (n < 2) throw InvalidArgument("an_z: n must be at least 2");
  return (q_pow(1) + qz(3 * n, 1)) * cn_z(n - 1);
}

MultiSeries bn_z(int n) {
  if (n < 2) throw InvalidArgument("bn_z: n must be at least 2");
  return (qz(3 * n + 1, 1) + qz(3 * n + 2, 1) + qz(6 * n + 1, 2)) * cn_z(n - 1);
}

MultiSeries cn_classical(int n) { return evaluate_at_one(cn_z(n), Var::q); }

MultiSeries cn_classical_trinomial(int n) {
  require_positive(n, "cn_classical_trinomial: n");
  MultiSeries out = z_pow(n + 1) + z_pow(n + 2);
  const MultiSeries tri = MultiSeries::one() + MultiSeries::term(Monomial::z(1), 3) + z_pow(2);
  for (int i = 0; i < n - 1; ++i) out *= tri;
  return out;
}

MultiSeries cn_classical_multinomial(int n) {
  require_positive(n, "cn_classical_multinomial: n");
  const int top = n - 1;
  std::vector<BigInt> fact(top + 1, 1);
  for (int i = 1; i <= top; ++i) fact[i] = fact[i - 1] * i;
  MultiSeries sum;
  for (int i = 0; i <= top; ++i) {
    for (int j = 0; i + j <= top; ++j) {
      const int k = top - i - j;
      BigInt three_i = 1;
      for (int t = 0; t < i; ++t) three_i *= 3;
      const BigInt c = fact[top] / (fact[i] * fact[j] * fact[k]) * three_i;
      sum.add_term(Monomial::z(i + 2 * j), c);
    }
  }
  return (z_pow(n + 1) + z_pow(n + 2)) * sum;
}

CheckReport verify_sdn(int d_max) {
  require_positive(d_max, "verify_sdn: d_max");
  CheckReport rep{"sdn"};
  int cells = 0;
  int theorem_mismatches = 0;
  bool ok = true;
  SRecursion rec;
  for (int d = 1; d <= d_max && ok; ++d) {
    // Two cells past each end of the support check that s vanishes there.
    for (int m = 1; m <= 2 * d + 2; ++m) {
      const MultiSeries brute = s_brute(d, m);
      const MultiSeries closed = s_closed(d, m);
      const bool inside = m >= d + 1 && m <= 2 * d;
      if (inside) ++cells;
      if (auto mm = first_mismatch(closed, brute)) {
        ok = false;
        rep.counterexample = to_json(*mm);
        (*rep.counterexample)["d"] = d;
        (*rep.counterexample)["m"] = m;
        (*rep.counterexample)["check"] = "s_closed vs s_brute";
        break;
      }
      if (!inside && !brute.is_zero()) {
        ok = false;
        rep.counterexample = nlohmann::json{{"d", d}, {"m", m}, {"check", "support bound"}};
        break;
      }
      if (auto mm = first_mismatch(rec(d, m), evaluate_at_one(closed, Var::x))) {
        ok = false;
        rep.counterexample = to_json(*mm);
        (*rep.counterexample)["d"] = d;
        (*rep.counterexample)["m"] = m;
        (*rep.counterexample)["check"] = "s_recursive vs s_closed at x=1";
        break;
      }
      if (m % 2 == 1 && !brute.is_zero() && s_closed(d, m, OddExponentForm::Theorem) != brute) ++theorem_mismatches;
    }
  }
  rep.ok = ok;
  rep.summary = ok ? "s_closed = s_brute on " + std::to_string(cells) + " cells" : "s_closed differs from s_brute";
  rep.detail = {{"d_max", d_max},
                {"cells", cells},
                {"odd_exponent_form", "lemma: 2n^2-2dn+d^2+3n"},
                {"theorem_form_mismatching_cells", theorem_mismatches}};
  return rep;
}

CheckReport verify_generating_function(int q_cap) {
  require_positive(q_cap, "verify_generating_function: q_cap");
  CheckReport rep{"generatingE"};
  const MultiSeries closed = full_series_D(q_cap);
  const MultiSeries enumerated = weighted_series_D(q_cap);
  auto mm = first_mismatch(closed, enumerated);
  rep.ok = !mm;
  if (mm) rep.counterexample = to_json(*mm);
  rep.summary = rep.ok ? "closed double sum = enumeration through q^" + std::to_string(q_cap)
                       : "closed double sum differs from enumeration";
  rep.detail = {{"q_cap", q_cap}, {"terms", closed.size()}};
  return rep;
}

CheckReport verify_t_family(int n_max) {
  require_positive(n_max, "verify_t_family: n_max");
  CheckReport rep{"t-family"};
  TRecursion rec;
  auto fail = [&](const std::string& check, int n, const std::optional<Mismatch>& mm) {
    rep.ok = false;
    rep.summary = check + " failed at n=" + std::to_string(n);
    rep.counterexample = mm ? to_json(*mm) : nlohmann::json::object();
    (*rep.counterexample)["check"] = check;
    (*rep.counterexample)["n"] = n;
    return rep;
  };

  const MultiSeries c1 = qz(8, 2) + qz(12, 3);
  if (auto mm = first_mismatch(rec.aggregate(5), c1)) return fail("c_1 initial condition", 1, mm);

  for (int n = 1; n <= n_max; ++n) {
    if (auto mm = first_mismatch(cn_z(n), rec.aggregate(3 * n + 2))) return fail("c_n product vs t recursion", n, mm);
    if (n >= 2) {
      if (auto mm = first_mismatch(an_z(n), rec.aggregate(3 * n))) return fail("a_n product vs t recursion", n, mm);
      if (auto mm = first_mismatch(bn_z(n), rec.aggregate(3 * n + 1))) return fail("b_n product vs t recursion", n, mm);
    }
    const MultiSeries classical = cn_classical(n);
    if (auto mm = first_mismatch(classical, cn_classical_trinomial(n))) return fail("classical limit vs trinomial", n, mm);
    if (auto mm = first_mismatch(classical, cn_classical_multinomial(n))) return fail("classical limit vs multinomial", n, mm);
    // Counts of basal partitions, smallest part 3 and largest part 3n+2.
    MultiSeries sizes;
    for (int d = 1; d <= 3 * n + 2; ++d) {
      const MultiSeries t = t_brute(d, 3 * n + 2);
      for (const auto& [m, c] : t.terms()) sizes.add_term(Monomial::z(d), c);
    }
    if (auto mm = first_mismatch(classical, sizes)) return fail("classical limit vs enumeration", n, mm);
  }

  // Derived forms t4-t6 against the defining recursion; they need the
  // part 3n-1 to exist above the fixed smallest part, so n >= 2.
  for (int n = 2; n <= n_max; ++n) {
    for (int d = 1; d <= 3 * n + 2; ++d) {
      const MultiSeries t4 = q_pow(1) * rec(d, 3 * n - 1) + q_pow(3 * n) * rec(d - 1, 3 * n - 1);
      if (auto mm = first_mismatch(rec(d, 3 * n), t4)) return fail("t4", n, mm);
      const MultiSeries t5 = (q_pow(3 * n + 1) + q_pow(3 * n + 2)) * rec(d - 1, 3 * n - 1) +
                             q_pow(6 * n + 1) * rec(d - 2, 3 * n - 1);
      if (auto mm = first_mismatch(rec(d, 3 * n + 1), t5)) return fail("t5", n, mm);
      const MultiSeries t6 = q_pow(3 * n + 3) * rec(d - 1, 3 * n - 1) +
                             (q_pow(6 * n + 2) + q_pow(6 * n + 3) + q_pow(6 * n + 4)) * rec(d - 2, 3 * n - 1) +
                             q_pow(9 * n + 3) * rec(d - 3, 3 * n - 1);
      if (auto mm = first_mismatch(rec(d, 3 * n + 2), t6)) return fail("t6", n, mm);
    }
  }

  rep.ok = true;
  rep.summary = "t-family identities hold for n <= " + std::to_string(n_max);
  rep.detail = {{"n_max", n_max}};
  return rep;
}

}  // namespace qpart
