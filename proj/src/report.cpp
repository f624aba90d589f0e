#include "qpart/report.hpp"

namespace qpart {

std::optional<Mismatch> first_mismatch(const MultiSeries& lhs, const MultiSeries& rhs) {
  const MultiSeries diff = lhs - rhs;
  if (diff.is_zero()) return std::nullopt;
  const Monomial m = diff.terms().begin()->first;
  auto get = [&](const MultiSeries& s) {
    auto it = s.terms().find(m);
    return it == s.terms().end() ? BigInt(0) : it->second;
  };
  return Mismatch{m, get(lhs), get(rhs)};
}

nlohmann::json to_json(const Mismatch& m) {
  return {{"monomial", to_string(m.monomial)},
          {"e_q", m.monomial.e_q},
          {"e_a", m.monomial.e_a},
          {"e_x", m.monomial.e_x},
          {"e_z", m.monomial.e_z},
          {"lhs", m.lhs.get_str()},
          {"rhs", m.rhs.get_str()}};
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j{{"suite", r.suite}, {"status", r.ok ? "pass" : "fail"}, {"summary", r.summary}};
  for (const auto& [key, value] : r.detail.items()) j[key] = value;
  if (r.counterexample) j["first_mismatch"] = *r.counterexample;
  return j;
}

}  // namespace qpart
