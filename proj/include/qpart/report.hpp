#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qpart/series.hpp"

namespace qpart {

struct Mismatch {
  Monomial monomial;
  BigInt lhs;
  BigInt rhs;
};

// First monomial (canonical order) where the two series differ.
std::optional<Mismatch> first_mismatch(const MultiSeries& lhs, const MultiSeries& rhs);

nlohmann::json to_json(const Mismatch& m);

// Outcome of one identity check.
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string name) : suite(std::move(name)) {}

  std::string suite;
  bool ok = false;
  std::string summary;
  nlohmann::json detail = nlohmann::json::object();
  std::optional<nlohmann::json> counterexample;
};

nlohmann::json to_json(const CheckReport& r);

}  // namespace qpart
