#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "doctest_printers.hpp"

#include <set>

#include "qpart/errors.hpp"
#include "qpart/schroeder.hpp"

using namespace qpart;

namespace {

// Catalan numbers by counting ballot sequences: +1 for Right, -1 for Up,
// prefix sums never negative.
long ballot_count(int n) {
  long count = 0;
  for (unsigned mask = 0; mask < (1u << (2 * n)); ++mask) {
    int h = 0, rights = 0;
    bool ok = true;
    for (int i = 0; i < 2 * n && ok; ++i) {
      const bool right = (mask >> i) & 1u;
      h += right ? 1 : -1;
      rights += right;
      ok = h >= 0;
    }
    if (ok && h == 0 && rights == n) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("paths and weights") {
  CHECK(enumerate_paths(0).size() == 1);
  const auto one = enumerate_paths(1);
  REQUIRE(one.size() == 2);
  CHECK(one[0].to_string() == "RU");
  CHECK(one[1].to_string() == "D");

  const SchroederPath figure = SchroederPath::parse("RDRUU");
  CHECK(figure.n() == 3);
  CHECK(figure.diagonals() == 1);
  CHECK(figure.twice_area() == 6);
  CHECK(path_weight(figure) == Monomial{6, 1, 3, 0});
  const auto three = enumerate_paths(3);
  CHECK(std::find(three.begin(), three.end(), figure) != three.end());

  CHECK(path_weight(SchroederPath::parse("RU")) == Monomial{1, 0, 1, 0});
  for (int n = 0; n <= 6; ++n) {
    const SchroederPath diag = SchroederPath::parse(std::string(n, 'D'));
    CHECK(path_weight(diag) == Monomial{0, n, n, 0});
    CHECK(diag.twice_area() == 0);
  }
  CHECK_THROWS_AS(SchroederPath::parse("UR"), InvalidArgument);
  CHECK_THROWS_AS(SchroederPath::parse("RRU"), InvalidArgument);
  CHECK_THROWS_AS(SchroederPath::parse("RX"), InvalidArgument);
}

TEST_CASE("path invariants") {
  for (int n = 0; n <= 7; ++n) {
    std::set<std::string> seen;
    for (const auto& p : enumerate_paths(n)) {
      CHECK(seen.insert(p.to_string()).second);
      int x = 0, y = 0, rights = 0, ups = 0;
      for (Step s : p.steps()) {
        if (s != Step::Up) ++x;
        if (s != Step::Right) ++y;
        rights += s == Step::Right;
        ups += s == Step::Up;
        CHECK(y <= x);
      }
      CHECK(rights == ups);
      CHECK(p.n() == rights + p.diagonals());
      CHECK(p.twice_area() >= 0);
      CHECK((p.twice_area() == 0) == (p.diagonals() == n));
      CHECK(p.twice_area() <= n * n);
    }
  }
}

TEST_CASE("path counts") {
  const auto S = large_schroeder_numbers(10);
  CHECK(S[4] == 90);
  for (int n = 0; n <= 10; ++n) CHECK(BigInt(static_cast<unsigned long>(enumerate_paths(n).size())) == S[n]);
}

TEST_CASE("Schroeder series") {
  const MultiSeries s = schroeder_series(8);
  CHECK(s.coefficient(Monomial{}) == 1);
  CHECK(s.x_slice(1) == MultiSeries::term({0, 1, 1, 0}) + MultiSeries::term({1, 0, 1, 0}));
  CHECK(s.coefficient({6, 1, 3, 0}) >= 1);
  const MultiSeries at_one = evaluate_at_one(evaluate_at_one(s, Var::q), Var::a);
  const std::vector<long> large{1, 2, 6, 22, 90};
  for (int n = 0; n < 5; ++n) CHECK(at_one.coefficient(Monomial::x(n)) == large[n]);
  // a = 0 keeps Right/Up paths only
  const MultiSeries no_diag = s.coefficient_of(Var::a, 0);
  for (int n = 0; n <= 8; ++n) {
    BigInt total = 0;
    const MultiSeries slice = no_diag.x_slice(n);
    for (const auto& [m, c] : slice.terms()) total += c;
    CHECK(total == ballot_count(n));
  }
}

TEST_CASE("leading factor") {
  const MultiSeries r = MultiSeries::one() + MultiSeries::term({1, 0, 1, 0});
  const MonomialFactor f{-2, {3, 1, 0, 0}};
  CHECK(leading_factor(scale(r, f), r).coeff == -2);
  CHECK(leading_factor(scale(r, f), r).monomial == Monomial{3, 1, 0, 0});
  CHECK(to_string(f) == "-2aq^3");
  CHECK_THROWS_AS(leading_factor(MultiSeries::constant(3), MultiSeries::constant(2)), InconsistentFactor);
  CHECK_THROWS_AS(leading_factor(MultiSeries(), r), InconsistentFactor);
}

TEST_CASE("quotient slices") {
  const MultiSeries Q = schroeder_quotient(2, 12, QuotientConvention::SignedFirstNode);
  CHECK(Q.x_slice(0) == MultiSeries::one());
  CHECK(Q.x_slice(1) == schroeder_series(1).x_slice(1));
  const MultiSeries L = schroeder_quotient(2, 12, QuotientConvention::Literal);
  // literal substitution: a - q
  CHECK(L.x_slice(1) == MultiSeries::term({0, 1, 1, 0}) - MultiSeries::term({1, 0, 1, 0}));
  CHECK(L.x_slice(2) == MultiSeries::term({2, 0, 2, 0}) + MultiSeries::term({4, 0, 2, 0}) -
                            MultiSeries::term({1, 1, 2, 0}, 2) - MultiSeries::term({3, 1, 2, 0}) +
                            MultiSeries::term({0, 2, 2, 0}));
}

TEST_CASE("quotient identity") {
  const CheckReport rep = verify_schroeder_quotient(6);
  const auto j = to_json(rep);
  CHECK(rep.ok);
  CHECK(j["factor_F"] == "1");
  CHECK(j["stable"] == true);
  CHECK(j["leakage_terms"] == 0);
  CHECK(j["q_cap"] == 36 + 12);
  CHECK(j["literal_convention"]["status"] == "fail");

  const CheckReport literal = verify_schroeder_quotient(4, std::nullopt, QuotientConvention::Literal);
  CHECK_FALSE(literal.ok);
  CHECK(to_json(literal)["diagnosis"].get<std::string>().find("q -> -q") != std::string::npos);
  REQUIRE(literal.counterexample);

  // a q_cap right at the window still works; below it is refused
  CHECK(verify_schroeder_quotient(4, 16).ok);
  CHECK_THROWS_AS(verify_schroeder_quotient(4, 15), InvalidArgument);
  CHECK_THROWS_AS(verify_schroeder_quotient(0), InvalidArgument);
}
