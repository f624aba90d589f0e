#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qpart/partition.hpp"
#include "qpart/report.hpp"
#include "qpart/series.hpp"

namespace qpart {

// Generating function of basal billiard partitions with d parts and largest
// part m, weight tracked by x.
struct SdnTerm {
  int d;
  int m;
  MultiSeries series;
};

// Same for basal partitions of P_{3,2}, no weight variable.
struct TdmTerm {
  int d;
  int m;
  MultiSeries series;
};

// Two printed variants of the odd-m exponent. Only Lemma agrees with
// enumeration (3+2 has size 5; the other variant gives q^4).
enum class OddExponentForm { Lemma, Theorem };

// Closed form with a Gaussian binomial in q^2; zero outside d+1 <= m <= 2d.
MultiSeries s_closed(int d, int m, OddExponentForm form = OddExponentForm::Lemma);

// Direct sum over enumerated basal partitions.
MultiSeries s_brute(int d, int m);

// Memoized recursion with x = 1: s(d,2n) = q^{2n}(s(d-1,2n-2) + s(d-1,2n-1)),
// s(d,2n+1) = q^{2n+1} s(d-1,2n), s(1,2) = q^2.
class SRecursion {
 public:
  const MultiSeries& operator()(int d, int m);

 private:
  std::map<std::pair<int, int>, MultiSeries> memo_;
};

MultiSeries s_recursive(int d, int m);

std::vector<SdnTerm> s_table(int d_max);

// s_n(z) = q^{n(n+1)} z^n prod_{i=1}^{n-1} (1 + q^{2i+1} z).
MultiSeries sn_z(int n);
// sum_d q^{2n^2-2dn-n+d^2+2d} [n-1 choose d-n]_{q^2} z^d.
MultiSeries sn_z_binomial(int n);
// sum_d s_recursive(d, 2n) z^d.
MultiSeries sn_z_recursive(int n);

// 1 + sum_d sum_m s(d,m) / (q^2;q^2)_d, truncated at q^{q_cap}.
MultiSeries full_series_D(int q_cap, OddExponentForm form = OddExponentForm::Lemma);

// Base of the t-recursion. SmallestThree (t(1,3) = q^3 only) is the variant
// behind c_1(z) = q^8 z^2 + q^12 z^3.
enum class TBase { SmallestThree, Unrestricted };

class TRecursion {
 public:
  explicit TRecursion(TBase base = TBase::SmallestThree) : base_(base) {}
  const MultiSeries& operator()(int d, int m);
  // sum_d t(d,m) z^d
  MultiSeries aggregate(int m);

 private:
  TBase base_;
  std::map<std::pair<int, int>, MultiSeries> memo_;
};

MultiSeries t_recursive(int d, int m, TBase base = TBase::SmallestThree);

// Direct sum over enumerated P_{3,2} basal partitions (smallest part 3 for
// SmallestThree, any for Unrestricted).
MultiSeries t_brute(int d, int m, TBase base = TBase::SmallestThree);

// Product forms in z and q.
MultiSeries cn_z(int n);
MultiSeries an_z(int n);  // n >= 2
MultiSeries bn_z(int n);  // n >= 2

// c_n(z) at q = 1.
MultiSeries cn_classical(int n);
// (z^{n+1} + z^{n+2})(1 + 3z + z^2)^{n-1}
MultiSeries cn_classical_trinomial(int n);
// (z^{n+1} + z^{n+2}) sum_{i+j+k=n-1} (n-1)!/(i!j!k!) 3^i z^{i+2j}
MultiSeries cn_classical_multinomial(int n);

CheckReport verify_sdn(int d_max);
CheckReport verify_generating_function(int q_cap);
CheckReport verify_t_family(int n_max);

}  // namespace qpart
