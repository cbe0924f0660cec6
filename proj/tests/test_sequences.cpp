#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "decon/corpus.hpp"
#include "decon/errors.hpp"
#include "decon/sequence.hpp"

using namespace decon;

namespace {

WeightedSequence seq1d(long offset, std::vector<cplx> v) {
  size_t n = v.size();
  return WeightedSequence(1, {offset}, {n}, std::move(v));
}

}  // namespace

TEST_CASE("multi-index basics") {
  MultiIndex a{2, 1};
  CHECK(a.order() == 3);
  CHECK(MultiIndex{0, 0}.is_zero());
  CHECK(MultiIndex{1, 0}.leq(a));
  CHECK_FALSE(MultiIndex{0, 2}.leq(a));
  CHECK(a.minus(MultiIndex{1, 1}) == MultiIndex{1, 0});
  CHECK(binomial(MultiIndex{2, 1}, MultiIndex{1, 1}) == doctest::Approx(2.0));
  CHECK(binomial(MultiIndex{4}, MultiIndex{2}) == doctest::Approx(6.0));

  auto lower = MultiIndex::lower_set(a);
  CHECK(lower.size() == 6);
  CHECK(lower.front().is_zero());
  // sorted as a linear extension: no later element precedes an earlier one
  for (size_t i = 0; i < lower.size(); ++i)
    for (size_t j = i + 1; j < lower.size(); ++j)
      CHECK_FALSE((lower[j].leq(lower[i]) && lower[j] != lower[i]));
}

TEST_CASE("ipow uses the 0^0 = 1 convention") {
  CHECK(ipow(0.0, 0) == 1.0);
  CHECK(ipow(-3.0, 3) == -27.0);
}

TEST_CASE("apply_weight on the unit sequence") {
  WeightedSequence d = WeightedSequence::delta(1);
  CHECK(apply_weight(d, MultiIndex{1}).values()[0] == cplx(0.0, 0.0));
  CHECK(apply_weight(d, MultiIndex{0}).values()[0] == cplx(1.0, 0.0));
}

TEST_CASE("apply_weight evaluates k^alpha literally") {
  // k^2 a_k on {a_-1 = 1, a_0 = 2, a_1 = 3}
  WeightedSequence a = seq1d(-1, {{1, 0}, {2, 0}, {3, 0}});
  WeightedSequence w = apply_weight(a, MultiIndex{2});
  CHECK(w.values()[0] == cplx(1.0, 0.0));
  CHECK(w.values()[1] == cplx(0.0, 0.0));
  CHECK(w.values()[2] == cplx(3.0, 0.0));
  // odd exponents keep the sign of k
  WeightedSequence w1 = apply_weight(a, MultiIndex{1});
  CHECK(w1.values()[0] == cplx(-1.0, 0.0));
}

TEST_CASE("apply_weight dimension mismatch is an error") {
  WeightedSequence d = WeightedSequence::delta(2);
  CHECK_THROWS_AS(apply_weight(d, MultiIndex{1}), Error);
}

TEST_CASE("momentum oracles") {
  WeightedSequence d1 = WeightedSequence::delta(1);
  CHECK(momentum(d1, MultiIndex{3}, NormTag::l1).value == 0.0);
  CHECK(momentum(d1, MultiIndex{1}, NormTag::l2).value == 0.0);

  // hat autocorrelation: sum k^2 |a_k|^2 = 2 (1/6)^2
  WeightedSequence hat = seq1d(-1, {{1.0 / 6, 0}, {2.0 / 3, 0}, {1.0 / 6, 0}});
  CHECK(momentum(hat, MultiIndex{1}, NormTag::l2).value ==
        doctest::Approx(std::sqrt(2.0) / 6.0).epsilon(1e-14));

  WeightedSequence d2 = WeightedSequence::delta(2);
  CHECK(momentum(d2, MultiIndex{0, 0}, NormTag::l1).value == 1.0);
}

TEST_CASE("convolution oracles") {
  // {1,1} * {1,1} = {1,2,1}: polynomial multiplication
  WeightedSequence ones = seq1d(0, {{1, 0}, {1, 0}});
  WeightedSequence sq = convolve(ones, ones);
  CHECK(sq.offset()[0] == 0);
  REQUIRE(sq.size() == 3);
  CHECK(sq.values()[0] == cplx(1, 0));
  CHECK(sq.values()[1] == cplx(2, 0));
  CHECK(sq.values()[2] == cplx(1, 0));

  // offsets add
  WeightedSequence s1 = seq1d(-3, {{1, 0}});
  WeightedSequence s2 = seq1d(5, {{1, 0}});
  CHECK(convolve(s1, s2).offset()[0] == 2);
}

TEST_CASE("convolution with the unit is the identity, bit for bit") {
  std::mt19937_64 rng(11);
  WeightedSequence d = WeightedSequence::delta(1);
  for (int t = 0; t < 20; ++t) {
    WeightedSequence a = corpus::gaussian_1d(rng, 9);
    WeightedSequence c = convolve(a, d).trimmed();
    WeightedSequence at = a.trimmed();
    REQUIRE(c.size() == at.size());
    for (size_t i = 0; i < c.size(); ++i) CHECK(c.values()[i] == at.values()[i]);
  }
}

TEST_CASE("weight composition: X^alpha X^beta = X^(alpha+beta)") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    WeightedSequence a = corpus::enveloped_2d(rng, 5, 7);
    MultiIndex al{1, 2}, be{2, 0};
    WeightedSequence lhs = apply_weight(apply_weight(a, al), be);
    WeightedSequence rhs = apply_weight(a, al.plus(be));
    double scale = rhs.linf();
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * std::max(scale, 1.0));
  }
}

TEST_CASE("momentum monotonicity: l2 <= l1") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    WeightedSequence a = corpus::gaussian_1d(rng, 17);
    for (int e = 0; e <= 3; ++e) {
      double m2 = momentum(a, MultiIndex{e}, NormTag::l2).value;
      double m1 = momentum(a, MultiIndex{e}, NormTag::l1).value;
      CHECK(m2 <= m1 * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("convolution is commutative and associative on a random corpus") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    WeightedSequence a = corpus::gaussian_1d(rng, 7);
    WeightedSequence b = corpus::gaussian_1d(rng, 5);
    WeightedSequence c = corpus::gaussian_1d(rng, 9);
    double scale = std::max(1.0, convolve(a, b).linf() * c.linf());
    CHECK(max_abs_diff(convolve(a, b), convolve(b, a)) <= 1e-10 * scale);
    CHECK(max_abs_diff(convolve(convolve(a, b), c),
                       convolve(a, convolve(b, c))) <= 1e-10 * scale);
  }
}

TEST_CASE("residual against the unit sequence") {
  WeightedSequence d = WeightedSequence::delta(1);
  CHECK(residual_from_delta(d) == 0.0);
  WeightedSequence off = seq1d(3, {{1, 0}});  // origin outside the box
  CHECK(residual_from_delta(off) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("trim removes zero boundary slabs and keeps content") {
  WeightedSequence a = seq1d(-2, {{0, 0}, {0, 0}, {5, 0}, {0, 0}});
  WeightedSequence t = a.trimmed();
  CHECK(t.size() == 1);
  CHECK(t.offset()[0] == 0);
  CHECK(t.values()[0] == cplx(5, 0));
  CHECK(seq1d(4, {{0, 0}, {0, 0}}).trimmed().size() == 1);  // canonical zero
}

TEST_CASE("non-finite values are rejected") {
  CHECK_THROWS_AS(seq1d(0, {{std::nan(""), 0.0}}), Error);
  CHECK_THROWS_AS(seq1d(0, {{0.0, INFINITY}}), Error);
}
