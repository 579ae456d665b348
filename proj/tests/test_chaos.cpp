#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wns/basis.hpp"
#include "wns/chaos.hpp"
#include "wns/errors.hpp"

using namespace wns;

TEST_CASE("multi-index arithmetic and dense round trip") {
  MultiIndex a = MultiIndex::from_dense(std::vector<int>{1, 2});
  CHECK(a.degree() == 3);
  CHECK(a.max_position() == 2);
  CHECK(a.exponent(1) == 1);
  CHECK(a.exponent(2) == 2);
  CHECK(a.exponent(3) == 0);
  CHECK(MultiIndex::from_dense(a.dense()) == a);

  MultiIndex e1 = MultiIndex::unit(1);
  MultiIndex e3 = MultiIndex::unit(3);
  MultiIndex sum = e1.plus(e3);
  CHECK(sum.dense() == std::vector<int>{1, 0, 1});
  CHECK(sum.minus(e3).value() == e1);
  CHECK(!e1.minus(e3).has_value());
  CHECK(MultiIndex{}.empty());
}

TEST_CASE("graded lexicographic order matches the documented listing") {
  // Two variables, degree two: [] < (1) < (0,1) < (2) < (1,1) < (0,2).
  auto basis = enumerate_basis(TruncationSpec(2, 2)).indices();
  REQUIRE(basis.size() == 6);
  CHECK(basis[0] == MultiIndex{});
  CHECK(basis[1] == MultiIndex::from_dense(std::vector<int>{1}));
  CHECK(basis[2] == MultiIndex::from_dense(std::vector<int>{0, 1}));
  CHECK(basis[3] == MultiIndex::from_dense(std::vector<int>{2}));
  CHECK(basis[4] == MultiIndex::from_dense(std::vector<int>{1, 1}));
  CHECK(basis[5] == MultiIndex::from_dense(std::vector<int>{0, 2}));

  // The degree-(W-1) enumeration is a prefix of the degree-W one: this is
  // what makes square compressions exact projections.
  auto smaller = enumerate_basis(TruncationSpec(2, 1)).indices();
  REQUIRE(smaller.size() == 3);
  for (std::size_t i = 0; i < smaller.size(); ++i) CHECK(smaller[i] == basis[i]);
}

TEST_CASE("weights: (2N)^{k alpha} reference values") {
  // alpha = (1,2): (2*1)^1 (2*2)^2 = 32 at k = 1.
  CHECK(weight(MultiIndex::from_dense(std::vector<int>{1, 2}), 1) == doctest::Approx(32.0));
  // alpha = (0,0,1): (2*3)^2 = 36 at k = 2.
  CHECK(weight(MultiIndex::from_dense(std::vector<int>{0, 0, 1}), 2) ==
        doctest::Approx(36.0));
  CHECK(weight(MultiIndex{}, 7) == doctest::Approx(1.0));
  CHECK(std::exp(weight_log(MultiIndex::from_dense(std::vector<int>{1, 2}), 1)) ==
        doctest::Approx(32.0));
  // A degree-400 exponent at position 1 overflows (2^400 k=3).
  CHECK_THROWS_AS(weight(MultiIndex::from_entries({{1, 400}}), 3), WeightOverflow);
}

TEST_CASE("wick product basics and hand values") {
  MultiIndex e1 = MultiIndex::unit(1);
  MultiIndex e2 = MultiIndex::unit(2);
  KondratievElement h1 = KondratievElement::basis(e1);
  KondratievElement h2 = KondratievElement::basis(e2);

  CHECK(wick_product(h1, h1) == KondratievElement::basis(MultiIndex::from_entries({{1, 2}})));

  // (1 + 2 H_1) ∘ (3 + H_2) = 3 + H_2 + 6 H_1 + 2 H_{(1,1)}.
  KondratievElement f = KondratievElement::scalar(1.0) + h1 * Complex(2.0, 0.0);
  KondratievElement g = KondratievElement::scalar(3.0) + h2;
  KondratievElement p = wick_product(f, g);
  CHECK(p.coefficient(MultiIndex{}) == Complex(3.0, 0.0));
  CHECK(p.coefficient(e2) == Complex(1.0, 0.0));
  CHECK(p.coefficient(e1) == Complex(6.0, 0.0));
  CHECK(p.coefficient(e1.plus(e2)) == Complex(2.0, 0.0));

  // Scalar factor acts as plain scaling.
  KondratievElement s = KondratievElement::scalar(Complex(0.0, 2.0));
  CHECK(wick_product(s, f) == f * Complex(0.0, 2.0));

  // Against the dense-arithmetic oracle on random elements.
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    KondratievElement a = oracle::random_element(rng, 4, 3, 5, 1.0);
    KondratievElement b = oracle::random_element(rng, 4, 3, 5, 1.0);
    KondratievElement lib = wick_product(a, b);
    KondratievElement ref = oracle::wick(a, b);
    KondratievElement diff = lib - ref;
    double err = 0.0;
    for (const auto& [alpha, c] : diff.terms()) err = std::max(err, std::abs(c));
    CHECK(err <= 1e-12);
  }
}

TEST_CASE("graded and chaos norms: reference values") {
  MultiIndex e1 = MultiIndex::unit(1);
  CHECK(hk_norm(KondratievElement::basis(e1), 1) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  KondratievElement f = KondratievElement::scalar(3.0) +
                        KondratievElement::basis(e1) * Complex(4.0, 0.0);
  // 9 + 16/4 = 13 at k = 2.
  CHECK(hk_norm(f, 2) == doctest::Approx(std::sqrt(13.0)).epsilon(1e-14));

  // ||H_(3)||_W = sqrt(3!) and ||H_(1,2)||_W = sqrt(1! 2!).
  CHECK(l2w_norm(KondratievElement::basis(MultiIndex::from_entries({{1, 3}}))) ==
        doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  CHECK(l2w_norm(KondratievElement::basis(
            MultiIndex::from_entries({{1, 1}, {2, 2}}))) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(l2w_norm(KondratievElement::basis(MultiIndex::from_entries({{1, 200}}))),
                  WeightOverflow);

  // hk_norm is monotone decreasing in k (heavier damping).
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    KondratievElement g = oracle::random_element(rng, 3, 3, 6, 2.0);
    CHECK(hk_norm(g, 3) <= hk_norm(g, 2) * (1.0 + 1e-12));
    CHECK(hk_norm(g, 2) <= hk_norm(g, 1) * (1.0 + 1e-12));
  }
}

TEST_CASE("truncation spec validation and cardinality") {
  CHECK(TruncationSpec(3, 2).basis_cardinality() == 10);
  CHECK(TruncationSpec(2, 2).basis_cardinality() == 6);
  CHECK(TruncationSpec(1, 0).basis_cardinality() == 1);
  CHECK(TruncationSpec(4, 3).basis_cardinality() == 35);
  CHECK_THROWS_AS(TruncationSpec(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(TruncationSpec(2, -1), std::invalid_argument);
  CHECK_THROWS_AS(TruncationSpec(2, 2, 2, 1), std::invalid_argument);  // k = ell + 1
  CHECK_THROWS_AS(TruncationSpec(2, 2, 3, 0), std::invalid_argument);
}

TEST_CASE("norm-bound constant: closed form and divergence") {
  // A(2) = sqrt(pi/2) via prod (1 - 1/(2j)^2)^{-1/2} = (2/pi)^{-1/2}.
  CHECK(std::abs(vage_constant(2) - std::sqrt(std::numbers::pi / 2.0)) <= 1e-10);
  // Large gap: the first factor dominates, the rest contribute < 1e-7.
  CHECK(std::abs(vage_constant(12) - 1.0 / std::sqrt(1.0 - std::pow(2.0, -12.0))) <= 1e-7);
  CHECK(vage_constant(3) > 1.0);
  CHECK_THROWS_AS(vage_constant(1), DivergentSeries);
}

TEST_CASE("norm inequality holds on random pairs") {
  TruncationSpec spec(3, 3, 3, 1);
  std::mt19937_64 rng(17);
  double max_ratio = 0.0;
  for (int it = 0; it < 100; ++it) {
    KondratievElement h = oracle::random_element(rng, 3, 3, 5, 2.0);
    KondratievElement f = oracle::random_element(rng, 3, 3, 5, 2.0);
    VageReport rep = vage_check(h, f, spec);
    CHECK(rep.satisfied);
    if (rep.rhs > 0) max_ratio = std::max(max_ratio, rep.lhs / rep.rhs);
  }
  // The bound must not be vacuous: some pair should get within a factor 50.
  CHECK(max_ratio > 0.02);
}

TEST_CASE("basis enumeration caps and ordinals") {
  TruncationSpec spec(3, 2);
  BasisPtr basis = make_basis(spec);
  REQUIRE(basis->size() == 10);
  CHECK(basis->at(0) == MultiIndex{});
  for (int i = 0; i < basis->size(); ++i) CHECK(basis->ordinal(basis->at(i)) == i);
  CHECK(basis->ordinal(MultiIndex::from_entries({{1, 3}})) == -1);  // beyond degree
  CHECK_THROWS_AS(enumerate_basis(TruncationSpec(40, 12), 1000), TruncationTooLarge);
}
