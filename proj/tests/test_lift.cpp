#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wns/errors.hpp"
#include "wns/operators.hpp"

using namespace wns;

namespace {

double coeff_distance(const KondratievElement& a, const KondratievElement& b) {
  double err = 0.0;
  KondratievElement d = a - b;
  for (const auto& [alpha, c] : d.terms()) err = std::max(err, std::abs(c));
  return err;
}

}  // namespace

TEST_CASE("multiplication by H_1 in one variable is the scaled shift") {
  // d = 1, W = 1, k = 1: basis {vacuum, (1)}; the only nonzero entry is
  // (2*1)^{-1/2} on the subdiagonal.
  BasisPtr basis = make_basis(TruncationSpec(1, 1, 3, 1));
  OperatorMatrix m = mult_operator(KondratievElement::basis(MultiIndex::unit(1)), basis,
                                   basis, 1);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(std::abs(m.coords(1, 0) - Complex(1.0 / std::sqrt(2.0), 0.0)) <= 1e-15);
  CHECK(std::abs(m.coords(0, 0)) == 0.0);
  CHECK(std::abs(m.coords(0, 1)) == 0.0);
  CHECK(std::abs(m.coords(1, 1)) == 0.0);
  CHECK(m.operator_norm() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("symbol extraction inverts the lift") {
  TruncationSpec spec(2, 2, 3, 1);
  BasisPtr basis = make_basis(spec);
  std::mt19937_64 rng(23);
  for (int it = 0; it < 40; ++it) {
    KondratievElement x = oracle::random_element(rng, 2, 2, 4, 1.5);
    OperatorMatrix m = mult_operator(x, basis);
    CHECK(coeff_distance(extract_symbol(m), x) <= 1e-12);
  }
}

TEST_CASE("vacuum column reproduces the symbol coordinates") {
  // M_x applied to the vacuum is x itself: column 0 holds the coordinates
  // of x in the orthonormal basis.
  TruncationSpec spec(2, 2, 3, 1);
  BasisPtr basis = make_basis(spec);
  KondratievElement x = KondratievElement::scalar(2.0) +
                        KondratievElement::basis(MultiIndex::unit(2)) * Complex(0.0, 1.0);
  OperatorMatrix m = mult_operator(x, basis);
  for (int b = 0; b < basis->size(); ++b) {
    Complex expected = x.coefficient(basis->at(b)) *
                       std::exp(-0.5 * spec.k * basis->at(b).log_weight());
    CHECK(std::abs(m.coords(b, 0) - expected) <= 1e-15);
  }
}

TEST_CASE("lift is a homomorphism with degree padding") {
  // mult(x ∘ y): basis(W) -> basis(W + dx + dy) equals the product of the
  // rectangular lifts mult(x): basis(W + dy) -> basis(W + dx + dy) and
  // mult(y): basis(W) -> basis(W + dy). No truncation error at all.
  std::mt19937_64 rng(31);
  TruncationSpec spec(2, 2, 3, 1);
  BasisCache cache;
  for (int it = 0; it < 25; ++it) {
    KondratievElement x = oracle::random_element(rng, 2, 2, 3, 1.0);
    KondratievElement y = oracle::random_element(rng, 2, 2, 3, 1.0);
    int dx = x.degree(), dy = y.degree();
    BasisPtr in = cache.get(spec);
    BasisPtr mid = cache.get(spec.with_degree(spec.max_degree + dy));
    BasisPtr out = cache.get(spec.with_degree(spec.max_degree + dx + dy));
    OperatorMatrix lhs = mult_operator(wick_product(x, y), in, out, spec.k);
    Eigen::MatrixXcd rhs =
        mult_operator(x, mid, out, spec.k).coords * mult_operator(y, in, mid, spec.k).coords;
    CHECK((lhs.coords - rhs).norm() <= 1e-12);
  }
}

TEST_CASE("correlation-style products match the symbolic oracle") {
  // M*_x M_y compressed through an exact pad equals the brute-force Gram of
  // the symbolic Wick products.
  std::mt19937_64 rng(37);
  TruncationSpec spec(2, 2, 3, 1);
  BasisCache cache;
  BasisPtr base = cache.get(spec);
  for (int it = 0; it < 10; ++it) {
    KondratievElement x = oracle::random_element(rng, 2, 2, 3, 1.0);
    KondratievElement y = oracle::random_element(rng, 2, 2, 3, 1.0);
    int pad_deg = spec.max_degree + std::max(x.degree(), y.degree());
    BasisPtr pad = cache.get(spec.with_degree(pad_deg));
    Eigen::MatrixXcd lib = mult_operator(x, base, pad, spec.k).coords.adjoint() *
                           mult_operator(y, base, pad, spec.k).coords;
    Eigen::MatrixXcd ref = oracle::corr_matrix(x, y, *base, spec.k);
    CHECK((lib - ref).norm() <= 1e-12);
  }
}

TEST_CASE("lift guards: variable budget and basis compatibility") {
  BasisPtr basis3 = make_basis(TruncationSpec(3, 2, 3, 1));
  BasisPtr basis2 = make_basis(TruncationSpec(2, 2, 3, 1));
  KondratievElement x4 = KondratievElement::basis(MultiIndex::unit(4));
  CHECK_THROWS_AS(mult_operator(x4, basis3), VariableOutOfRange);
  KondratievElement x1 = KondratievElement::basis(MultiIndex::unit(1));
  CHECK_THROWS_AS(mult_operator(x1, basis2, basis3, 3), DimensionMismatch);
  CHECK_THROWS_AS(extract_symbol(OperatorMatrix{Eigen::MatrixXcd::Zero(2, 2), nullptr,
                                                nullptr, 3}),
                  std::invalid_argument);
}

TEST_CASE("adjoint and norms") {
  BasisPtr basis = make_basis(TruncationSpec(2, 2, 3, 1));
  std::mt19937_64 rng(41);
  KondratievElement x = oracle::random_element(rng, 2, 2, 4, 1.0);
  OperatorMatrix m = mult_operator(x, basis);
  OperatorMatrix ma = m.adjoint();
  CHECK((ma.coords - m.coords.adjoint()).norm() == 0.0);
  CHECK(m.operator_norm() == doctest::Approx(ma.operator_norm()).epsilon(1e-12));
  CHECK(m.frobenius_norm() >= m.operator_norm() - 1e-15);
}
