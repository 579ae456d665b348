#include <cmath>
#include <random>

#include "doctest.h"
#include "wns/errors.hpp"
#include "wns/factorization.hpp"
#include "wns/laurent.hpp"
#include "wns/scalar_wiener.hpp"

using namespace wns;

namespace {

OperatorLaurent scalar_laurent(std::initializer_list<std::pair<long, Complex>> coeffs) {
  OperatorLaurent a(1);
  for (const auto& [lag, c] : coeffs) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = c;
    a.set_coefficient(lag, m);
  }
  return a;
}

OperatorLaurent random_laurent(std::mt19937_64& rng, int dim, long band, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  OperatorLaurent a(dim);
  for (long lag = -band; lag <= band; ++lag) {
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = Complex(u(rng), u(rng));
    a.set_coefficient(lag, m);
  }
  return a;
}

}  // namespace

TEST_CASE("laurent arithmetic basics") {
  OperatorLaurent a = scalar_laurent({{-1, 1.0}, {0, 2.5}, {1, 1.0}});
  CHECK(a.band() == 1);
  CHECK(a.coefficient(0)(0, 0) == Complex(2.5, 0.0));
  CHECK(a.coefficient(7).norm() == 0.0);

  // Exact zeros are dropped from the support.
  OperatorLaurent b = a;
  b.set_coefficient(5, Eigen::MatrixXcd::Zero(1, 1));
  CHECK(b.band() == 1);
  b.add_to_coefficient(1, -Eigen::MatrixXcd::Ones(1, 1));
  CHECK(b.max_lag() == 0);

  // para_adjoint flips lags and conjugates.
  OperatorLaurent c = scalar_laurent({{2, Complex(0.0, 3.0)}});
  CHECK(para_adjoint(c).coefficient(-2)(0, 0) == Complex(0.0, -3.0));

  // Causal / strictly-anticausal split partitions the support.
  OperatorLaurent cp = causal_part(a), ap = strict_anticausal_part(a);
  CHECK(cp.min_lag() == 0);
  CHECK(ap.max_lag() == -1);
  CHECK(wiener_norm(cp + ap - a) == 0.0);

  CHECK(truncate(a, 0).band() == 0);
  CHECK(eval_at(a, 0.0)(0, 0).real() == doctest::Approx(4.5));
  CHECK(eval_at(a, M_PI)(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("wiener norm is submultiplicative and multiply matches convolution") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20; ++it) {
    OperatorLaurent a = random_laurent(rng, 3, 2, 1.0);
    OperatorLaurent b = random_laurent(rng, 3, 3, 1.0);
    OperatorLaurent p = multiply(a, b);
    CHECK(p.band() <= 5);
    CHECK(wiener_norm(p) <= wiener_norm(a) * wiener_norm(b) * (1.0 + 1e-12));
    // Pointwise on the circle the product is the product of values.
    for (double omega : {0.0, 0.7, 2.1}) {
      Eigen::MatrixXcd lhs = eval_at(p, omega);
      Eigen::MatrixXcd rhs = eval_at(a, omega) * eval_at(b, omega);
      CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }
  }
  OperatorLaurent a = random_laurent(rng, 2, 1, 1.0);
  OperatorLaurent wrong = random_laurent(rng, 3, 1, 1.0);
  CHECK_THROWS_AS(multiply(a, wrong), DimensionMismatch);
}

TEST_CASE("circle sampling round trip and aliasing guard") {
  std::mt19937_64 rng(13);
  OperatorLaurent a = random_laurent(rng, 2, 3, 1.0);
  auto samples = sample_circle(a, 16);
  OperatorLaurent back = coeffs_from_samples(samples, -3, 3);
  CHECK(wiener_norm(back - a) <= 1e-12);

  CHECK_THROWS_AS(sample_circle(a, 6), AliasingRisk);   // 6 <= 2*band
  CHECK(default_sample_count(3) == 32);
  CHECK(default_sample_count(0) == 32);  // > max(16, 0)
}

TEST_CASE("positivity check: margins and hermitian defect") {
  // 2.5 + 2cos(omega): minimum 0.5 at omega = pi.
  OperatorLaurent s = scalar_laurent({{-1, 1.0}, {0, 2.5}, {1, 1.0}});
  PositivityReport pr = positivity_check(s, 64, 1e-8);
  CHECK(pr.positive);
  CHECK(pr.min_eigenvalue == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(pr.hermitian_defect <= 1e-14);

  // 2 + 2cos(omega): touches zero at omega = pi (on the sample grid).
  OperatorLaurent z = scalar_laurent({{-1, 1.0}, {0, 2.0}, {1, 1.0}});
  PositivityReport zr = positivity_check(z, 64, 1e-8);
  CHECK(!zr.positive);
  CHECK(std::abs(zr.min_eigenvalue) <= 1e-12);

  // A non-Hermitian symbol reports its defect.
  OperatorLaurent nh = scalar_laurent({{1, 1.0}});
  PositivityReport nr = positivity_check(nh, 32, 0.0);
  CHECK(nr.hermitian_defect > 0.5);
}

TEST_CASE("scalar spectral factorization: 2.5 + 2cos recovers (sqrt2, 1/sqrt2)") {
  OperatorLaurent s = scalar_laurent({{-1, 1.0}, {0, 2.5}, {1, 1.0}});
  FactorizationResult fr = spectral_factorize(s);
  CHECK(fr.defect <= 1e-10);
  CHECK(std::abs(fr.w_plus.coefficient(0)(0, 0) - Complex(std::sqrt(2.0), 0.0)) <= 1e-10);
  CHECK(std::abs(fr.w_plus.coefficient(1)(0, 0) - Complex(1.0 / std::sqrt(2.0), 0.0)) <=
        1e-10);
  // Reconstruction in exact Laurent arithmetic.
  OperatorLaurent rec = multiply(para_adjoint(fr.w_plus), fr.w_plus);
  CHECK(wiener_norm(truncate(rec, 1) - s) <= 1e-10);

  CHECK_THROWS_AS(spectral_factorize(scalar_laurent({{-1, 1.0}, {0, 2.0}, {1, 1.0}})),
                  NotPositive);
}

TEST_CASE("matrix factorization: gauge and reconstruction") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 5; ++it) {
    const int dim = 4;
    // Build S = T~ T from a well-conditioned causal T.
    OperatorLaurent t(dim);
    Eigen::MatrixXcd t0 = Eigen::MatrixXcd::Identity(dim, dim);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXcd r(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) r(i, j) = Complex(u(rng), u(rng));
    t0 += 0.2 / operator_norm(r) * r;
    t.set_coefficient(0, t0);
    for (long lag = 1; lag <= 2; ++lag) {
      Eigen::MatrixXcd m(dim, dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(u(rng), u(rng));
      t.set_coefficient(lag, 0.15 / operator_norm(m) * m);
    }
    OperatorLaurent s = multiply(para_adjoint(t), t);
    FactorizationResult fr = spectral_factorize(s);
    CHECK(fr.defect <= 1e-10);
    // Gauge: lag-0 coefficient lower triangular with positive diagonal.
    Eigen::MatrixXcd w0 = fr.w_plus.coefficient(0);
    for (int i = 0; i < dim; ++i) {
      CHECK(w0(i, i).imag() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(w0(i, i).real() > 0.0);
      for (int j = i + 1; j < dim; ++j) CHECK(std::abs(w0(i, j)) <= 1e-10);
    }
    // Min eigenvalue reported matches a positive spectrum.
    CHECK(fr.min_eigenvalue > 0.0);
  }
}

TEST_CASE("causal inversion: geometric series and guards") {
  OperatorLaurent w = scalar_laurent({{0, 1.0}, {1, 0.25}});
  CausalInverseResult inv = causal_invert(w, 64);
  for (long n = 0; n <= 6; ++n)
    CHECK(std::abs(inv.series.coefficient(n)(0, 0) - std::pow(Complex(-0.25, 0.0), n)) <=
          1e-14);
  CHECK(inv.defect <= 1e-30);

  CHECK_THROWS_AS(causal_invert(scalar_laurent({{0, 0.0}, {1, 1.0}}), 8),
                  SingularLeadCoefficient);
  CHECK_THROWS_AS(causal_invert(scalar_laurent({{-1, 1.0}, {0, 1.0}}), 8),
                  std::invalid_argument);
}

TEST_CASE("wiener-algebra inverse of 2.5 + 2cos has geometric coefficients") {
  // 1 / (2.5 + 2cos) has Fourier coefficients (2/3) (-1/2)^{|n|}.
  OperatorLaurent s = scalar_laurent({{-1, 1.0}, {0, 2.5}, {1, 1.0}});
  InversionResult inv = invert_via_factorization(s, 40);
  for (long n = -6; n <= 6; ++n) {
    Complex expected = (2.0 / 3.0) * std::pow(Complex(-0.5, 0.0), std::abs(n));
    CHECK(std::abs(inv.inverse.coefficient(n)(0, 0) - expected) <= 1e-10);
  }
  CHECK(inv.defect <= 1e-9);
  CHECK(inv.factorization_defect <= 1e-10);
}

TEST_CASE("independent scalar pipeline agrees with the operator pipeline on 1x1") {
  scalar::Series s{{-1, 1.0}, {0, 2.5}, {1, 1.0}};
  scalar::Series w = scalar::factorize(s);
  CHECK(std::abs(w[0] - std::sqrt(2.0)) <= 1e-10);
  CHECK(std::abs(w[1] - 1.0 / std::sqrt(2.0)) <= 1e-10);

  auto [a, b] = scalar::factor_band1(2.5, 1.0);
  CHECK(a == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(b - 1.0 / std::sqrt(2.0)) <= 1e-14);
  CHECK_THROWS_AS(scalar::factor_band1(2.0, 1.0), NotPositive);

  scalar::Series binv = scalar::causal_invert(w, 48);
  scalar::Series prod = scalar::multiply(w, binv);
  prod[0] -= 1.0;
  CHECK(scalar::wiener_norm(prod) <= 1e-12);
}
