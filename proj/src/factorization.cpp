#include "wns/factorization.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wns/errors.hpp"
#include "wns/operators.hpp"

namespace wns {

CausalInverseResult causal_invert(const OperatorLaurent& w, long out_band) {
  if (w.empty()) throw SingularLeadCoefficient("cannot invert the zero series");
  if (w.min_lag() < 0)
    throw std::invalid_argument("causal_invert: series has negative lags");
  if (out_band < 0) throw std::invalid_argument("causal_invert: out_band must be >= 0");

  const int dim = w.dim();
  Eigen::MatrixXcd a0 = w.coefficient(0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smin = svd.singularValues()(dim - 1);
  double smax = svd.singularValues()(0);
  if (smin <= 0.0 || smin < 1e-14 * smax)
    throw SingularLeadCoefficient("lag-0 coefficient is singular (sigma_min = " +
                                  format_quantity(smin) + ")");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a0);
  Eigen::MatrixXcd a0inv = lu.solve(Eigen::MatrixXcd::Identity(dim, dim));

  OperatorLaurent b(dim);
  b.set_coefficient(0, a0inv);
  for (long n = 1; n <= out_band; ++n) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (long m = 1; m <= n && m <= w.max_lag(); ++m)
      acc += w.coefficient(m) * b.coefficient(n - m);
    b.set_coefficient(n, -(a0inv * acc));
  }

  CausalInverseResult out;
  out.series = b;
  out.defect = wiener_norm(multiply(w, b) - OperatorLaurent::identity(dim));
  return out;
}

namespace {

// Unitary U with U * t0 lower triangular and positive real diagonal,
// obtained from a QR factorization of the row/column-flipped matrix.
Eigen::MatrixXcd lower_normalizer(const Eigen::MatrixXcd& t0) {
  const long n = t0.rows();
  Eigen::MatrixXcd flipped = t0.rowwise().reverse().colwise().reverse();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(flipped);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = q.adjoint() * flipped;
  // Unflip: t0 = (J q J)(J r J) with J r J lower triangular; rotate the
  // diagonal phases onto q so the triangular factor's diagonal is positive.
  Eigen::VectorXcd phase(n);
  for (long i = 0; i < n; ++i) {
    std::complex<double> d = r(i, i);
    phase(i) = std::abs(d) > 0.0 ? d / std::abs(d) : std::complex<double>(1.0, 0.0);
  }
  Eigen::MatrixXcd v = q * phase.asDiagonal();          // still unitary
  Eigen::MatrixXcd vj = v.rowwise().reverse().colwise().reverse();
  return vj.adjoint();
}

}  // namespace

FactorizationResult spectral_factorize(const OperatorLaurent& s,
                                       const FactorizationOptions& opts) {
  if (s.empty()) throw NotPositive("cannot factor the zero symbol", 0.0);
  const int dim = s.dim();
  const long band = s.band();
  const long bw = opts.working_band > 0 ? opts.working_band : 4 * std::max<long>(band, 1);
  int np = opts.num_points;
  if (np <= 0) {
    np = default_sample_count(band);
    while (np <= 2 * bw) np *= 2;
  }
  if (np <= 2 * bw)
    throw AliasingRisk("num_points " + std::to_string(np) +
                       " cannot carry a working band of " + std::to_string(bw));

  // The symbol must be self-adjoint on the circle: A_{-n} = A_n^H.
  for (const auto& [lag, m] : s.coeffs()) {
    double dev = operator_norm(m - s.coefficient(-lag).adjoint());
    if (dev > 1e-10 * (1.0 + operator_norm(m)))
      throw NotPositive("symbol is not self-adjoint on the circle (lag " +
                        std::to_string(lag) + " deviates by " + format_quantity(dev) + ")",
                        0.0);
  }

  PositivityReport pos = positivity_check(s, np, opts.min_margin);
  if (!pos.positive)
    throw NotPositive("spectrum minimum eigenvalue " + format_quantity(pos.min_eigenvalue) +
                      " is below the required margin " + format_quantity(opts.min_margin),
                      pos.min_eigenvalue);

  const double s_norm = wiener_norm(s);
  auto s_samples = sample_circle(s, np);

  // Seed: Cholesky of the lag-0 coefficient (Hermitian positive definite
  // whenever the symbol is positive on the circle, it is the symbol mean).
  Eigen::MatrixXcd a0 = (s.coefficient(0) + s.coefficient(0).adjoint()) / 2.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(a0);
  if (llt.info() != Eigen::Success)
    throw NotPositive("lag-0 coefficient is not positive definite", pos.min_eigenvalue);
  OperatorLaurent t(dim);
  t.set_coefficient(0, Eigen::MatrixXcd(llt.matrixL()).adjoint());

  FactorizationResult res;
  res.min_eigenvalue = pos.min_eigenvalue;
  double defect = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    // X = T^{-*} S T^{-1} + I on the samples.
    auto t_samples = sample_circle(t, np);
    std::vector<Eigen::MatrixXcd> x(t_samples.size());
    for (std::size_t j = 0; j < t_samples.size(); ++j) {
      Eigen::PartialPivLU<Eigen::MatrixXcd> lu(t_samples[j]);
      Eigen::MatrixXcd tinv = lu.solve(Eigen::MatrixXcd::Identity(dim, dim));
      x[j] = tinv.adjoint() * s_samples[static_cast<std::size_t>(j)] * tinv +
             Eigen::MatrixXcd::Identity(dim, dim);
    }
    // Causal half of X with the lag-0 coefficient halved.
    OperatorLaurent p = coeffs_from_samples(x, 0, bw);
    p.set_coefficient(0, Eigen::MatrixXcd(p.coefficient(0) / 2.0));
    OperatorLaurent t_next = truncate(causal_part(multiply(t, p)), bw);

    t = t_next;
    defect = wiener_norm(multiply(para_adjoint(t), t) - s) / s_norm;
    if (defect <= opts.tol) {
      ++iter;
      break;
    }
  }
  if (defect > opts.tol)
    throw NoConvergence("factorization defect " + format_quantity(defect) +
                        " above tolerance after " + std::to_string(iter) + " iterations",
                        defect);

  // Fix the gauge: make the lag-0 coefficient lower triangular with a
  // positive diagonal (unitary left multiplication keeps para(T)T).
  Eigen::MatrixXcd u = lower_normalizer(t.coefficient(0));
  OperatorLaurent w(dim);
  for (const auto& [lag, m] : t.coeffs()) w.set_coefficient(lag, u * m);
  // Scrub roundoff imaginary parts on the normalized diagonal.
  Eigen::MatrixXcd w0 = w.coefficient(0);
  for (int i = 0; i < dim; ++i) w0(i, i) = std::abs(w0(i, i));
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) w0(i, j) = 0.0;
  w.set_coefficient(0, w0);

  res.w_plus = w;
  res.defect = wiener_norm(multiply(para_adjoint(w), w) - s) / s_norm;
  res.iterations = iter;
  return res;
}

InversionResult invert_via_factorization(const OperatorLaurent& s, long out_band,
                                         const FactorizationOptions& opts) {
  FactorizationResult fact = spectral_factorize(s, opts);
  CausalInverseResult causal = causal_invert(fact.w_plus, out_band);
  InversionResult out;
  out.factorization_defect = fact.defect;
  out.inverse = truncate(multiply(causal.series, para_adjoint(causal.series)), out_band);
  out.defect = wiener_norm(truncate(multiply(s, out.inverse), out_band + s.band()) -
                           OperatorLaurent::identity(s.dim()));
  return out;
}

}  // namespace wns
