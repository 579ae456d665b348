#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

namespace wns {

// Operator-valued Laurent polynomial  A(z) = sum_n A_n z^n  with finitely
// many nonzero square coefficients; on the circle z = e^{i omega}. All
// coefficients share one dimension. Exactly-zero coefficients are dropped on
// insertion so band() reflects genuine support.
class OperatorLaurent {
 public:
  using CoeffMap = std::map<long, Eigen::MatrixXcd>;

  OperatorLaurent() = default;
  explicit OperatorLaurent(int dim) : dim_(dim) {}
  static OperatorLaurent identity(int dim);
  static OperatorLaurent constant(const Eigen::MatrixXcd& a0);

  int dim() const { return dim_; }
  bool empty() const { return coeffs_.empty(); }
  const CoeffMap& coeffs() const { return coeffs_; }
  long min_lag() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
  long max_lag() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
  long band() const;  // max(|min_lag|, |max_lag|)

  // Zero matrix when the lag is absent.
  Eigen::MatrixXcd coefficient(long lag) const;
  // Stores a coefficient; exact-zero matrices erase the slot instead.
  void set_coefficient(long lag, Eigen::MatrixXcd a);
  void add_to_coefficient(long lag, const Eigen::MatrixXcd& a);

  OperatorLaurent operator+(const OperatorLaurent& b) const;
  OperatorLaurent operator-(const OperatorLaurent& b) const;
  OperatorLaurent operator*(std::complex<double> c) const;

 private:
  int dim_ = 0;
  CoeffMap coeffs_;
};

// sum_n ||A_n||_op — the algebra norm; submultiplicative under multiply.
double wiener_norm(const OperatorLaurent& a);

// Cauchy product (a*b)_n = sum_m a_m b_{n-m}; throws DimensionMismatch.
OperatorLaurent multiply(const OperatorLaurent& a, const OperatorLaurent& b);

// (para_adjoint(a))_n = (a_{-n})^H, i.e. A(e^{i omega})^H as a series.
OperatorLaurent para_adjoint(const OperatorLaurent& a);

// Keeps lags >= 0 / lags < 0 respectively.
OperatorLaurent causal_part(const OperatorLaurent& a);
OperatorLaurent strict_anticausal_part(const OperatorLaurent& a);

// Drops all lags with |lag| > band.
OperatorLaurent truncate(const OperatorLaurent& a, long band);

Eigen::MatrixXcd eval_at(const OperatorLaurent& a, double omega);

// Values at omega_j = 2 pi j / num_points, j = 0..num_points-1. Requires
// num_points > 2 * band(a) (so the samples determine the series); throws
// AliasingRisk otherwise.
std::vector<Eigen::MatrixXcd> sample_circle(const OperatorLaurent& a, int num_points);

// Inverse transform: A_n = (1/N) sum_j V_j e^{-i n omega_j} for the lag
// range [min_lag, max_lag]. Exact for series supported there when
// N >= span; the caller owns the aliasing budget beyond that.
OperatorLaurent coeffs_from_samples(const std::vector<Eigen::MatrixXcd>& samples,
                                    long min_lag, long max_lag);

// Smallest power of two strictly greater than max(16, 8 * band).
int default_sample_count(long band);

struct PositivityReport {
  double min_eigenvalue = 0.0;       // over all sampled frequencies
  double hermitian_defect = 0.0;     // max ||V - V^H|| over samples
  int num_points = 0;
  bool positive = false;             // min_eigenvalue > margin
  double margin = 0.0;
};

// Samples the symbol and checks self-adjointness plus the smallest
// eigenvalue of the Hermitian part across the circle.
PositivityReport positivity_check(const OperatorLaurent& a, int num_points = 0,
                                  double margin = 0.0);

}  // namespace wns
