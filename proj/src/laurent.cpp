#include "wns/laurent.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wns/errors.hpp"
#include "wns/operators.hpp"

namespace wns {

OperatorLaurent OperatorLaurent::identity(int dim) {
  OperatorLaurent a(dim);
  a.set_coefficient(0, Eigen::MatrixXcd::Identity(dim, dim));
  return a;
}

OperatorLaurent OperatorLaurent::constant(const Eigen::MatrixXcd& a0) {
  if (a0.rows() != a0.cols()) throw DimensionMismatch("Laurent coefficients must be square");
  OperatorLaurent a(static_cast<int>(a0.rows()));
  a.set_coefficient(0, a0);
  return a;
}

long OperatorLaurent::band() const {
  if (coeffs_.empty()) return 0;
  return std::max(std::labs(min_lag()), std::labs(max_lag()));
}

Eigen::MatrixXcd OperatorLaurent::coefficient(long lag) const {
  auto it = coeffs_.find(lag);
  if (it != coeffs_.end()) return it->second;
  return Eigen::MatrixXcd::Zero(dim_, dim_);
}

void OperatorLaurent::set_coefficient(long lag, Eigen::MatrixXcd a) {
  if (a.rows() != a.cols() || static_cast<int>(a.rows()) != dim_)
    throw DimensionMismatch("coefficient shape " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " does not match dimension " +
                            std::to_string(dim_));
  if (a.norm() == 0.0) {
    coeffs_.erase(lag);
    return;
  }
  coeffs_[lag] = std::move(a);
}

void OperatorLaurent::add_to_coefficient(long lag, const Eigen::MatrixXcd& a) {
  auto it = coeffs_.find(lag);
  if (it == coeffs_.end()) {
    set_coefficient(lag, a);
  } else {
    it->second += a;
    if (it->second.norm() == 0.0) coeffs_.erase(it);
  }
}

OperatorLaurent OperatorLaurent::operator+(const OperatorLaurent& b) const {
  if (dim_ != b.dim_) throw DimensionMismatch("Laurent sum: dimensions differ");
  OperatorLaurent out = *this;
  for (const auto& [lag, m] : b.coeffs_) out.add_to_coefficient(lag, m);
  return out;
}

OperatorLaurent OperatorLaurent::operator-(const OperatorLaurent& b) const {
  if (dim_ != b.dim_) throw DimensionMismatch("Laurent difference: dimensions differ");
  OperatorLaurent out = *this;
  for (const auto& [lag, m] : b.coeffs_) out.add_to_coefficient(lag, -m);
  return out;
}

OperatorLaurent OperatorLaurent::operator*(std::complex<double> c) const {
  OperatorLaurent out(dim_);
  for (const auto& [lag, m] : coeffs_) out.set_coefficient(lag, m * c);
  return out;
}

double wiener_norm(const OperatorLaurent& a) {
  double s = 0.0;
  for (const auto& [lag, m] : a.coeffs()) s += operator_norm(m);
  return s;
}

OperatorLaurent multiply(const OperatorLaurent& a, const OperatorLaurent& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("Laurent product: dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()) + " differ");
  OperatorLaurent out(a.dim());
  for (const auto& [la, ma] : a.coeffs())
    for (const auto& [lb, mb] : b.coeffs()) out.add_to_coefficient(la + lb, ma * mb);
  return out;
}

OperatorLaurent para_adjoint(const OperatorLaurent& a) {
  OperatorLaurent out(a.dim());
  for (const auto& [lag, m] : a.coeffs()) out.set_coefficient(-lag, m.adjoint());
  return out;
}

OperatorLaurent causal_part(const OperatorLaurent& a) {
  OperatorLaurent out(a.dim());
  for (const auto& [lag, m] : a.coeffs())
    if (lag >= 0) out.set_coefficient(lag, m);
  return out;
}

OperatorLaurent strict_anticausal_part(const OperatorLaurent& a) {
  OperatorLaurent out(a.dim());
  for (const auto& [lag, m] : a.coeffs())
    if (lag < 0) out.set_coefficient(lag, m);
  return out;
}

OperatorLaurent truncate(const OperatorLaurent& a, long band) {
  OperatorLaurent out(a.dim());
  for (const auto& [lag, m] : a.coeffs())
    if (std::labs(lag) <= band) out.set_coefficient(lag, m);
  return out;
}

Eigen::MatrixXcd eval_at(const OperatorLaurent& a, double omega) {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(a.dim(), a.dim());
  for (const auto& [lag, m] : a.coeffs())
    v += std::exp(std::complex<double>(0.0, omega * static_cast<double>(lag))) * m;
  return v;
}

std::vector<Eigen::MatrixXcd> sample_circle(const OperatorLaurent& a, int num_points) {
  if (num_points <= 2 * a.band())
    throw AliasingRisk("sampling a band-" + std::to_string(a.band()) + " series at " +
                       std::to_string(num_points) + " points aliases; need > " +
                       std::to_string(2 * a.band()));
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(num_points));
  for (int j = 0; j < num_points; ++j)
    out.push_back(eval_at(a, 2.0 * std::numbers::pi * j / num_points));
  return out;
}

OperatorLaurent coeffs_from_samples(const std::vector<Eigen::MatrixXcd>& samples,
                                    long min_lag, long max_lag) {
  if (samples.empty()) throw std::invalid_argument("coeffs_from_samples: no samples");
  if (max_lag < min_lag) throw std::invalid_argument("coeffs_from_samples: empty lag range");
  const long np = static_cast<long>(samples.size());
  if (max_lag - min_lag + 1 > np)
    throw AliasingRisk("recovering " + std::to_string(max_lag - min_lag + 1) +
                       " lags from " + std::to_string(np) + " samples is ill-posed");
  const int dim = static_cast<int>(samples.front().rows());
  OperatorLaurent out(dim);
  for (long n = min_lag; n <= max_lag; ++n) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
    for (long j = 0; j < np; ++j) {
      double phase = -2.0 * std::numbers::pi * static_cast<double>(n) * j / np;
      acc += std::exp(std::complex<double>(0.0, phase)) * samples[static_cast<std::size_t>(j)];
    }
    out.set_coefficient(n, acc / static_cast<double>(np));
  }
  return out;
}

int default_sample_count(long band) {
  long target = std::max<long>(16, 8 * band);
  int np = 1;
  while (np <= target) np *= 2;
  return np;
}

PositivityReport positivity_check(const OperatorLaurent& a, int num_points, double margin) {
  PositivityReport rep;
  rep.margin = margin;
  rep.num_points = num_points > 0 ? num_points : default_sample_count(a.band());
  auto samples = sample_circle(a, rep.num_points);
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& v : samples) {
    rep.hermitian_defect = std::max(rep.hermitian_defect, operator_norm(v - v.adjoint()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((v + v.adjoint()) / 2.0);
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, es.eigenvalues().minCoeff());
  }
  rep.positive = rep.min_eigenvalue > margin;
  return rep;
}

}  // namespace wns
