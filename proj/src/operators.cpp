#include "wns/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wns/errors.hpp"

namespace wns {

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix{coords.adjoint(), basis_out, basis_in, k};
}

double OperatorMatrix::operator_norm() const { return wns::operator_norm(coords); }

double OperatorMatrix::frobenius_norm() const { return coords.norm(); }

OperatorMatrix mult_operator(const KondratievElement& x, BasisPtr basis_in,
                             BasisPtr basis_out, int k) {
  if (!basis_in || !basis_out) throw std::invalid_argument("mult_operator: null basis");
  if (basis_in->spec().num_vars != basis_out->spec().num_vars)
    throw DimensionMismatch("mult_operator: bases disagree on the variable budget");
  if (x.max_position() > basis_in->spec().num_vars)
    throw VariableOutOfRange("symbol uses chaos variable " +
                             std::to_string(x.max_position()) + " but the basis has " +
                             std::to_string(basis_in->spec().num_vars));

  OperatorMatrix op;
  op.basis_in = basis_in;
  op.basis_out = basis_out;
  op.k = k;
  op.coords = Eigen::MatrixXcd::Zero(basis_out->size(), basis_in->size());
  for (const auto& [gamma, c] : x.terms()) {
    // Orthonormal-basis entry: x_gamma (2N)^{-k*gamma/2}, same down the
    // whole shifted diagonal beta = alpha + gamma.
    Complex v = c * std::exp(-0.5 * static_cast<double>(k) * gamma.log_weight());
    for (int a = 0; a < basis_in->size(); ++a) {
      int b = basis_out->ordinal(basis_in->at(a).plus(gamma));
      if (b >= 0) op.coords(b, a) += v;
    }
  }
  return op;
}

OperatorMatrix mult_operator(const KondratievElement& x, BasisPtr basis_in,
                             BasisPtr basis_out) {
  return mult_operator(x, basis_in, basis_out, basis_in->spec().k);
}

OperatorMatrix mult_operator(const KondratievElement& x, BasisPtr basis) {
  return mult_operator(x, basis, basis, basis->spec().k);
}

KondratievElement extract_symbol(const OperatorMatrix& op) {
  if (!op.basis_in || !op.basis_out) throw std::invalid_argument("extract_symbol: null basis");
  if (op.basis_in->size() < 1 || !op.basis_in->at(0).empty())
    throw std::invalid_argument("extract_symbol: input basis must start at the vacuum");
  KondratievElement x;
  for (int b = 0; b < op.rows(); ++b) {
    const MultiIndex& beta = op.basis_out->at(b);
    Complex c = op.coords(b, 0) * std::exp(0.5 * static_cast<double>(op.k) * beta.log_weight());
    if (std::abs(c) >= KondratievElement::kPruneThreshold) x.add_term(beta, c);
  }
  return x;
}

}  // namespace wns
