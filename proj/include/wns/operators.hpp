#pragma once

#include <Eigen/Dense>

#include "wns/basis.hpp"
#include "wns/chaos.hpp"

namespace wns {

// A linear map between truncated chaos spaces, stored as its coordinate
// matrix in the orthonormal bases e_alpha = (2N)^{k*alpha/2} H_alpha of the
// graded space with index k. basis_in labels columns, basis_out rows.
struct OperatorMatrix {
  Eigen::MatrixXcd coords;
  BasisPtr basis_in;
  BasisPtr basis_out;
  int k = 0;

  int rows() const { return static_cast<int>(coords.rows()); }
  int cols() const { return static_cast<int>(coords.cols()); }

  OperatorMatrix adjoint() const;
  double operator_norm() const;   // largest singular value
  double frobenius_norm() const;
};

// Coordinate matrix of Wick multiplication by x, compressed to the given
// truncations:  entry(beta, alpha) = x_{beta-alpha} * (2N)^{-k*(beta-alpha)/2}.
// The entry depends only on beta - alpha, so the matrix is "Wick-Toeplitz".
// Exact (no truncation error) whenever basis_out's degree budget is at least
// basis_in's plus x.degree(). Throws VariableOutOfRange if x uses chaos
// variables beyond the bases' variable budget, DimensionMismatch if the two
// bases disagree on that budget.
OperatorMatrix mult_operator(const KondratievElement& x, BasisPtr basis_in,
                             BasisPtr basis_out, int k);
// Same, with k taken from basis_in's truncation.
OperatorMatrix mult_operator(const KondratievElement& x, BasisPtr basis_in,
                             BasisPtr basis_out);
// Square convenience overload.
OperatorMatrix mult_operator(const KondratievElement& x, BasisPtr basis);

// Recovers the symbol from a multiplication-operator matrix by unscaling the
// vacuum column: c_beta = coords(beta, vacuum) * (2N)^{+k*beta/2}. Inverse
// of mult_operator on representable symbols.
KondratievElement extract_symbol(const OperatorMatrix& op);

double operator_norm(const Eigen::MatrixXcd& m);

}  // namespace wns
