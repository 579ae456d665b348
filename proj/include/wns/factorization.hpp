#pragma once

#include "wns/laurent.hpp"

namespace wns {

struct CausalInverseResult {
  OperatorLaurent series;  // causal, lags 0..out_band
  double defect = 0.0;     // || w * series - I ||_W, the truncation indicator
};

// Inverts a causal series inside the causal subalgebra by the convolution
// recursion  B_0 = A_0^{-1},  B_n = -A_0^{-1} sum_{m=1..n} A_m B_{n-m}.
// Throws SingularLeadCoefficient when A_0 is not safely invertible and
// std::invalid_argument if w has negative lags.
CausalInverseResult causal_invert(const OperatorLaurent& w, long out_band);

struct FactorizationOptions {
  double tol = 1e-10;        // relative defect target
  double min_margin = 1e-8;  // positivity floor for the sampled spectrum
  int max_iter = 100;
  int num_points = 0;    // 0: next power of two > max(8*band, 2*working_band, 16)
  long working_band = 0;  // 0: 4 * band(s)
};

struct FactorizationResult {
  OperatorLaurent w_plus;    // causal factor, lag-0 coefficient lower
                             // triangular with positive diagonal
  double defect = 0.0;       // || para(w_plus) * w_plus - s ||_W / || s ||_W
  int iterations = 0;
  double min_eigenvalue = 0.0;  // of the sampled Hermitian symbol
};

// Spectral factorization  s = para(w_plus) * w_plus  with w_plus and its
// inverse causal, by the Newton-type iteration
//   T <- T * half0( T^{-*} s T^{-1} + I ),
// run on circle samples and truncated to the working band; half0 halves the
// lag-0 coefficient and keeps lags >= 1. Quadratically convergent from the
// lag-0 Cholesky seed for spectra that are positive definite on the circle.
// Throws NotPositive (bad symbol), NoConvergence (iteration budget), and the
// sampling errors from laurent.hpp.
FactorizationResult spectral_factorize(const OperatorLaurent& s,
                                       const FactorizationOptions& opts = {});

struct InversionResult {
  OperatorLaurent inverse;  // truncated to out_band
  double defect = 0.0;      // || s * inverse - I ||_W
  double factorization_defect = 0.0;
};

// S^{-1} = W_+^{-1} * (W_+^{-1})^~ through the factorization above, so the
// result is a genuine Wiener-algebra inverse (both factors live there).
InversionResult invert_via_factorization(const OperatorLaurent& s, long out_band,
                                         const FactorizationOptions& opts = {});

}  // namespace wns
