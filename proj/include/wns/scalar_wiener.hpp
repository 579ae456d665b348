#pragma once

#include <complex>
#include <map>
#include <utility>

#include "wns/process.hpp"

// Self-contained scalar Wiener pipeline used as an independent cross-check
// for scenarios whose processes are plain (deterministic-coefficient)
// second-order sequences. Deliberately shares no code with the operator
// Laurent machinery: its own series type, its own factorization, its own
// filter assembly.
namespace wns::scalar {

using Series = std::map<long, std::complex<double>>;

double wiener_norm(const Series& a);
Series multiply(const Series& a, const Series& b);
Series para_adjoint(const Series& a);  // lag n -> conj of lag -n
Series causal_part(const Series& a);
Series truncate(const Series& a, long band);
std::complex<double> eval_at(const Series& a, double omega);

// Canonical scalar spectral factorization s = w~ w with w causal and
// w_0 > 0 real, Newton iteration on circle samples. Throws NotPositive /
// NoConvergence like the operator version.
Series factorize(const Series& s, double tol = 1e-12, int max_iter = 200);

// Closed-form factor of  c0 + c1 z + conj(c1) z^{-1}  as (a + b z) with
// a > 0 real:  a^2 = (c0 + sqrt(c0^2 - 4|c1|^2)) / 2,  b = c1 / a.
// Throws NotPositive when the symbol is not strictly positive.
std::pair<double, std::complex<double>> factor_band1(double c0, std::complex<double> c1);

Series causal_invert(const Series& w, long out_band);

struct Filters {
  Series noncausal;
  Series causal;
  double factorization_defect = 0.0;
};

Filters wiener_filters(const Series& s_y, const Series& s_uy, long out_band);

// r(m) = E[conj(x_0) x_m] for scalar stationary process descriptions:
// white, constant, scalar modulated, and scalar MA chains over those.
// Throws Error for descriptions that are not scalar-stationary.
Series process_correlation(const ProcessSpec& p, long band);

}  // namespace wns::scalar
