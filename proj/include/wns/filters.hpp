#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wns/factorization.hpp"
#include "wns/process.hpp"

namespace wns {

struct DensityOptions {
  bool check_stationarity = true;
  int stat_window = 2;
  double stat_tol = 1e-10;
  double tail_tol = 1e-10;  // mass allowed beyond the lag band
  long tail_probe = -1;     // extra lags probed; -1: max(4, lag_band); 0: skip
};

// S_x(lag m) = R_x(m) = M*_{x_0} M_{x_m} for |m| <= lag_band, compressed
// exactly to the degree-W basis. Verifies stationarity first and probes the
// correlation tail beyond the band. Throws NotStationary / TailTooHeavy.
OperatorLaurent spectral_density(const ProcessSpec& p, const TruncationSpec& spec,
                                 long lag_band, const DensityOptions& opts = {});

// S_uy(lag m) = R_uy(m) = M*_{y_0} M_{u_m}; joint stationarity probed over
// the same window.
OperatorLaurent cross_spectral_density(const ProcessSpec& u, const ProcessSpec& y,
                                       const TruncationSpec& spec, long lag_band,
                                       const DensityOptions& opts = {});

// Pushes an input spectrum through a Wick moving average:
//   S_y(n) = sum_{t,s} Zh_t^H S_x(n + t - s) Zh_s,
// the coefficient form of  Zh(1/z)^H S_x(z) Zh(z). When s_x lives on the
// padded basis (degree W + max tap degree) the compression to the degree-W
// result is exact and matches spectral_density of the composed process;
// when s_x lives on the base basis the products are square-truncated.
OperatorLaurent output_spectrum(const std::vector<std::pair<long, KondratievElement>>& taps,
                                const OperatorLaurent& s_x, const TruncationSpec& spec);

struct SpectralPair {
  OperatorLaurent s_y;   // observation auto-spectrum
  OperatorLaurent s_uy;  // target/observation cross-spectrum
  TruncationSpec spec;
  BasisPtr basis;
  long lag_band = 0;
};

enum class FilterMode { noncausal, causal };

struct FilterDiagnostics {
  double factorization_defect = 0.0;   // spectral factorization of s_y
  double inverse_defect = 0.0;         // || s_y s_y^{-1} - I ||_W (noncausal)
  double wiener_hopf_max = 0.0;        // over the default residual window
  double multiplicativity_defect = 0.0;  // max_m || K_m - lift(symbol(K_m)) ||
  std::optional<double> orthogonality_max;  // filled by callers that compute it
};

struct FilterResult {
  FilterMode mode = FilterMode::noncausal;
  OperatorLaurent k_ops;                         // filter coefficients K_m
  std::map<long, KondratievElement> k_symbols;   // extracted symbols per lag
  FilterDiagnostics diagnostics;
  TruncationSpec spec;
  BasisPtr basis;
  long out_band = 0;
};

// Noncausal solution K = S_y^{-1} S_uy, with the inverse taken inside the
// Wiener algebra via spectral factorization. The Wiener-Hopf residual over
// |j| <= out_band/2 lands in diagnostics.
FilterResult noncausal_wiener(const SpectralPair& sp, long out_band,
                              const FactorizationOptions& opts = {});

// Causal solution K = W^{-1} C(W^{-~} S_uy) with S_y = W^~ W; the complement
// G = S_uy - S_y K is strictly anticausal, so the one-sided residuals vanish.
// Residuals over 0 <= j <= out_band/2 land in diagnostics.
FilterResult causal_wiener(const SpectralPair& sp, long out_band,
                           const FactorizationOptions& opts = {});

struct ResidualReport {
  std::vector<std::pair<long, double>> values;  // (lag, norm)
  double max_value = 0.0;
};

// residual(j) = || S_uy(j) - sum_m S_y(j - m) K_m ||_op for j in [lo, hi]:
// the normal equations in exact Laurent arithmetic.
ResidualReport wiener_hopf_residual(const SpectralPair& sp, const FilterResult& fr,
                                    long j_lo, long j_hi);

// u_hat_j = sum_m y_m . symbol(K_{j-m}) — Wick convolution of a finitely
// supported observation path with the filter symbols.
std::map<long, KondratievElement> apply_filter(const std::map<long, KondratievElement>& y,
                                               const FilterResult& fr);

// Orthogonality residual: || R_uy(j) - sum_m R_y(j - m) M_{symbol(K_m)} ||
// with the symbol lifts applied through the exactly-padded Gram of y
// (products compressed with zero truncation error). Three entry points:
// explicit observation process, additive-noise observation with scalar
// noise spectrum, and a square-truncated fallback working from spectra
// alone (used when no exact padding is available, e.g. matrix-valued noise).
ResidualReport orthogonality_residual(const ProcessSpec& u, const ProcessSpec& y,
                                      const FilterResult& fr, long window,
                                      const TruncationSpec& spec);
ResidualReport orthogonality_residual_additive(const ProcessSpec& signal, double v0,
                                               const FilterResult& fr, long window,
                                               const TruncationSpec& spec);
ResidualReport orthogonality_residual_truncated(const SpectralPair& sp,
                                                const FilterResult& fr, long window);

}  // namespace wns
