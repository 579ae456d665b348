#include "wns/filters.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "wns/errors.hpp"

namespace wns {

OperatorLaurent spectral_density(const ProcessSpec& p, const TruncationSpec& spec,
                                 long lag_band, const DensityOptions& opts) {
  if (lag_band < 0) throw std::invalid_argument("spectral_density: lag_band must be >= 0");
  p.validate(spec);
  if (opts.check_stationarity) {
    StationarityReport rep = stationarity_check(p, opts.stat_window, spec, opts.stat_tol);
    if (!rep.stationary)
      throw NotStationary("correlation depends on absolute time (spread " +
                          format_quantity(rep.spread) + ")", rep.spread);
  }
  CorrelationKernel kern(p, spec);
  OperatorLaurent s(kern.dim());
  s.set_coefficient(0, kern(0, 0));
  for (long m = 1; m <= lag_band; ++m) {
    Eigen::MatrixXcd r = kern(0, m);
    s.set_coefficient(m, r);
    s.set_coefficient(-m, r.adjoint());
  }
  long probe = opts.tail_probe < 0 ? std::max<long>(4, lag_band) : opts.tail_probe;
  if (probe > 0) {
    double mass = 0.0;
    for (long m = lag_band + 1; m <= lag_band + probe; ++m) mass += operator_norm(kern(0, m));
    if (mass > opts.tail_tol)
      throw TailTooHeavy("correlation mass " + format_quantity(mass) + " beyond lag " +
                         std::to_string(lag_band) + " exceeds " + std::to_string(opts.tail_tol),
                         mass);
  }
  return s;
}

OperatorLaurent cross_spectral_density(const ProcessSpec& u, const ProcessSpec& y,
                                       const TruncationSpec& spec, long lag_band,
                                       const DensityOptions& opts) {
  if (lag_band < 0) throw std::invalid_argument("cross_spectral_density: lag_band must be >= 0");
  u.validate(spec);
  y.validate(spec);
  CrossCorrelationKernel kern(u, y, spec);
  if (opts.check_stationarity) {
    double spread = 0.0;
    for (long m = -lag_band; m <= lag_band; ++m) {
      Eigen::MatrixXcd ref = kern(0, m);
      for (long n = -opts.stat_window; n <= opts.stat_window; ++n)
        spread = std::max(spread, operator_norm(kern(n, n + m) - ref));
    }
    if (spread > opts.stat_tol)
      throw NotStationary("cross-correlation depends on absolute time (spread " +
                          format_quantity(spread) + ")", spread);
  }
  OperatorLaurent s(kern.dim());
  for (long m = -lag_band; m <= lag_band; ++m) s.set_coefficient(m, kern(0, m));
  long probe = opts.tail_probe < 0 ? std::max<long>(4, lag_band) : opts.tail_probe;
  if (probe > 0) {
    double mass = 0.0;
    for (long m = lag_band + 1; m <= lag_band + probe; ++m)
      mass += operator_norm(kern(0, m)) + operator_norm(kern(0, -m));
    if (mass > opts.tail_tol)
      throw TailTooHeavy("cross-correlation mass " + format_quantity(mass) + " beyond lag " +
                         std::to_string(lag_band) + " exceeds " + std::to_string(opts.tail_tol),
                         mass);
  }
  return s;
}

OperatorLaurent output_spectrum(const std::vector<std::pair<long, KondratievElement>>& taps,
                                const OperatorLaurent& s_x, const TruncationSpec& spec) {
  if (taps.empty()) throw std::invalid_argument("output_spectrum: no taps");
  BasisCache cache;
  BasisPtr base = cache.get(spec);
  int tap_deg = 0;
  for (const auto& [lag, h] : taps) tap_deg = std::max(tap_deg, h.degree());
  BasisPtr pad = cache.get(spec.with_degree(spec.max_degree + tap_deg));

  BasisPtr out_basis;
  if (s_x.dim() == pad->size()) {
    out_basis = pad;  // exact compression
  } else if (s_x.dim() == base->size()) {
    out_basis = base;  // square-truncated products
  } else {
    throw DimensionMismatch("input spectrum dimension " + std::to_string(s_x.dim()) +
                            " matches neither the base basis (" + std::to_string(base->size()) +
                            ") nor the padded basis (" + std::to_string(pad->size()) + ")");
  }

  std::vector<std::pair<long, Eigen::MatrixXcd>> zh;
  zh.reserve(taps.size());
  for (const auto& [lag, h] : taps)
    zh.emplace_back(lag, mult_operator(h, base, out_basis, spec.k).coords);

  // S_y(n) = sum_{t,s} Zh_t^H S_x(n + t - s) Zh_s.
  OperatorLaurent sy(base->size());
  for (const auto& [t, mt] : zh)
    for (const auto& [s, ms] : zh)
      for (const auto& [b, sxb] : s_x.coeffs())
        sy.add_to_coefficient(b - t + s, mt.adjoint() * sxb * ms);
  return sy;
}

namespace {

void fill_symbols(FilterResult& fr) {
  for (const auto& [lag, m] : fr.k_ops.coeffs()) {
    OperatorMatrix om{m, fr.basis, fr.basis, fr.spec.k};
    fr.k_symbols[lag] = extract_symbol(om);
  }
}

double multiplicativity_defect(const FilterResult& fr) {
  double d = 0.0;
  for (const auto& [lag, m] : fr.k_ops.coeffs()) {
    const KondratievElement& sym = fr.k_symbols.at(lag);
    Eigen::MatrixXcd lifted = mult_operator(sym, fr.basis, fr.basis, fr.spec.k).coords;
    d = std::max(d, operator_norm(m - lifted));
  }
  return d;
}

void check_pair(const SpectralPair& sp) {
  if (!sp.basis) throw std::invalid_argument("spectral pair has no basis");
  if (sp.s_y.dim() != sp.basis->size() || sp.s_uy.dim() != sp.basis->size())
    throw DimensionMismatch("spectral pair dimensions do not match the basis");
}

}  // namespace

FilterResult noncausal_wiener(const SpectralPair& sp, long out_band,
                              const FactorizationOptions& opts) {
  check_pair(sp);
  if (out_band < 0) throw std::invalid_argument("noncausal_wiener: out_band must be >= 0");
  InversionResult inv = invert_via_factorization(sp.s_y, out_band, opts);
  OperatorLaurent k = truncate(multiply(inv.inverse, sp.s_uy), out_band);
  FilterResult fr{FilterMode::noncausal, k, {}, {}, sp.spec, sp.basis, out_band};
  fill_symbols(fr);
  fr.diagnostics.factorization_defect = inv.factorization_defect;
  fr.diagnostics.inverse_defect = inv.defect;
  fr.diagnostics.multiplicativity_defect = multiplicativity_defect(fr);
  fr.diagnostics.wiener_hopf_max =
      wiener_hopf_residual(sp, fr, -(out_band / 2), out_band / 2).max_value;
  return fr;
}

FilterResult causal_wiener(const SpectralPair& sp, long out_band,
                           const FactorizationOptions& opts) {
  check_pair(sp);
  if (out_band < 0) throw std::invalid_argument("causal_wiener: out_band must be >= 0");
  FactorizationResult fact = spectral_factorize(sp.s_y, opts);
  CausalInverseResult binv = causal_invert(fact.w_plus, out_band);
  OperatorLaurent inner = multiply(para_adjoint(binv.series), sp.s_uy);
  OperatorLaurent k = truncate(multiply(binv.series, causal_part(inner)), out_band);
  FilterResult fr{FilterMode::causal, k, {}, {}, sp.spec, sp.basis, out_band};
  fill_symbols(fr);
  fr.diagnostics.factorization_defect = fact.defect;
  fr.diagnostics.inverse_defect = binv.defect;
  fr.diagnostics.multiplicativity_defect = multiplicativity_defect(fr);
  fr.diagnostics.wiener_hopf_max = wiener_hopf_residual(sp, fr, 0, out_band / 2).max_value;
  return fr;
}

ResidualReport wiener_hopf_residual(const SpectralPair& sp, const FilterResult& fr,
                                    long j_lo, long j_hi) {
  if (j_hi < j_lo) throw std::invalid_argument("wiener_hopf_residual: empty window");
  OperatorLaurent d = sp.s_uy - multiply(sp.s_y, fr.k_ops);
  ResidualReport rep;
  for (long j = j_lo; j <= j_hi; ++j) {
    double v = operator_norm(d.coefficient(j));
    rep.values.emplace_back(j, v);
    rep.max_value = std::max(rep.max_value, v);
  }
  return rep;
}

std::map<long, KondratievElement> apply_filter(const std::map<long, KondratievElement>& y,
                                               const FilterResult& fr) {
  for (const auto& [lag, el] : y)
    if (el.max_position() > fr.spec.num_vars)
      throw VariableOutOfRange("observation at lag " + std::to_string(lag) +
                               " uses chaos variable " + std::to_string(el.max_position()) +
                               " but the truncation has " + std::to_string(fr.spec.num_vars));
  std::map<long, KondratievElement> out;
  for (const auto& [ym, yel] : y)
    for (const auto& [km, kel] : fr.k_symbols) {
      KondratievElement w = wick_product(yel, kel);
      if (!w.is_zero()) out[ym + km] = out.count(ym + km) ? out[ym + km] + w : w;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

namespace {

// residual(j) = || R_uy(j) - sum_m R_y(j - m) M_m ||, rows compressed back
// to the base basis.
ResidualReport orthogonality_core(
    const std::function<Eigen::MatrixXcd(long)>& r_uy_base,
    const std::function<Eigen::MatrixXcd(long)>& r_y_lift,
    const std::vector<std::pair<long, Eigen::MatrixXcd>>& lifted_taps, int base_dim,
    long window, FilterMode mode) {
  ResidualReport rep;
  long lo = mode == FilterMode::causal ? 0 : -window;
  for (long j = lo; j <= window; ++j) {
    Eigen::MatrixXcd acc = r_uy_base(j);
    for (const auto& [m, tap] : lifted_taps) acc -= (r_y_lift(j - m) * tap).topRows(base_dim);
    double v = operator_norm(acc);
    rep.values.emplace_back(j, v);
    rep.max_value = std::max(rep.max_value, v);
  }
  return rep;
}

std::vector<std::pair<long, Eigen::MatrixXcd>> lift_taps(const FilterResult& fr,
                                                         BasisPtr base, BasisPtr pad) {
  std::vector<std::pair<long, Eigen::MatrixXcd>> taps;
  taps.reserve(fr.k_symbols.size());
  for (const auto& [lag, sym] : fr.k_symbols)
    taps.emplace_back(lag, mult_operator(sym, base, pad, fr.spec.k).coords);
  return taps;
}

int symbols_degree(const FilterResult& fr) {
  int d = 0;
  for (const auto& [lag, sym] : fr.k_symbols) d = std::max(d, sym.degree());
  return d;
}

}  // namespace

ResidualReport orthogonality_residual(const ProcessSpec& u, const ProcessSpec& y,
                                      const FilterResult& fr, long window,
                                      const TruncationSpec& spec) {
  TruncationSpec pad_spec = spec.with_degree(spec.max_degree + symbols_degree(fr));
  BasisCache cache;
  BasisPtr base = cache.get(spec);
  BasisPtr pad = cache.get(pad_spec);
  auto taps = lift_taps(fr, base, pad);
  CorrelationKernel y_kern(y, pad_spec);
  CrossCorrelationKernel uy_kern(u, y, spec);
  return orthogonality_core([&](long j) { return uy_kern(0, j); },
                            [&](long m) { return y_kern(0, m); }, taps, base->size(),
                            window, fr.mode);
}

ResidualReport orthogonality_residual_additive(const ProcessSpec& signal, double v0,
                                               const FilterResult& fr, long window,
                                               const TruncationSpec& spec) {
  if (v0 <= 0.0) throw std::invalid_argument("additive noise level must be positive");
  TruncationSpec pad_spec = spec.with_degree(spec.max_degree + symbols_degree(fr));
  BasisCache cache;
  BasisPtr base = cache.get(spec);
  BasisPtr pad = cache.get(pad_spec);
  auto taps = lift_taps(fr, base, pad);
  CorrelationKernel x_kern(signal, pad_spec);
  const int nb = base->size();
  const int np = pad->size();
  auto r_y = [&](long m) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd r = x_kern(0, m);
    if (m == 0) r += v0 * Eigen::MatrixXcd::Identity(np, np);
    return r;
  };
  // R_uy(j) = R_x(j) on the base block (noise and signal are uncorrelated).
  auto r_uy = [&](long j) -> Eigen::MatrixXcd {
    return x_kern(0, j).topLeftCorner(nb, nb);
  };
  return orthogonality_core(r_uy, r_y, taps, nb, window, fr.mode);
}

ResidualReport orthogonality_residual_truncated(const SpectralPair& sp,
                                                const FilterResult& fr, long window) {
  check_pair(sp);
  auto taps = lift_taps(fr, sp.basis, sp.basis);
  return orthogonality_core([&](long j) { return sp.s_uy.coefficient(j); },
                            [&](long m) { return sp.s_y.coefficient(m); }, taps,
                            sp.basis->size(), window, fr.mode);
}

}  // namespace wns
