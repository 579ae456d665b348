#include "wns/scalar_wiener.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "wns/errors.hpp"

namespace wns::scalar {

namespace {
using C = std::complex<double>;

void drop_zero(Series& a, long lag) {
  auto it = a.find(lag);
  if (it != a.end() && std::abs(it->second) == 0.0) a.erase(it);
}

Series subtract(const Series& a, const Series& b) {
  Series out = a;
  for (const auto& [lag, c] : b) {
    out[lag] -= c;
    drop_zero(out, lag);
  }
  return out;
}
}  // namespace

double wiener_norm(const Series& a) {
  double s = 0.0;
  for (const auto& [lag, c] : a) s += std::abs(c);
  return s;
}

Series multiply(const Series& a, const Series& b) {
  Series out;
  for (const auto& [la, ca] : a)
    for (const auto& [lb, cb] : b) out[la + lb] += ca * cb;
  for (auto it = out.begin(); it != out.end();)
    it = std::abs(it->second) == 0.0 ? out.erase(it) : std::next(it);
  return out;
}

Series para_adjoint(const Series& a) {
  Series out;
  for (const auto& [lag, c] : a) out[-lag] = std::conj(c);
  return out;
}

Series causal_part(const Series& a) {
  Series out;
  for (const auto& [lag, c] : a)
    if (lag >= 0) out[lag] = c;
  return out;
}

Series truncate(const Series& a, long band) {
  Series out;
  for (const auto& [lag, c] : a)
    if (std::labs(lag) <= band) out[lag] = c;
  return out;
}

C eval_at(const Series& a, double omega) {
  C v{0.0, 0.0};
  for (const auto& [lag, c] : a) v += c * std::exp(C(0.0, omega * static_cast<double>(lag)));
  return v;
}

Series factorize(const Series& s, double tol, int max_iter) {
  if (s.empty()) throw NotPositive("cannot factor the zero symbol", 0.0);
  for (const auto& [lag, c] : s) {
    auto it = s.find(-lag);
    C mirror = it == s.end() ? C{0.0, 0.0} : it->second;
    if (std::abs(c - std::conj(mirror)) > 1e-10 * (1.0 + std::abs(c)))
      throw NotPositive("symbol is not real on the circle", 0.0);
  }
  long band = std::max(std::labs(s.begin()->first), std::labs(s.rbegin()->first));
  long bw = 4 * std::max<long>(band, 1);
  int np = 16;
  while (np <= std::max<long>(8 * band, 2 * bw)) np *= 2;

  std::vector<double> sj(static_cast<std::size_t>(np));
  double min_s = std::numeric_limits<double>::infinity();
  for (int j = 0; j < np; ++j) {
    C v = eval_at(s, 2.0 * std::numbers::pi * j / np);
    sj[static_cast<std::size_t>(j)] = v.real();
    min_s = std::min(min_s, v.real());
  }
  if (min_s <= 0.0) throw NotPositive("symbol has nonpositive circle values", min_s);

  const double s_norm = wiener_norm(s);
  double s0 = s.count(0) ? s.at(0).real() : 0.0;
  Series t{{0, C(std::sqrt(s0), 0.0)}};
  double defect = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    // x_j = s_j / |t_j|^2 + 1, then the halved causal part.
    std::vector<C> x(static_cast<std::size_t>(np));
    for (int j = 0; j < np; ++j) {
      C tj = eval_at(t, 2.0 * std::numbers::pi * j / np);
      x[static_cast<std::size_t>(j)] = sj[static_cast<std::size_t>(j)] / std::norm(tj) + 1.0;
    }
    Series p;
    for (long n = 0; n <= bw; ++n) {
      C acc{0.0, 0.0};
      for (int j = 0; j < np; ++j)
        acc += x[static_cast<std::size_t>(j)] *
               std::exp(C(0.0, -2.0 * std::numbers::pi * static_cast<double>(n) * j / np));
      p[n] = acc / static_cast<double>(np);
    }
    p[0] /= 2.0;
    t = truncate(causal_part(multiply(t, p)), bw);
    defect = wiener_norm(subtract(multiply(para_adjoint(t), t), s)) / s_norm;
    if (defect <= tol) break;
  }
  if (defect > tol)
    throw NoConvergence("scalar factorization stalled at defect " + std::to_string(defect),
                        defect);
  // Gauge: rotate so the constant coefficient is positive real.
  C t0 = t.count(0) ? t.at(0) : C{0.0, 0.0};
  if (std::abs(t0) == 0.0) throw NoConvergence("degenerate factor", defect);
  C phase = std::conj(t0) / std::abs(t0);
  for (auto& [lag, c] : t) c *= phase;
  t[0] = C(std::abs(t.at(0)), 0.0);
  return t;
}

std::pair<double, C> factor_band1(double c0, C c1) {
  double disc = c0 * c0 - 4.0 * std::norm(c1);
  if (c0 <= 0.0 || disc <= 0.0)
    throw NotPositive("banded symbol is not strictly positive", disc);
  double a = std::sqrt((c0 + std::sqrt(disc)) / 2.0);
  return {a, c1 / a};
}

Series causal_invert(const Series& w, long out_band) {
  if (w.empty() || w.begin()->first < 0)
    throw std::invalid_argument("scalar causal_invert: series must be causal and nonzero");
  C a0 = w.count(0) ? w.at(0) : C{0.0, 0.0};
  if (std::abs(a0) < 1e-14)
    throw SingularLeadCoefficient("scalar lead coefficient is (near) zero");
  Series b{{0, 1.0 / a0}};
  long wmax = w.rbegin()->first;
  for (long n = 1; n <= out_band; ++n) {
    C acc{0.0, 0.0};
    for (long m = 1; m <= std::min(n, wmax); ++m) {
      auto it = w.find(m);
      if (it != w.end()) acc += it->second * b[n - m];
    }
    b[n] = -acc / a0;
    drop_zero(b, n);
  }
  return b;
}

Filters wiener_filters(const Series& s_y, const Series& s_uy, long out_band) {
  Filters out;
  Series w = factorize(s_y);
  out.factorization_defect = wiener_norm(subtract(multiply(para_adjoint(w), w), s_y));
  Series binv = causal_invert(w, out_band);
  Series sinv = truncate(multiply(binv, para_adjoint(binv)), out_band);
  out.noncausal = truncate(multiply(sinv, s_uy), out_band);
  out.causal = truncate(multiply(binv, causal_part(multiply(para_adjoint(binv), s_uy))), out_band);
  return out;
}

Series process_correlation(const ProcessSpec& p, long band) {
  Series r;
  switch (p.kind) {
    case ProcessSpec::Kind::white:
      if (p.white.variance != 0.0) r[0] = p.white.variance;
      return r;
    case ProcessSpec::Kind::deterministic:
      if (!p.det.whole_line)
        throw Error("windowed deterministic sequences are not stationary");
      for (long m = -band; m <= band; ++m) r[m] = std::norm(p.det.constant);
      return r;
    case ProcessSpec::Kind::modulated: {
      if (!p.mod.rho.is_scalar())
        throw Error("scalar reduction needs a scalar modulated amplitude");
      C c = p.mod.rho.vacuum_coefficient();
      for (long m = -band; m <= band; ++m)
        r[m] = std::pow(p.mod.lambda, static_cast<double>(m)) * std::norm(c);
      return r;
    }
    case ProcessSpec::Kind::wick_ma: {
      std::vector<std::pair<long, C>> taps;
      long tap_span = 0;
      for (const auto& [lag, h] : p.ma.taps) {
        if (!h.is_scalar()) throw Error("scalar reduction needs scalar taps");
        taps.emplace_back(lag, h.vacuum_coefficient());
        tap_span = std::max(tap_span, std::labs(lag));
      }
      Series rin = process_correlation(*p.ma.input, band + 2 * tap_span);
      // r_y(m) = sum_{t,s} conj(c_t) c_s r_x(m + t - s).
      for (long m = -band; m <= band; ++m) {
        C acc{0.0, 0.0};
        for (const auto& [t, ct] : taps)
          for (const auto& [s, cs] : taps) {
            auto it = rin.find(m + t - s);
            if (it != rin.end()) acc += std::conj(ct) * cs * it->second;
          }
        if (std::abs(acc) != 0.0) r[m] = acc;
      }
      return r;
    }
  }
  throw Error("unknown process kind");
}

}  // namespace wns::scalar
