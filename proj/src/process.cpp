#include "wns/process.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "wns/errors.hpp"

namespace wns {

namespace {

// lambda^n for unimodular lambda, exact-ish via binary exponentiation;
// negative powers through conjugation.
Complex unit_pow(Complex lambda, long n) {
  unsigned long long e =
      n < 0 ? 0ull - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  Complex base = lambda, r{1.0, 0.0};
  while (e != 0) {
    if (e & 1ull) r *= base;
    base *= base;
    e >>= 1;
  }
  return n < 0 ? std::conj(r) : r;
}

}  // namespace

Complex ProcessSpec::Deterministic::value(long n) const {
  if (whole_line) return constant;
  long off = n - start;
  if (off < 0 || off >= static_cast<long>(values.size())) return Complex{0.0, 0.0};
  return values[static_cast<std::size_t>(off)];
}

ProcessSpec ProcessSpec::make_white(double variance, int id) {
  if (variance < 0.0) throw std::invalid_argument("white variance must be >= 0");
  ProcessSpec p;
  p.kind = Kind::white;
  p.white = {variance, id};
  return p;
}

ProcessSpec ProcessSpec::make_constant(Complex value) {
  ProcessSpec p;
  p.kind = Kind::deterministic;
  p.det.whole_line = true;
  p.det.constant = value;
  return p;
}

ProcessSpec ProcessSpec::make_window(long start, std::vector<Complex> values) {
  ProcessSpec p;
  p.kind = Kind::deterministic;
  p.det.whole_line = false;
  p.det.start = start;
  p.det.values = std::move(values);
  return p;
}

ProcessSpec ProcessSpec::make_modulated(Complex lambda, KondratievElement rho) {
  if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
    throw NonUnimodularModulation("modulation factor must satisfy |lambda| = 1, got |lambda| = " +
                                  format_quantity(std::abs(lambda)));
  ProcessSpec p;
  p.kind = Kind::modulated;
  p.mod.lambda = lambda;
  p.mod.rho = std::move(rho);
  return p;
}

ProcessSpec ProcessSpec::make_wick_ma(std::vector<std::pair<long, KondratievElement>> taps,
                                      ProcessSpec input) {
  if (taps.empty()) throw std::invalid_argument("moving average needs at least one tap");
  for (std::size_t i = 1; i < taps.size(); ++i)
    if (taps[i - 1].first >= taps[i].first)
      throw std::invalid_argument("moving-average tap lags must be strictly increasing");
  ProcessSpec p;
  p.kind = Kind::wick_ma;
  p.ma.taps = std::move(taps);
  p.ma.input = std::make_shared<ProcessSpec>(std::move(input));
  return p;
}

int ProcessSpec::chaos_degree() const {
  switch (kind) {
    case Kind::white:
    case Kind::deterministic:
      return 0;
    case Kind::modulated:
      return mod.rho.degree();
    case Kind::wick_ma: {
      int d = 0;
      for (const auto& [lag, h] : ma.taps) d = std::max(d, h.degree());
      return d + ma.input->chaos_degree();
    }
  }
  return 0;
}

int ProcessSpec::max_position() const {
  switch (kind) {
    case Kind::white:
    case Kind::deterministic:
      return 0;
    case Kind::modulated:
      return mod.rho.max_position();
    case Kind::wick_ma: {
      int p = ma.input->max_position();
      for (const auto& [lag, h] : ma.taps) p = std::max(p, h.max_position());
      return p;
    }
  }
  return 0;
}

bool ProcessSpec::is_deterministic_scalar() const {
  switch (kind) {
    case Kind::white:
    case Kind::deterministic:
      return true;
    case Kind::modulated:
      return mod.rho.is_scalar();
    case Kind::wick_ma: {
      for (const auto& [lag, h] : ma.taps)
        if (!h.is_scalar()) return false;
      return ma.input->is_deterministic_scalar();
    }
  }
  return false;
}

bool ProcessSpec::realizable() const {
  switch (kind) {
    case Kind::white:
      return false;
    case Kind::deterministic:
    case Kind::modulated:
      return true;
    case Kind::wick_ma:
      return ma.input->realizable();
  }
  return false;
}

KondratievElement ProcessSpec::realize(long n) const {
  switch (kind) {
    case Kind::white:
      throw Error("a white process has no chaos realization; only its correlations exist");
    case Kind::deterministic:
      return KondratievElement::scalar(det.value(n));
    case Kind::modulated:
      return mod.rho * unit_pow(mod.lambda, n);
    case Kind::wick_ma: {
      KondratievElement y;
      for (const auto& [lag, h] : ma.taps)
        y = y + wick_product(h, ma.input->realize(n - lag));
      return y;
    }
  }
  return {};
}

bool ProcessSpec::structurally_equal(const ProcessSpec& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::white:
      return white.variance == o.white.variance && white.id == o.white.id;
    case Kind::deterministic:
      return det.whole_line == o.det.whole_line && det.constant == o.det.constant &&
             det.start == o.det.start && det.values == o.det.values;
    case Kind::modulated:
      return mod.lambda == o.mod.lambda && mod.rho == o.mod.rho;
    case Kind::wick_ma:
      return ma.taps == o.ma.taps && ma.input->structurally_equal(*o.ma.input);
  }
  return false;
}

void ProcessSpec::validate(const TruncationSpec& spec) const {
  int p = max_position();
  if (p > spec.num_vars)
    throw VariableOutOfRange("process uses chaos variable " + std::to_string(p) +
                             " but the truncation has " + std::to_string(spec.num_vars));
}

// ---------------------------------------------------------------------------
// Correlation kernels.
//
// Every kernel evaluates M*_{x_n} M_{x_m} on its own basis; moving averages
// hold rectangular tap matrices into a padded basis plus an inner kernel on
// that padded basis, which keeps all compressions exact (see header).

namespace {

struct Kernel {
  BasisPtr basis;
  virtual ~Kernel() = default;
  virtual Eigen::MatrixXcd eval(long n, long m) const = 0;
  int dim() const { return basis->size(); }
};

struct WhiteKernel final : Kernel {
  double var;
  Eigen::MatrixXcd eval(long n, long m) const override {
    if (n == m) return var * Eigen::MatrixXcd::Identity(dim(), dim());
    return Eigen::MatrixXcd::Zero(dim(), dim());
  }
};

struct DetKernel final : Kernel {
  ProcessSpec::Deterministic det;
  Eigen::MatrixXcd eval(long n, long m) const override {
    Complex c = std::conj(det.value(n)) * det.value(m);
    return c * Eigen::MatrixXcd::Identity(dim(), dim());
  }
};

struct ModKernel final : Kernel {
  Complex lambda;
  Eigen::MatrixXcd gram;  // M_rho^H M_rho, exact
  Eigen::MatrixXcd eval(long n, long m) const override { return unit_pow(lambda, m - n) * gram; }
};

struct WickMaKernel final : Kernel {
  std::vector<std::pair<long, Eigen::MatrixXcd>> taps;  // pad x base
  std::unique_ptr<Kernel> inner;                        // on the padded basis
  bool inner_white = false;
  double inner_var = 0.0;
  mutable std::mutex mu;
  mutable std::map<long, Eigen::MatrixXcd> diff_memo;                   // white shortcut
  mutable std::map<std::pair<long, long>, Eigen::MatrixXcd> inner_memo; // general path

  Eigen::MatrixXcd eval(long n, long m) const override {
    if (inner_white) {
      // delta correlations collapse the double sum: s = t + (m - n).
      long d = m - n;
      std::scoped_lock lock(mu);
      auto it = diff_memo.find(d);
      if (it != diff_memo.end()) return it->second;
      Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
      for (const auto& [t, ht] : taps)
        for (const auto& [s, hs] : taps)
          if (s == t + d) out += inner_var * (ht.adjoint() * hs);
      diff_memo.emplace(d, out);
      return out;
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const auto& [t, ht] : taps) {
      for (const auto& [s, hs] : taps) {
        Eigen::MatrixXcd rin;
        {
          std::scoped_lock lock(mu);
          auto key = std::make_pair(n - t, m - s);
          auto it = inner_memo.find(key);
          if (it == inner_memo.end())
            it = inner_memo.emplace(key, inner->eval(n - t, m - s)).first;
          rin = it->second;
        }
        out += ht.adjoint() * rin * hs;
      }
    }
    return out;
  }
};

std::unique_ptr<Kernel> make_kernel(const ProcessSpec& p, BasisPtr basis, BasisCache& cache) {
  switch (p.kind) {
    case ProcessSpec::Kind::white: {
      auto k = std::make_unique<WhiteKernel>();
      k->basis = basis;
      k->var = p.white.variance;
      return k;
    }
    case ProcessSpec::Kind::deterministic: {
      auto k = std::make_unique<DetKernel>();
      k->basis = basis;
      k->det = p.det;
      return k;
    }
    case ProcessSpec::Kind::modulated: {
      auto k = std::make_unique<ModKernel>();
      k->basis = basis;
      k->lambda = p.mod.lambda;
      BasisPtr pad =
          cache.get(basis->spec().with_degree(basis->spec().max_degree + p.mod.rho.degree()));
      Eigen::MatrixXcd m = mult_operator(p.mod.rho, basis, pad).coords;
      k->gram = m.adjoint() * m;
      return k;
    }
    case ProcessSpec::Kind::wick_ma: {
      auto k = std::make_unique<WickMaKernel>();
      k->basis = basis;
      int tap_deg = 0;
      for (const auto& [lag, h] : p.ma.taps) tap_deg = std::max(tap_deg, h.degree());
      BasisPtr pad = cache.get(basis->spec().with_degree(basis->spec().max_degree + tap_deg));
      for (const auto& [lag, h] : p.ma.taps)
        k->taps.emplace_back(lag, mult_operator(h, basis, pad).coords);
      k->inner = make_kernel(*p.ma.input, pad, cache);
      if (p.ma.input->kind == ProcessSpec::Kind::white) {
        k->inner_white = true;
        k->inner_var = p.ma.input->white.variance;
      }
      return k;
    }
  }
  throw std::logic_error("unreachable process kind");
}

// Cross kernels: X(n, m) = M*_{q_n} M_{p_m}.

struct XKernel {
  BasisPtr basis;
  virtual ~XKernel() = default;
  virtual Eigen::MatrixXcd eval(long n, long m) const = 0;
  int dim() const { return basis->size(); }
};

struct XFromCorr final : XKernel {
  std::unique_ptr<Kernel> corr;
  Eigen::MatrixXcd eval(long n, long m) const override { return corr->eval(n, m); }
};

struct XZero final : XKernel {
  Eigen::MatrixXcd eval(long, long) const override {
    return Eigen::MatrixXcd::Zero(dim(), dim());
  }
};

// Both sides realizable atoms: Gram of the realized elements in a shared pad.
struct XAtoms final : XKernel {
  ProcessSpec p, q;
  BasisPtr pad;
  Eigen::MatrixXcd eval(long n, long m) const override {
    Eigen::MatrixXcd mp = mult_operator(p.realize(m), basis, pad).coords;
    Eigen::MatrixXcd mq = mult_operator(q.realize(n), basis, pad).coords;
    return mq.adjoint() * mp;
  }
};

// q = MA(g, q_in): X(n, m) = sum_t G_t^H X_{p,q_in}(n - t, m), column-compressed.
struct XExpandQ final : XKernel {
  std::vector<std::pair<long, Eigen::MatrixXcd>> gtaps;  // pad x base
  std::unique_ptr<XKernel> sub;                          // on pad basis
  mutable std::mutex mu;
  mutable std::map<std::pair<long, long>, Eigen::MatrixXcd> memo;
  Eigen::MatrixXcd eval(long n, long m) const override {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const auto& [t, gt] : gtaps) {
      Eigen::MatrixXcd xs;
      {
        std::scoped_lock lock(mu);
        auto key = std::make_pair(n - t, m);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, sub->eval(n - t, m)).first;
        xs = it->second;
      }
      out += (gt.adjoint() * xs).leftCols(dim());
    }
    return out;
  }
};

// p = MA(h, p_in): X(n, m) = sum_s X_{p_in,q}(n, m - s) H_s, row-compressed.
struct XExpandP final : XKernel {
  std::vector<std::pair<long, Eigen::MatrixXcd>> htaps;  // pad x base
  std::unique_ptr<XKernel> sub;                          // on pad basis
  mutable std::mutex mu;
  mutable std::map<std::pair<long, long>, Eigen::MatrixXcd> memo;
  Eigen::MatrixXcd eval(long n, long m) const override {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim(), dim());
    for (const auto& [s, hs] : htaps) {
      Eigen::MatrixXcd xs;
      {
        std::scoped_lock lock(mu);
        auto key = std::make_pair(n, m - s);
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, sub->eval(n, m - s)).first;
        xs = it->second;
      }
      out += (xs * hs).topRows(dim());
    }
    return out;
  }
};

std::unique_ptr<XKernel> make_xkernel(const ProcessSpec& p, const ProcessSpec& q,
                                      BasisPtr basis, BasisCache& cache) {
  if (p.structurally_equal(q)) {
    auto k = std::make_unique<XFromCorr>();
    k->basis = basis;
    k->corr = make_kernel(p, basis, cache);
    return k;
  }
  if (q.kind == ProcessSpec::Kind::wick_ma) {
    auto k = std::make_unique<XExpandQ>();
    k->basis = basis;
    int tap_deg = 0;
    for (const auto& [lag, g] : q.ma.taps) tap_deg = std::max(tap_deg, g.degree());
    BasisPtr pad = cache.get(basis->spec().with_degree(basis->spec().max_degree + tap_deg));
    for (const auto& [lag, g] : q.ma.taps)
      k->gtaps.emplace_back(lag, mult_operator(g, basis, pad).coords);
    k->sub = make_xkernel(p, *q.ma.input, pad, cache);
    return k;
  }
  if (p.kind == ProcessSpec::Kind::wick_ma) {
    auto k = std::make_unique<XExpandP>();
    k->basis = basis;
    int tap_deg = 0;
    for (const auto& [lag, h] : p.ma.taps) tap_deg = std::max(tap_deg, h.degree());
    BasisPtr pad = cache.get(basis->spec().with_degree(basis->spec().max_degree + tap_deg));
    for (const auto& [lag, h] : p.ma.taps)
      k->htaps.emplace_back(lag, mult_operator(h, basis, pad).coords);
    k->sub = make_xkernel(*p.ma.input, q, pad, cache);
    return k;
  }
  if (p.kind == ProcessSpec::Kind::white || q.kind == ProcessSpec::Kind::white) {
    if (p.kind == ProcessSpec::Kind::white && q.kind == ProcessSpec::Kind::white &&
        p.white.id == q.white.id && p.white.variance != q.white.variance)
      throw Error("two white processes share id " + std::to_string(p.white.id) +
                  " but declare different variances");
    // Distinct white sources are declared independent of everything else.
    auto k = std::make_unique<XZero>();
    k->basis = basis;
    return k;
  }
  auto k = std::make_unique<XAtoms>();
  k->basis = basis;
  k->p = p;
  k->q = q;
  int deg = std::max(p.chaos_degree(), q.chaos_degree());
  k->pad = cache.get(basis->spec().with_degree(basis->spec().max_degree + deg));
  return k;
}

}  // namespace

struct CorrelationKernel::Impl {
  BasisCache cache;
  BasisPtr base;
  std::unique_ptr<Kernel> kernel;
  mutable std::mutex mu;
  mutable std::map<std::pair<long, long>, Eigen::MatrixXcd> memo;

  Impl(const ProcessSpec& p, const TruncationSpec& spec, int cap) : cache(cap) {
    p.validate(spec);
    base = cache.get(spec);
    kernel = make_kernel(p, base, cache);
  }
};

CorrelationKernel::CorrelationKernel(const ProcessSpec& p, const TruncationSpec& spec, int cap)
    : impl_(std::make_unique<Impl>(p, spec, cap)) {}
CorrelationKernel::~CorrelationKernel() = default;
CorrelationKernel::CorrelationKernel(CorrelationKernel&&) noexcept = default;

Eigen::MatrixXcd CorrelationKernel::operator()(long n, long m) const {
  std::scoped_lock lock(impl_->mu);
  auto key = std::make_pair(n, m);
  auto it = impl_->memo.find(key);
  if (it == impl_->memo.end()) it = impl_->memo.emplace(key, impl_->kernel->eval(n, m)).first;
  return it->second;
}

int CorrelationKernel::dim() const { return impl_->base->size(); }
BasisPtr CorrelationKernel::basis() const { return impl_->base; }

struct CrossCorrelationKernel::Impl {
  BasisCache cache;
  BasisPtr base;
  std::unique_ptr<XKernel> kernel;
  mutable std::mutex mu;
  mutable std::map<std::pair<long, long>, Eigen::MatrixXcd> memo;

  Impl(const ProcessSpec& p, const ProcessSpec& q, const TruncationSpec& spec, int cap)
      : cache(cap) {
    p.validate(spec);
    q.validate(spec);
    base = cache.get(spec);
    kernel = make_xkernel(p, q, base, cache);
  }
};

CrossCorrelationKernel::CrossCorrelationKernel(const ProcessSpec& p, const ProcessSpec& q,
                                               const TruncationSpec& spec, int cap)
    : impl_(std::make_unique<Impl>(p, q, spec, cap)) {}
CrossCorrelationKernel::~CrossCorrelationKernel() = default;
CrossCorrelationKernel::CrossCorrelationKernel(CrossCorrelationKernel&&) noexcept = default;

Eigen::MatrixXcd CrossCorrelationKernel::operator()(long n, long m) const {
  std::scoped_lock lock(impl_->mu);
  auto key = std::make_pair(n, m);
  auto it = impl_->memo.find(key);
  if (it == impl_->memo.end()) it = impl_->memo.emplace(key, impl_->kernel->eval(n, m)).first;
  return it->second;
}

int CrossCorrelationKernel::dim() const { return impl_->base->size(); }
BasisPtr CrossCorrelationKernel::basis() const { return impl_->base; }

OperatorMatrix correlation(const ProcessSpec& p, long n, long m, const TruncationSpec& spec) {
  CorrelationKernel kern(p, spec);
  return OperatorMatrix{kern(n, m), kern.basis(), kern.basis(), spec.k};
}

OperatorMatrix cross_correlation(const ProcessSpec& p, const ProcessSpec& q, long n, long m,
                                 const TruncationSpec& spec) {
  CrossCorrelationKernel kern(p, q, spec);
  return OperatorMatrix{kern(n, m), kern.basis(), kern.basis(), spec.k};
}

StationarityReport stationarity_check(const ProcessSpec& p, int window,
                                      const TruncationSpec& spec, double tol) {
  if (window < 0) throw std::invalid_argument("stationarity window must be >= 0");
  CorrelationKernel kern(p, spec);
  StationarityReport rep;
  rep.tol = tol;
  for (long m = -window; m <= window; ++m) {
    Eigen::MatrixXcd ref = kern(0, m);
    for (long n = -window; n <= window; ++n) {
      long nm = n + m;
      if (nm < -window || nm > window) continue;
      rep.spread = std::max(rep.spread, operator_norm(kern(n, nm) - ref));
    }
  }
  rep.stationary = rep.spread <= tol;
  return rep;
}

}  // namespace wns
