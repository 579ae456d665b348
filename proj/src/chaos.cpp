#include "wns/chaos.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wns/errors.hpp"

namespace wns {

namespace {
constexpr double kLogDblMax = 709.782712893384;  // log(DBL_MAX)
}

KondratievElement KondratievElement::scalar(Complex c) {
  KondratievElement f;
  f.add_term(MultiIndex{}, c);
  return f;
}

KondratievElement KondratievElement::basis(const MultiIndex& alpha) {
  KondratievElement f;
  f.add_term(alpha, 1.0);
  return f;
}

KondratievElement KondratievElement::from_terms(TermMap terms) {
  KondratievElement f;
  for (auto& [alpha, c] : terms)
    if (std::abs(c) >= kPruneThreshold) f.terms_.emplace(alpha, c);
  return f;
}

int KondratievElement::degree() const {
  // Terms are graded-lex ordered, so the last one has maximal degree.
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

int KondratievElement::max_position() const {
  int p = 0;
  for (const auto& [alpha, c] : terms_) p = std::max(p, alpha.max_position());
  return p;
}

Complex KondratievElement::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

bool KondratievElement::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

KondratievElement& KondratievElement::add_term(const MultiIndex& alpha, Complex c) {
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
  return *this;
}

KondratievElement KondratievElement::operator+(const KondratievElement& g) const {
  KondratievElement out = *this;
  for (const auto& [alpha, c] : g.terms_) out.add_term(alpha, c);
  return out;
}

KondratievElement KondratievElement::operator-(const KondratievElement& g) const {
  KondratievElement out = *this;
  for (const auto& [alpha, c] : g.terms_) out.add_term(alpha, -c);
  return out;
}

KondratievElement KondratievElement::operator*(Complex c) const {
  KondratievElement out;
  for (const auto& [alpha, ca] : terms_) out.add_term(alpha, ca * c);
  return out;
}

KondratievElement wick_product(const KondratievElement& f, const KondratievElement& g) {
  KondratievElement out;
  for (const auto& [alpha, ca] : f.terms())
    for (const auto& [beta, cb] : g.terms()) out.add_term(alpha.plus(beta), ca * cb);
  return out;
}

double weight_log(const MultiIndex& alpha, int k) {
  return static_cast<double>(k) * alpha.log_weight();
}

double weight(const MultiIndex& alpha, int k) {
  double lw = weight_log(alpha, k);
  if (lw > kLogDblMax)
    throw WeightOverflow("(2N)^{k*alpha} exceeds double range", lw);
  return std::exp(lw);
}

double hk_norm(const KondratievElement& f, int k) {
  double sum = 0.0;
  for (const auto& [alpha, c] : f.terms()) {
    double t = std::norm(c) * std::exp(-static_cast<double>(k) * alpha.log_weight());
    sum += t;
  }
  return std::sqrt(sum);
}

double l2w_norm(const KondratievElement& f) {
  double sum = 0.0;
  for (const auto& [alpha, c] : f.terms()) {
    double lt = 2.0 * std::log(std::abs(c)) + alpha.log_factorial();
    if (lt > kLogDblMax)
      throw WeightOverflow("|c_alpha|^2 alpha! exceeds double range", lt);
    sum += std::norm(c) * std::exp(alpha.log_factorial());
    if (std::isinf(sum))
      throw WeightOverflow("chaos-space norm exceeds double range", lt);
  }
  return std::sqrt(sum);
}

TruncationSpec::TruncationSpec(int num_vars, int max_degree, int k, int ell)
    : num_vars(num_vars), max_degree(max_degree), k(k), ell(ell) {
  if (num_vars < 1) throw std::invalid_argument("truncation needs num_vars >= 1");
  if (max_degree < 0) throw std::invalid_argument("truncation needs max_degree >= 0");
  if (ell < 1) throw std::invalid_argument("truncation needs ell >= 1");
  if (k <= ell + 1)
    throw std::invalid_argument("truncation needs k > ell + 1 for a finite norm bound");
}

std::uint64_t TruncationSpec::basis_cardinality() const {
  // C(d + W, W), computed incrementally; saturates instead of overflowing.
  std::uint64_t c = 1;
  for (int i = 1; i <= max_degree; ++i) {
    long double next = static_cast<long double>(c) * (num_vars + i) / i;
    if (next > static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
      return std::numeric_limits<std::uint64_t>::max();
    c = static_cast<std::uint64_t>(next + 0.5L);
  }
  return c;
}

namespace {

// Riemann zeta for real s >= 2 by Euler-Maclaurin: partial sum to J plus
// tail corrections through the B_6 term. Absolute error < 1e-20 here.
double zeta_em(double s) {
  constexpr int J = 64;
  double sum = 0.0;
  for (int j = 1; j <= J; ++j) sum += std::pow(static_cast<double>(j), -s);
  const double Jd = J;
  // Partial sum includes j = J, so the boundary term enters with minus sign.
  double tail = std::pow(Jd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Jd, -s);
  tail += s / 12.0 * std::pow(Jd, -s - 1.0);
  tail -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(Jd, -s - 3.0);
  tail += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * std::pow(Jd, -s - 5.0);
  return sum + tail;
}

}  // namespace

double vage_constant(int gap) {
  if (gap < 2)
    throw DivergentSeries("norm-bound constant A(gap) diverges for gap < 2");
  // log A^2 = sum_{p>=1} zeta(gap*p) 2^{-gap*p} / p; ratio ~ 2^{-gap} <= 1/4.
  double log_a2 = 0.0;
  for (int p = 1; p <= 256; ++p) {
    double gp = static_cast<double>(gap) * p;
    double term = zeta_em(gp) * std::exp(-gp * std::numbers::ln2_v<double>) / p;
    log_a2 += term;
    if (term < 1e-18 * (1.0 + log_a2)) break;
  }
  return std::exp(0.5 * log_a2);
}

VageReport vage_check(const KondratievElement& h, const KondratievElement& f,
                      const TruncationSpec& spec) {
  VageReport r;
  r.constant = vage_constant(spec.k - spec.ell);
  r.lhs = hk_norm(wick_product(h, f), spec.k);
  r.rhs = r.constant * hk_norm(h, spec.ell) * hk_norm(f, spec.k);
  r.satisfied = r.lhs <= r.rhs * (1.0 + 1e-12) + 1e-300;
  return r;
}

}  // namespace wns
