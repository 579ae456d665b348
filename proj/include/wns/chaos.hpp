#pragma once

#include <complex>
#include <cstdint>
#include <map>

#include "wns/multi_index.hpp"

namespace wns {

using Complex = std::complex<double>;

// Finite chaos expansion  f = sum_alpha c_alpha H_alpha  with complex
// coefficients, the computational stand-in for a Kondratiev-space element.
// Supports stay finite: coefficients whose magnitude drops below
// kPruneThreshold are removed by the arithmetic entry points.
class KondratievElement {
 public:
  using TermMap = std::map<MultiIndex, Complex, GradedLexLess>;

  static constexpr double kPruneThreshold = 1e-300;

  KondratievElement() = default;

  static KondratievElement zero() { return {}; }
  // c * H_vacuum (the deterministic scalar c).
  static KondratievElement scalar(Complex c);
  // H_alpha with coefficient 1.
  static KondratievElement basis(const MultiIndex& alpha);
  static KondratievElement from_terms(TermMap terms);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Largest |alpha| over the support; 0 for the zero element.
  int degree() const;
  // Largest chaos variable index used; 0 when only the vacuum appears.
  int max_position() const;
  Complex coefficient(const MultiIndex& alpha) const;
  Complex vacuum_coefficient() const { return coefficient(MultiIndex{}); }
  // True when the support is contained in {vacuum}.
  bool is_scalar() const;

  // Accumulate c onto the alpha coefficient (prunes if the sum is tiny).
  KondratievElement& add_term(const MultiIndex& alpha, Complex c);

  KondratievElement operator+(const KondratievElement& g) const;
  KondratievElement operator-(const KondratievElement& g) const;
  KondratievElement operator*(Complex c) const;
  bool operator==(const KondratievElement&) const = default;

 private:
  TermMap terms_;
};

inline KondratievElement operator*(Complex c, const KondratievElement& f) { return f * c; }

// Wick product: bilinear extension of H_alpha . H_beta = H_{alpha+beta}.
// Commutative and associative; multiplying by a scalar element equals
// scaling by its vacuum coefficient.
KondratievElement wick_product(const KondratievElement& f, const KondratievElement& g);

// (2N)^{k*alpha} = prod_j (2j)^{k*alpha_j}. Throws WeightOverflow when the
// value leaves the double range; weight_log never overflows.
double weight(const MultiIndex& alpha, int k);
double weight_log(const MultiIndex& alpha, int k);

// Graded norm  ||f||_k = sqrt( sum |c_alpha|^2 (2N)^{-k*alpha} ). Negative k
// evaluates the same formula (test-space norms); overflow surfaces as inf.
double hk_norm(const KondratievElement& f, int k);

// Plain chaos-space norm  sqrt( sum |c_alpha|^2 alpha! ); throws
// WeightOverflow if a term exceeds the double range.
double l2w_norm(const KondratievElement& f);

// Truncation parameters shared across the library: d chaos variables,
// degree <= W, ambient grading k, symbol grading ell. Requires k > ell + 1
// so the norm-bound constant below is finite.
struct TruncationSpec {
  int num_vars;    // d >= 1
  int max_degree;  // W >= 0
  int k;
  int ell;

  TruncationSpec(int num_vars, int max_degree, int k = 3, int ell = 1);

  TruncationSpec with_degree(int new_max_degree) const {
    return TruncationSpec(num_vars, new_max_degree, k, ell);
  }
  // C(d + W, W); saturates at uint64 max on overflow.
  std::uint64_t basis_cardinality() const;

  bool operator==(const TruncationSpec&) const = default;
};

// A(gap) = ( sum_alpha (2N)^{-gap*alpha} )^{1/2}
//        = prod_{j>=1} (1 - (2j)^{-gap})^{-1/2},
// finite iff gap >= 2; A(2) = sqrt(pi/2). Evaluated through the zeta series
// log A(gap)^2 = sum_{p>=1} zeta(gap*p) 2^{-gap*p} / p, accurate to ~1e-14.
// Throws DivergentSeries for gap < 2.
double vage_constant(int gap);

struct VageReport {
  double lhs;        // ||h . f||_k
  double rhs;        // A(k-ell) ||h||_ell ||f||_k
  double constant;   // A(k-ell)
  bool satisfied;    // lhs <= rhs up to 1e-12 relative slack
};

// Checks the norm inequality ||h . f||_k <= A(k-ell) ||h||_ell ||f||_k for
// the truncation's (ell, k) pair.
VageReport vage_check(const KondratievElement& h, const KondratievElement& f,
                      const TruncationSpec& spec);

}  // namespace wns
