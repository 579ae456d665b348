#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "wns/operators.hpp"

namespace wns {

// Declarative description of a discrete-time process whose samples live in
// the truncated chaos space. Four kinds:
//
//  white          formal stand-in for an uncorrelated unit sequence:
//                 R(n,m) = delta_{nm} * variance * I. It has *no* chaos
//                 realization (no Kondratiev sequence produces those
//                 correlations), so realize() throws; everything downstream
//                 only ever uses it through its correlations. `id`
//                 distinguishes independent white sources; the cross-
//                 correlation of a white atom with any structurally
//                 different process is declared zero.
//  deterministic  x_n = a_n * vacuum, either a constant for all n or a
//                 finite window of values (zero outside).
//  modulated      x_n = lambda^n * rho with |lambda| = 1.
//  wick_ma        x_n = sum_t h_t . u_{n-t}, Wick moving average with
//                 finitely many element-valued taps over an inner process.
struct ProcessSpec {
  enum class Kind { white, deterministic, modulated, wick_ma };

  struct White {
    double variance = 1.0;
    int id = 0;
  };
  struct Deterministic {
    bool whole_line = false;   // constant sequence vs finite window
    Complex constant{0.0, 0.0};
    long start = 0;
    std::vector<Complex> values;
    Complex value(long n) const;
  };
  struct Modulated {
    Complex lambda{1.0, 0.0};
    KondratievElement rho;
  };
  struct WickMa {
    std::vector<std::pair<long, KondratievElement>> taps;  // (lag, element)
    std::shared_ptr<const ProcessSpec> input;
  };

  Kind kind = Kind::white;
  White white;
  Deterministic det;
  Modulated mod;
  WickMa ma;

  static ProcessSpec make_white(double variance = 1.0, int id = 0);
  static ProcessSpec make_constant(Complex value);
  static ProcessSpec make_window(long start, std::vector<Complex> values);
  // Throws NonUnimodularModulation unless ||lambda| - 1| <= 1e-12.
  static ProcessSpec make_modulated(Complex lambda, KondratievElement rho);
  static ProcessSpec make_wick_ma(std::vector<std::pair<long, KondratievElement>> taps,
                                  ProcessSpec input);

  // Extra chaos degree the padded Gram computation needs on top of the
  // observation basis: tap degrees accumulate down the chain.
  int chaos_degree() const;
  int max_position() const;
  // True when every sample is a scalar multiple of the vacuum (white counts:
  // its correlations are scalar).
  bool is_deterministic_scalar() const;
  bool realizable() const;  // false iff a white atom appears
  // The chaos element x_n; throws Error for white inputs.
  KondratievElement realize(long n) const;
  bool structurally_equal(const ProcessSpec& other) const;
  // Variable-budget check against a truncation; throws VariableOutOfRange.
  void validate(const TruncationSpec& spec) const;
};

// Evaluates R(n, m) = M*_{x_n} M_{x_m} compressed to the degree-W basis of
// `spec`. Entries are exact: Wick products are expanded in enlarged bases
// (degree W + accumulated tap degree) before compressing, and the grading
// makes the small basis a prefix of the large one. Thread-safe.
class CorrelationKernel {
 public:
  CorrelationKernel(const ProcessSpec& p, const TruncationSpec& spec,
                    int cap = kDefaultBasisCap);
  ~CorrelationKernel();
  CorrelationKernel(CorrelationKernel&&) noexcept;

  Eigen::MatrixXcd operator()(long n, long m) const;
  int dim() const;
  BasisPtr basis() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Evaluates X(n, m) = M*_{q_n} M_{p_m} (cross-correlation of p against q)
// compressed to the degree-W basis, exact through the same padding scheme.
class CrossCorrelationKernel {
 public:
  CrossCorrelationKernel(const ProcessSpec& p, const ProcessSpec& q,
                         const TruncationSpec& spec, int cap = kDefaultBasisCap);
  ~CrossCorrelationKernel();
  CrossCorrelationKernel(CrossCorrelationKernel&&) noexcept;

  Eigen::MatrixXcd operator()(long n, long m) const;
  int dim() const;
  BasisPtr basis() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot wrappers returning OperatorMatrix on the base basis.
OperatorMatrix correlation(const ProcessSpec& p, long n, long m, const TruncationSpec& spec);
OperatorMatrix cross_correlation(const ProcessSpec& p, const ProcessSpec& q, long n,
                                 long m, const TruncationSpec& spec);

struct StationarityReport {
  double spread = 0.0;  // max_{m} max_{n} || R(n, n+m) - R(0, m) ||_op
  double tol = 0.0;
  bool stationary = false;
};

// Probes R(n, n+m) for all n, n+m in [-window, window] against R(0, m).
StationarityReport stationarity_check(const ProcessSpec& p, int window,
                                      const TruncationSpec& spec, double tol = 1e-10);

}  // namespace wns
