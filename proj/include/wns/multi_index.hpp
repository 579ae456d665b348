#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace wns {

// Finitely supported multi-index (alpha_1, alpha_2, ...) labelling one
// Hermite chaos basis element. Stored sparse as (position, exponent) pairs
// with 1-based positions strictly increasing and exponents > 0, so equality
// is structural and the zero index is the empty list (the vacuum label).
class MultiIndex {
 public:
  using Entry = std::pair<int, int>;  // (position >= 1, exponent >= 1)

  MultiIndex() = default;

  // epsilon_j: 1 at position j, zero elsewhere.
  static MultiIndex unit(int position);
  // From sparse entries; validates ordering and positivity.
  static MultiIndex from_entries(std::vector<Entry> entries);
  // From a dense exponent prefix (alpha_1, alpha_2, ...); zeros are fine.
  static MultiIndex from_dense(std::span<const int> exponents);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  int degree() const;        // |alpha| = sum of exponents
  int max_position() const;  // largest position with nonzero exponent; 0 if none
  int exponent(int position) const;
  std::vector<int> dense() const;  // dense prefix up to max_position()

  MultiIndex plus(const MultiIndex& other) const;
  // Componentwise difference; nullopt if any exponent would go negative.
  std::optional<MultiIndex> minus(const MultiIndex& other) const;

  double log_weight() const;     // log (2N)^alpha = sum_j alpha_j log(2j)
  double log_factorial() const;  // log alpha!  = sum_j log(alpha_j!)

  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<Entry> entries_;
};

// Graded lexicographic order: total degree first; ties broken at the
// earliest position where the exponents differ, larger exponent first.
// For two variables and degree two: [] < (1) < (0,1) < (2) < (1,1) < (0,2).
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return graded_lex_less(a, b);
  }
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const;
};

}  // namespace wns
