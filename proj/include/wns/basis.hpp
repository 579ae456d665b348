#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "wns/chaos.hpp"
#include "wns/multi_index.hpp"

namespace wns {

inline constexpr int kDefaultBasisCap = 100000;

// The graded-lex ordered list of all multi-indices with positions <= d and
// total degree <= W, i.e. the index set of the truncated chaos basis.
// Ordinal 0 is always the vacuum, and for fixed d the degree-W list is a
// prefix of every higher-degree list (the property the exact-padding
// compressions rely on).
class BasisEnumeration {
 public:
  BasisEnumeration(TruncationSpec spec, std::vector<MultiIndex> indices);

  const TruncationSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& at(int ordinal) const { return indices_.at(static_cast<std::size_t>(ordinal)); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  // -1 when alpha is not in the truncation.
  int ordinal(const MultiIndex& alpha) const;

 private:
  TruncationSpec spec_;
  std::vector<MultiIndex> indices_;
  std::unordered_map<MultiIndex, int, MultiIndexHash> ordinals_;
};

using BasisPtr = std::shared_ptr<const BasisEnumeration>;

// Enumerates the truncated basis; throws TruncationTooLarge when the
// cardinality C(d+W, W) exceeds cap.
BasisEnumeration enumerate_basis(const TruncationSpec& spec, int cap = kDefaultBasisCap);
BasisPtr make_basis(const TruncationSpec& spec, int cap = kDefaultBasisCap);

// Small per-computation cache so padded enumerations are built once.
class BasisCache {
 public:
  explicit BasisCache(int cap = kDefaultBasisCap) : cap_(cap) {}
  BasisPtr get(const TruncationSpec& spec);

 private:
  int cap_;
  std::map<std::tuple<int, int, int, int>, BasisPtr> cache_;
};

}  // namespace wns
