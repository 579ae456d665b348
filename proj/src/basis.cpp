#include "wns/basis.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "wns/errors.hpp"

namespace wns {

BasisEnumeration::BasisEnumeration(TruncationSpec spec, std::vector<MultiIndex> indices)
    : spec_(spec), indices_(std::move(indices)) {
  ordinals_.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i)
    ordinals_.emplace(indices_[i], static_cast<int>(i));
}

int BasisEnumeration::ordinal(const MultiIndex& alpha) const {
  auto it = ordinals_.find(alpha);
  return it == ordinals_.end() ? -1 : it->second;
}

namespace {

void fill(int d, int remaining, int position, std::vector<int>& stack,
          std::vector<MultiIndex>& out) {
  if (position > d) {
    out.push_back(MultiIndex::from_dense(stack));
    return;
  }
  for (int a = 0; a <= remaining; ++a) {
    stack.push_back(a);
    fill(d, remaining - a, position + 1, stack, out);
    stack.pop_back();
  }
}

}  // namespace

BasisEnumeration enumerate_basis(const TruncationSpec& spec, int cap) {
  std::uint64_t card = spec.basis_cardinality();
  if (card > static_cast<std::uint64_t>(cap))
    throw TruncationTooLarge("basis cardinality " + std::to_string(card) +
                             " exceeds cap " + std::to_string(cap));
  std::vector<MultiIndex> indices;
  indices.reserve(static_cast<std::size_t>(card));
  std::vector<int> stack;
  fill(spec.num_vars, spec.max_degree, 1, stack, indices);
  std::sort(indices.begin(), indices.end(), GradedLexLess{});
  assert(indices.size() == card);
  assert(indices.front().empty());
  return BasisEnumeration(spec, std::move(indices));
}

BasisPtr make_basis(const TruncationSpec& spec, int cap) {
  return std::make_shared<BasisEnumeration>(enumerate_basis(spec, cap));
}

BasisPtr BasisCache::get(const TruncationSpec& spec) {
  auto key = std::make_tuple(spec.num_vars, spec.max_degree, spec.k, spec.ell);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  BasisPtr b = make_basis(spec, cap_);
  cache_.emplace(key, b);
  return b;
}

}  // namespace wns
