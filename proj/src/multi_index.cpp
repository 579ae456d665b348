#include "wns/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wns {

MultiIndex MultiIndex::unit(int position) {
  if (position < 1) throw std::invalid_argument("multi-index position must be >= 1");
  MultiIndex m;
  m.entries_ = {{position, 1}};
  return m;
}

MultiIndex MultiIndex::from_entries(std::vector<Entry> entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first < 1 || entries[i].second < 1)
      throw std::invalid_argument("multi-index entries need position >= 1, exponent >= 1");
    if (i > 0 && entries[i - 1].first >= entries[i].first)
      throw std::invalid_argument("multi-index positions must be strictly increasing");
  }
  MultiIndex m;
  m.entries_ = std::move(entries);
  return m;
}

MultiIndex MultiIndex::from_dense(std::span<const int> exponents) {
  MultiIndex m;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw std::invalid_argument("multi-index exponents must be >= 0");
    if (exponents[i] > 0) m.entries_.emplace_back(static_cast<int>(i) + 1, exponents[i]);
  }
  return m;
}

int MultiIndex::degree() const {
  int d = 0;
  for (const auto& [j, a] : entries_) d += a;
  return d;
}

int MultiIndex::max_position() const {
  return entries_.empty() ? 0 : entries_.back().first;
}

int MultiIndex::exponent(int position) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), position,
                             [](const Entry& e, int p) { return e.first < p; });
  return (it != entries_.end() && it->first == position) ? it->second : 0;
}

std::vector<int> MultiIndex::dense() const {
  std::vector<int> out(static_cast<std::size_t>(max_position()), 0);
  for (const auto& [j, a] : entries_) out[static_cast<std::size_t>(j) - 1] = a;
  return out;
}

MultiIndex MultiIndex::plus(const MultiIndex& other) const {
  MultiIndex out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, a->second + b->second);
      ++a, ++b;
    }
  }
  return out;
}

std::optional<MultiIndex> MultiIndex::minus(const MultiIndex& other) const {
  MultiIndex out;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      return std::nullopt;  // other has support where *this is zero
    } else {
      int diff = a->second - b->second;
      if (diff < 0) return std::nullopt;
      if (diff > 0) out.entries_.emplace_back(a->first, diff);
      ++a, ++b;
    }
  }
  return out;
}

double MultiIndex::log_weight() const {
  double s = 0.0;
  for (const auto& [j, a] : entries_) s += a * std::log(2.0 * j);
  return s;
}

double MultiIndex::log_factorial() const {
  double s = 0.0;
  for (const auto& [j, a] : entries_) s += std::lgamma(static_cast<double>(a) + 1.0);
  return s;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  auto ia = a.entries().begin(), ea = a.entries().end();
  auto ib = b.entries().begin(), eb = b.entries().end();
  while (ia != ea || ib != eb) {
    // Positions absent from one list have exponent zero there.
    int pa = (ia != ea) ? ia->first : std::numeric_limits<int>::max();
    int pb = (ib != eb) ? ib->first : std::numeric_limits<int>::max();
    if (pa < pb) return true;   // a has a larger exponent at the earlier position
    if (pb < pa) return false;
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia, ++ib;
  }
  return false;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& a) const {
  std::size_t h = 1469598103934665603ull;  // FNV-1a
  for (const auto& [j, e] : a.entries()) {
    for (std::size_t v : {static_cast<std::size_t>(j), static_cast<std::size_t>(e)}) {
      h ^= v;
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace wns
