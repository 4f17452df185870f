#include "crnv/multiset.hpp"

#include <algorithm>
#include <cassert>

namespace crnv {

Multiset::Multiset(std::initializer_list<Entry> entries) {
  for (const auto& [id, n] : entries) add(id, n);
}

Multiset Multiset::single(SpeciesId id, Count n) {
  Multiset m;
  if (n > 0) m.entries_.emplace_back(id, n);
  return m;
}

std::uint64_t Multiset::total() const {
  std::uint64_t t = 0;
  for (const auto& e : entries_) t += e.second;
  return t;
}

Count Multiset::count(SpeciesId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const Entry& e, SpeciesId v) { return e.first < v; });
  if (it != entries_.end() && it->first == id) return it->second;
  return 0;
}

void Multiset::add(SpeciesId id, Count n) {
  if (n == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const Entry& e, SpeciesId v) { return e.first < v; });
  if (it != entries_.end() && it->first == id)
    it->second += n;
  else
    entries_.insert(it, Entry{id, n});
}

bool Multiset::subset_of(const Multiset& other) const {
  auto ot = other.entries_.begin();
  for (const auto& [id, n] : entries_) {
    while (ot != other.entries_.end() && ot->first < id) ++ot;
    if (ot == other.entries_.end() || ot->first != id || ot->second < n) return false;
  }
  return true;
}

Multiset Multiset::operator+(const Multiset& rhs) const {
  Multiset out;
  out.entries_.reserve(entries_.size() + rhs.entries_.size());
  auto a = entries_.begin();
  auto b = rhs.entries_.begin();
  while (a != entries_.end() || b != rhs.entries_.end()) {
    if (b == rhs.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

Multiset& Multiset::operator+=(const Multiset& rhs) {
  *this = *this + rhs;
  return *this;
}

Multiset Multiset::minus_clamped(const Multiset& rhs) const {
  Multiset out;
  auto b = rhs.entries_.begin();
  for (const auto& [id, n] : entries_) {
    while (b != rhs.entries_.end() && b->first < id) ++b;
    Count sub = (b != rhs.entries_.end() && b->first == id) ? b->second : 0;
    if (n > sub) out.entries_.emplace_back(id, n - sub);
  }
  return out;
}

Multiset Multiset::minus_exact(const Multiset& rhs) const {
  assert(rhs.subset_of(*this));
  return minus_clamped(rhs);
}

Multiset Multiset::cwise_max(const Multiset& a, const Multiset& b) {
  Multiset out;
  out.entries_.reserve(a.entries_.size() + b.entries_.size());
  auto x = a.entries_.begin();
  auto y = b.entries_.begin();
  while (x != a.entries_.end() || y != b.entries_.end()) {
    if (y == b.entries_.end() || (x != a.entries_.end() && x->first < y->first)) {
      out.entries_.push_back(*x++);
    } else if (x == a.entries_.end() || y->first < x->first) {
      out.entries_.push_back(*y++);
    } else {
      out.entries_.emplace_back(x->first, std::max(x->second, y->second));
      ++x;
      ++y;
    }
  }
  return out;
}

std::uint64_t Multiset::hash() const {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (const auto& [id, n] : entries_) {
    h = hash_mix(h, id);
    h = hash_mix(h, n);
  }
  return h;
}

}  // namespace crnv
