#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace crnv {

using SpeciesId = std::uint32_t;
using Count = std::uint32_t;

/// A multiset of species, stored as (id, count) entries sorted by id with
/// every count >= 1. The representation is canonical, so equal multisets
/// compare equal entry-for-entry and ordering/hashing are well defined.
class Multiset {
public:
  using Entry = std::pair<SpeciesId, Count>;

  Multiset() = default;
  Multiset(std::initializer_list<Entry> entries);

  static Multiset single(SpeciesId id, Count n = 1);

  bool empty() const { return entries_.empty(); }
  std::size_t distinct() const { return entries_.size(); }
  std::uint64_t total() const;
  Count count(SpeciesId id) const;
  bool contains(SpeciesId id) const { return count(id) > 0; }

  const std::vector<Entry>& entries() const { return entries_; }

  void add(SpeciesId id, Count n = 1);

  /// Pointwise <=.
  bool subset_of(const Multiset& other) const;

  Multiset operator+(const Multiset& rhs) const;
  Multiset& operator+=(const Multiset& rhs);

  /// Pointwise max(0, a - b).
  Multiset minus_clamped(const Multiset& rhs) const;

  /// Pointwise a - b; requires rhs to be a subset of *this.
  Multiset minus_exact(const Multiset& rhs) const;

  /// Pointwise maximum.
  static Multiset cwise_max(const Multiset& a, const Multiset& b);

  /// Entries whose species satisfy `keep`.
  template <typename Pred>
  Multiset filtered(Pred keep) const {
    Multiset out;
    out.entries_.reserve(entries_.size());
    for (const auto& [id, n] : entries_)
      if (keep(id)) out.entries_.emplace_back(id, n);
    return out;
  }

  /// True iff every species in the multiset satisfies `pred`.
  template <typename Pred>
  bool all_of(Pred pred) const {
    for (const auto& [id, n] : entries_)
      if (!pred(id)) return false;
    return true;
  }

  bool operator==(const Multiset&) const = default;
  auto operator<=>(const Multiset&) const = default;

  std::uint64_t hash() const;

private:
  std::vector<Entry> entries_;
};

struct MultisetHash {
  std::size_t operator()(const Multiset& m) const {
    return static_cast<std::size_t>(m.hash());
  }
};

inline std::uint64_t hash_mix(std::uint64_t seed, std::uint64_t v) {
  // splitmix64-style combine; stable across platforms
  v += 0x9e3779b97f4a7c15ULL + seed;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

}  // namespace crnv
