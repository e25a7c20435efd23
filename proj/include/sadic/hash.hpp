#pragma once

#include <cstdint>
#include <vector>

#include "sadic/word.hpp"

namespace sadic {

/// Pair of polynomial hashes modulo 2^61 - 1 with two fixed bases.
struct WindowHash {
  std::uint64_t h1 = 0;
  std::uint64_t h2 = 0;
  friend bool operator==(const WindowHash&, const WindowHash&) = default;
  friend auto operator<=>(const WindowHash&, const WindowHash&) = default;
};

/// Prefix hashes of a word; factor hashes in O(1).
class PrefixHash {
 public:
  explicit PrefixHash(const Word& w);
  /// Hash of w[begin, begin + len).
  WindowHash factor(std::size_t begin, std::size_t len) const;
  std::size_t size() const noexcept { return p1_.size() - 1; }

  /// Hash of a whole word, equal to PrefixHash(w).factor(0, |w|).
  static WindowHash of(const Word& w);

 private:
  std::vector<std::uint64_t> p1_, p2_;
};

}  // namespace sadic
