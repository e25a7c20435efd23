#include "sadic/hash.hpp"

#include <mutex>

namespace sadic {

namespace {

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kBase1 = 0x1f3d5b79a2c4e681ULL % kMod;
constexpr std::uint64_t kBase2 = 0x2b7e151628aed2a6ULL % kMod;

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  __uint128_t p = static_cast<__uint128_t>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kMod), hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  return s >= kMod ? s - kMod : s;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kMod ? s - kMod : s;
}

std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kMod - b; }

// Powers are shared and grown on demand.
struct Powers {
  std::vector<std::uint64_t> b1{1}, b2{1};
  std::mutex mu;
  void ensure(std::size_t n) {
    std::lock_guard<std::mutex> lock(mu);
    while (b1.size() <= n) {
      b1.push_back(mul(b1.back(), kBase1));
      b2.push_back(mul(b2.back(), kBase2));
    }
  }
};

Powers& powers() {
  static Powers p;
  return p;
}

}  // namespace

PrefixHash::PrefixHash(const Word& w) : p1_(w.size() + 1, 0), p2_(w.size() + 1, 0) {
  powers().ensure(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::uint64_t c = static_cast<std::uint64_t>(w[i]) + 1;
    p1_[i + 1] = add(mul(p1_[i], kBase1), c);
    p2_[i + 1] = add(mul(p2_[i], kBase2), c);
  }
}

WindowHash PrefixHash::factor(std::size_t begin, std::size_t len) const {
  const Powers& pw = powers();
  return {sub(p1_[begin + len], mul(p1_[begin], pw.b1[len])), sub(p2_[begin + len], mul(p2_[begin], pw.b2[len]))};
}

WindowHash PrefixHash::of(const Word& w) {
  WindowHash h;
  for (Letter a : w) {
    const std::uint64_t c = static_cast<std::uint64_t>(a) + 1;
    h.h1 = add(mul(h.h1, kBase1), c);
    h.h2 = add(mul(h.h2, kBase2), c);
  }
  return h;
}

}  // namespace sadic
