#include "sadic/periods.hpp"

#include <algorithm>

#include "sadic/error.hpp"

namespace sadic {

std::size_t least_period(const Word& w) {
  if (w.empty()) throw HypothesisError("empty word");
  // Border array: per(w) = |w| - longest proper border.
  const std::size_t n = w.size();
  std::vector<std::size_t> border(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k];
    if (w[i] == w[k]) ++k;
    border[i + 1] = k;
  }
  return n - border[n];
}

std::size_t local_period(const Word& w, std::size_t pos) {
  const std::size_t n = w.size();
  if (pos == 0 || pos >= n) throw HypothesisError("not an interior position");
  for (std::size_t p = 1;; ++p) {
    // zz straddles the cut; letters of z seen on both sides must agree.
    bool ok = true;
    std::size_t lo = pos >= p ? pos - p : 0;
    for (std::size_t i = lo; i < pos && ok; ++i)
      if (i + p < n && w[i] != w[i + p]) ok = false;
    if (ok) return p;
  }
}

std::vector<std::size_t> critical_positions(const Word& w) {
  if (w.size() < 2) throw HypothesisError("word too short");
  const std::size_t per = least_period(w);
  std::vector<std::size_t> out;
  for (std::size_t pos = 1; pos < w.size(); ++pos)
    if (local_period(w, pos) == per) out.push_back(pos);
  return out;
}

}  // namespace sadic
