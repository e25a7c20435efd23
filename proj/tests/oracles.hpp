#pragma once

// Brute-force reference implementations. They work on raw image vectors
// and never call into the library, so they can serve as test oracles.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Word = std::u32string;
using Letter = char32_t;
using Images = std::vector<Word>;

inline Word word_of(const std::string& chars, char first = 'a') {
  Word w;
  for (char c : chars) w.push_back(static_cast<Letter>(c - first));
  return w;
}

inline std::size_t least_period(const Word& w) {
  for (std::size_t p = 1; p < w.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < w.size() && ok; ++i) ok = w[i] == w[i + p];
    if (ok) return p;
  }
  return w.size();
}

// Smallest |z| such that z is a suffix of u or u a suffix of z, and z is
// a prefix of v or v a prefix of z (u = w[0,pos), v = w[pos,n)).
inline std::size_t local_period(const Word& w, std::size_t pos) {
  const Word u = w.substr(0, pos), v = w.substr(pos);
  for (std::size_t p = 1;; ++p) {
    std::vector<std::optional<Letter>> z(p);
    bool ok = true;
    for (std::size_t i = 0; i < std::min(p, u.size()); ++i) z[p - 1 - i] = u[u.size() - 1 - i];
    for (std::size_t j = 0; j < std::min(p, v.size()) && ok; ++j) {
      if (z[j] && *z[j] != v[j]) ok = false;
      z[j] = v[j];
    }
    if (ok) return p;
  }
}

inline Word apply(const Images& s, const Word& w) {
  Word out;
  for (Letter a : w) out += s.at(a);
  return out;
}

inline std::set<Word> factors_of_length(const std::vector<Word>& words, std::size_t len) {
  std::set<Word> out;
  for (const Word& w : words)
    for (std::size_t i = 0; i + len <= w.size(); ++i) out.insert(w.substr(i, len));
  return out;
}

// Words of length `len` in the language of a stationary substitution:
// factors of s^k(a) for growing k until two consecutive depths agree.
inline std::set<Word> substitution_language(const Images& s, std::size_t len) {
  std::vector<Word> cur;
  for (std::size_t a = 0; a < s.size(); ++a) cur.push_back(Word(1, static_cast<Letter>(a)));
  std::set<Word> prev;
  for (int k = 0; k < 40; ++k) {
    for (Word& w : cur) w = oracle::apply(s, w);
    std::size_t shortest = cur.front().size();
    for (const Word& w : cur) shortest = std::min(shortest, w.size());
    auto now = factors_of_length(cur, len);
    if (shortest > 4 * len + 8 && now == prev) return now;
    prev = std::move(now);
  }
  return prev;
}

// Composite s_0 o s_1 o ... o s_{k-1} of image vectors.
inline Images compose_all(const std::vector<Images>& chain) {
  Images out = chain.back();
  for (std::size_t i = chain.size() - 1; i-- > 0;)
    for (Word& w : out) w = oracle::apply(chain[i], w);
  return out;
}

using Symbol = std::pair<std::size_t, Letter>;

// Radius-r windows fully inside s(x), x over `xs`, mapped to the symbols
// (offset, letter) of their centres.
inline std::map<Word, std::set<Symbol>> window_symbols(const Images& s, const std::set<Word>& xs, std::size_t r) {
  std::map<Word, std::set<Symbol>> out;
  for (const Word& x : xs) {
    std::vector<std::pair<std::size_t, Letter>> owner;
    for (Letter a : x)
      for (std::size_t k = 0; k < s[a].size(); ++k) owner.emplace_back(k, a);
    const Word img = oracle::apply(s, x);
    for (std::size_t c = r; c + r < img.size(); ++c) out[img.substr(c - r, 2 * r + 1)].insert(owner[c]);
  }
  return out;
}

inline bool windows_unambiguous(const std::map<Word, std::set<Symbol>>& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second.size() == 1; });
}

// Occurrence gaps of the letter `marker` in w: the words between
// consecutive occurrences.
inline std::set<Word> gaps(const Word& w, Letter marker) {
  std::vector<std::size_t> occ;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == marker) occ.push_back(i);
  std::set<Word> out;
  for (std::size_t i = 0; i + 1 < occ.size(); ++i) out.insert(w.substr(occ[i], occ[i + 1] - occ[i]));
  return out;
}

// Pairs of (m+1)-words sharing their m-suffix (right) or m-prefix (left).
inline std::set<std::pair<Word, Word>> tail_pairs(const std::set<Word>& words, std::size_t m, bool right) {
  std::map<Word, std::vector<Word>> groups;
  for (const Word& w : words) groups[right ? w.substr(1, m) : w.substr(0, m)].push_back(w);
  std::set<std::pair<Word, Word>> out;
  for (auto& [k, ws] : groups)
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = i + 1; j < ws.size(); ++j) out.insert({std::min(ws[i], ws[j]), std::max(ws[i], ws[j])});
  return out;
}

// Search for words u, v with s(u) a prefix of y_prefix s(v).
struct WitnessQuery {
  Images images;
  Word y_prefix;
  std::optional<Letter> u_first;
  bool first_letters_differ = true;
  std::size_t min_u = 1, max_u = 8, max_v = 8;
};

inline std::optional<std::pair<Word, Word>> find_witness(const WitnessQuery& q) {
  std::set<std::tuple<Word, bool, std::size_t, std::size_t>> dead;
  Word u, v;
  std::function<bool(const Word&, const Word&)> dfs = [&](const Word& X, const Word& Y) -> bool {
    const std::size_t n = std::min(X.size(), Y.size());
    if (X.compare(0, n, Y, 0, n) != 0) return false;
    if (u.size() >= q.min_u && !v.empty() && X.size() <= Y.size()) return true;
    const bool x_ahead = X.size() > Y.size();
    const Word excess = x_ahead ? X.substr(n) : Y.substr(n);
    auto key = std::make_tuple(excess, x_ahead, u.size(), v.size());
    if (dead.count(key)) return false;
    const std::size_t k = q.images.size();
    if (X.size() <= Y.size() && u.size() < q.max_u)
      for (std::size_t a = 0; a < k; ++a) {
        u.push_back(static_cast<Letter>(a));
        if (dfs(X + q.images[a], Y)) return true;
        u.pop_back();
      }
    if ((Y.size() <= X.size() || v.empty()) && v.size() < q.max_v)
      for (std::size_t b = 0; b < k; ++b) {
        if (v.empty() && q.first_letters_differ && u.size() > 0 && b == u[0]) continue;
        v.push_back(static_cast<Letter>(b));
        if (dfs(X, Y + q.images[b])) return true;
        v.pop_back();
      }
    dead.insert(key);
    return false;
  };
  for (std::size_t a = 0; a < q.images.size(); ++a) {
    if (q.u_first && *q.u_first != a) continue;
    u.assign(1, static_cast<Letter>(a));
    v.clear();
    dead.clear();
    if (dfs(q.images[a], q.y_prefix)) return std::make_pair(u, v);
  }
  return std::nullopt;
}

// Whether every image is a concatenation of the words of P.
inline bool parses_over(const Word& w, const std::vector<Word>& P) {
  std::vector<bool> ok(w.size() + 1, false);
  ok[0] = true;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (ok[i])
      for (const Word& p : P)
        if (w.compare(i, p.size(), p) == 0) ok[i + p.size()] = true;
  return ok[w.size()];
}

// sigma = p o q with q letter-onto onto fewer than #A letters exists iff
// the images all parse over fewer than #A words.
inline bool has_rank_lowering(const Images& s) {
  std::set<Word> fs;
  for (const Word& w : s)
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j <= w.size(); ++j) fs.insert(w.substr(i, j - i));
  const std::vector<Word> F(fs.begin(), fs.end());
  const std::size_t k = s.size() - 1;
  std::vector<Word> pick;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) -> bool {
    if (!pick.empty() && std::all_of(s.begin(), s.end(), [&](const Word& w) { return parses_over(w, pick); }))
      return true;
    if (pick.size() == k) return false;
    for (std::size_t i = from; i < F.size(); ++i) {
      pick.push_back(F[i]);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return k > 0 && rec(0);
}

}  // namespace oracle
