#include "sadic/recognize.hpp"

#include <algorithm>

#include "sadic/error.hpp"

namespace sadic {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::recognizable_at_r:
      return "recognizable_at_r";
    case Verdict::violated:
      return "violated";
    case Verdict::unknown_at_cap:
      return "unknown_at_cap";
  }
  return "?";
}

std::size_t required_language_length(const Morphism& sigma, std::size_t r) {
  const std::size_t g = metrics(sigma).min_len;
  return 2 * ((r + g - 1) / g) + 1;
}

namespace {

struct Scan {
  const Morphism& sigma;
  std::vector<Word> words;  // x-words of length m
  std::size_t r;
  std::size_t K;

  Scan(const Morphism& s, const LanguageTable& lx, std::size_t radius) : sigma(s), r(radius) {
    if (!(lx.alphabet == s.source())) throw HypothesisError("language table alphabet differs from the morphism source");
    const std::size_t m = required_language_length(s, r);
    if (lx.max_len < m)
      throw HypothesisError("language table too shallow: need words of length " + std::to_string(m) + ", have " +
                            std::to_string(lx.max_len));
    K = m / 2;
    words = lx.of_length(m);
  }

  std::size_t center_start(const Word& v) const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < K; ++i) s += sigma.images()[v[i]].size();
    return s;
  }

  // f(hash, symbol, word index, position in image)
  template <class F>
  void run(F&& f) const {
    for (std::size_t i = 0; i < words.size(); ++i) {
      const Word& v = words[i];
      const Word image = sadic::apply(sigma, v);
      const PrefixHash ph(image);
      const std::size_t start = center_start(v);
      const std::size_t len = sigma.images()[v[K]].size();
      for (std::size_t p = start; p < start + len; ++p)
        f(ph.factor(p - r, 2 * r + 1), Symbol{p - start, v[K]}, i, p);
    }
  }

  Interpretation materialize(std::size_t word, std::size_t pos) const {
    const Word& v = words[word];
    const Word image = sadic::apply(sigma, v);
    Interpretation it;
    it.window = image.substr(pos - r, 2 * r + 1);
    const std::size_t start = center_start(v);
    it.offset = pos - start;
    it.letter = v[K];
    std::size_t cut = 0;
    for (std::size_t i = 0; i <= v.size(); ++i) {
      if (cut + r >= pos && cut <= pos + r + 1) it.local_cuts.push_back(cut + r - pos);
      if (i < v.size()) cut += sigma.images()[v[i]].size();
    }
    return it;
  }
};

struct RawEntry {
  WindowHash hash;
  Symbol symbol;
  std::uint32_t word;
  std::uint32_t pos;
};

}  // namespace

std::map<Word, std::set<Symbol>> centered_interpretations(const Morphism& sigma, const LanguageTable& lx,
                                                          std::size_t r) {
  Scan scan(sigma, lx, r);
  std::map<Word, std::set<Symbol>> out;
  for (std::size_t i = 0; i < scan.words.size(); ++i) {
    const Word image = sadic::apply(sigma, scan.words[i]);
    const std::size_t start = scan.center_start(scan.words[i]);
    const Letter c = scan.words[i][scan.K];
    for (std::size_t p = start; p < start + sigma.images()[c].size(); ++p)
      out[image.substr(p - r, 2 * r + 1)].insert(Symbol{p - start, c});
  }
  return out;
}

RecognizabilityReport recognizability_check(const Morphism& sigma, const LanguageTable& lx, std::size_t r) {
  Scan scan(sigma, lx, r);
  std::vector<RawEntry> entries;
  scan.run([&](const WindowHash& h, Symbol s, std::size_t w, std::size_t p) {
    entries.push_back({h, s, static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(p)});
  });
  std::sort(entries.begin(), entries.end(), [](const RawEntry& x, const RawEntry& y) {
    return std::tie(x.hash, x.symbol) < std::tie(y.hash, y.symbol);
  });
  RecognizabilityReport rep;
  rep.radius = r;
  rep.scanned_length = 2 * scan.K + 1;
  rep.language_stabilized = lx.stabilized;
  rep.verdict = Verdict::recognizable_at_r;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    while (j < entries.size() && entries[j].hash == entries[i].hash) ++j;
    ++rep.table_size;
    if (!rep.witness && entries[j - 1].symbol != entries[i].symbol) {
      // Same hash, different symbols: confirm on the actual windows.
      std::vector<Interpretation> group;
      for (std::size_t k = i; k < j; ++k)
        if (k == i || entries[k].symbol != entries[k - 1].symbol)
          group.push_back(scan.materialize(entries[k].word, entries[k].pos));
      for (std::size_t x = 0; x < group.size() && !rep.witness; ++x)
        for (std::size_t y = x + 1; y < group.size() && !rep.witness; ++y)
          if (group[x].window == group[y].window) rep.witness = std::make_pair(group[x], group[y]);
      if (rep.witness) rep.verdict = Verdict::violated;
    }
    i = j;
  }
  return rep;
}

std::vector<Interpretation> parse_window(const Word& window, const Morphism& sigma, const LanguageTable& lx) {
  if (window.size() % 2 == 0) throw HypothesisError("window length must be odd");
  for (Letter c : window)
    if (c >= sigma.target().size()) return {};
  const std::size_t r = window.size() / 2;
  Scan scan(sigma, lx, r);
  const WindowHash target = PrefixHash::of(window);
  std::set<Interpretation> found;
  scan.run([&](const WindowHash& h, Symbol, std::size_t w, std::size_t p) {
    if (h != target) return;
    Interpretation it = scan.materialize(w, p);
    if (it.window == window) found.insert(std::move(it));
  });
  return {found.begin(), found.end()};
}

ConstantSearch minimal_constant(const Morphism& sigma, const LanguageTable& lx, std::size_t cap) {
  ConstantSearch out;
  out.cap = cap;
  for (std::size_t r = 0; r <= cap; ++r) {
    if (lx.max_len < required_language_length(sigma, r)) break;
    out.reports.push_back(recognizability_check(sigma, lx, r));
    if (out.reports.back().verdict == Verdict::recognizable_at_r) {
      out.constant = r;
      break;
    }
  }
  return out;
}

std::optional<std::size_t> minimal_constant_bisect(const Morphism& sigma, const LanguageTable& lx, std::size_t lo,
                                                   std::size_t hi) {
  auto ok = [&](std::size_t r) { return recognizability_check(sigma, lx, r).verdict == Verdict::recognizable_at_r; };
  if (!ok(hi)) return std::nullopt;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

WindowIndex::WindowIndex(const Morphism& sigma, const LanguageTable& lx, std::size_t r) : sigma_(sigma), r_(r) {
  Scan scan(sigma_, lx, r);
  scan.run([&](const WindowHash& h, Symbol s, std::size_t, std::size_t) { entries_.push_back({h, s}); });
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
}

std::vector<Symbol> WindowIndex::lookup(const WindowHash& h) const {
  auto lo = std::lower_bound(entries_.begin(), entries_.end(), h,
                             [](const Entry& e, const WindowHash& k) { return e.hash < k; });
  std::vector<Symbol> out;
  for (; lo != entries_.end() && lo->hash == h; ++lo) out.push_back(lo->symbol);
  return out;
}

std::vector<Symbol> WindowIndex::lookup(const PrefixHash& text, std::size_t center) const {
  if (center < r_ || center + r_ >= text.size()) throw HypothesisError("window does not fit inside the text");
  return lookup(text.factor(center - r_, 2 * r_ + 1));
}

}  // namespace sadic
