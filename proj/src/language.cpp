#include "sadic/language.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_set>

#include "sadic/error.hpp"
#include "sadic/periods.hpp"

#ifndef SADIC_DEFAULT_CORPUS_DIR
#define SADIC_DEFAULT_CORPUS_DIR "corpus"
#endif

namespace sadic {

// ------------------------------------------------------------ DirectiveSequence

DirectiveSequence::DirectiveSequence(std::vector<Morphism> levels, RepeatRule repeat)
    : levels_(std::move(levels)), repeat_(repeat) {
  if (levels_.empty()) throw HypothesisError("directive sequence needs at least one level");
  for (std::size_t n = 0; n + 1 < levels_.size(); ++n)
    if (!(levels_[n].source() == levels_[n + 1].target()))
      throw HypothesisError("alphabet mismatch between levels " + std::to_string(n) + " and " +
                            std::to_string(n + 1));
  if (repeat_.kind != RepeatRule::Kind::none) {
    if (repeat_.period == 0 || repeat_.period > levels_.size())
      throw HypothesisError("repeat period must be between 1 and the number of levels");
    const Morphism& first = levels_[levels_.size() - repeat_.period];
    if (!(levels_.back().source() == first.target()))
      throw HypothesisError("repeated block does not compose with itself");
  }
}

std::size_t DirectiveSequence::declared_depth() const noexcept {
  return repeat_.kind == RepeatRule::Kind::none ? levels_.size() : std::max(kDepthCap, levels_.size());
}

const Morphism& DirectiveSequence::level(std::size_t n) const {
  if (n >= declared_depth())
    throw HypothesisError("insufficient materialized levels: level " + std::to_string(n) + " requested, depth " +
                          std::to_string(declared_depth()));
  const std::size_t E = levels_.size();
  if (n < E) return levels_[n];
  const std::size_t p = repeat_.period;
  return levels_[E - p + (n - E) % p];
}

const Alphabet& DirectiveSequence::alphabet(std::size_t n) const {
  if (n == 0) return level(0).target();
  return level(n - 1).source();
}

Morphism DirectiveSequence::composite(std::size_t n, std::size_t N) const {
  if (n > N) throw HypothesisError("composite: n > N");
  if (n == N) return Morphism::identity(alphabet(n));
  Morphism acc = level(N - 1);
  for (std::size_t k = N - 1; k-- > n;) acc = compose(level(k), acc);
  return acc;
}

std::vector<std::uint64_t> DirectiveSequence::composite_lengths(std::size_t n, std::size_t N) const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> lens(alphabet(n).size(), 1);
  for (std::size_t k = n; k < N; ++k) {
    const Morphism& m = level(k);
    std::vector<std::uint64_t> next(m.source().size(), 0);
    for (std::size_t a = 0; a < next.size(); ++a)
      for (Letter c : m.images()[a]) next[a] = lens[c] > kMax - next[a] ? kMax : next[a] + lens[c];
    lens = std::move(next);
  }
  return lens;
}

// ------------------------------------------------------------ text format

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

DirectiveSequence parse_directive_sequence(std::string_view text) {
  std::vector<std::string> sections(1);
  RepeatRule rule;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string body = line;
    if (auto h = body.find('#'); h != std::string::npos) body = body.substr(0, h);
    std::string t = trim(body);
    if (t == "---") {
      sections.emplace_back();
      continue;
    }
    if (t.rfind("repeat:", 0) == 0) {
      std::istringstream rs(t.substr(7));
      std::string kind;
      rs >> kind;
      if (kind == "stationary") {
        rule = RepeatRule::stationary();
      } else if (kind == "cycle") {
        long long k = 0;
        if (!(rs >> k) || k <= 0) throw ParseError("repeat: cycle needs a positive period");
        rule = RepeatRule::cycle(static_cast<std::size_t>(k));
      } else {
        throw ParseError("unknown repeat rule '" + kind + "'");
      }
      continue;
    }
    sections.back() += line + "\n";
  }
  std::vector<Morphism> levels;
  for (const auto& sec : sections) {
    bool has_rule = sec.find("->") != std::string::npos;
    if (!has_rule) {
      // Sections holding only comments or headers are ignored.
      std::istringstream ss(sec);
      std::string l;
      while (std::getline(ss, l)) {
        if (auto h = l.find('#'); h != std::string::npos) l = l.substr(0, h);
        if (!trim(l).empty() && trim(l).find(':') == std::string::npos)
          throw ParseError("section without rules: '" + trim(l) + "'");
      }
      continue;
    }
    const Alphabet* def = levels.empty() ? nullptr : &levels.back().source();
    levels.push_back(parse_morphism(sec, def));
  }
  if (levels.empty()) throw ParseError("directive sequence has no levels");
  return DirectiveSequence(std::move(levels), rule);
}

std::string serialize_directive_sequence(const DirectiveSequence& d) {
  std::string out;
  for (std::size_t n = 0; n < d.explicit_levels(); ++n) {
    if (n > 0) out += "---\n";
    out += serialize_morphism(d.explicit_morphisms()[n]);
  }
  switch (d.repeat().kind) {
    case RepeatRule::Kind::stationary:
      out += "repeat: stationary\n";
      break;
    case RepeatRule::Kind::cycle:
      out += "repeat: cycle " + std::to_string(d.repeat().period) + "\n";
      break;
    case RepeatRule::Kind::none:
      break;
  }
  return out;
}

std::string corpus_dir() {
  if (const char* env = std::getenv("SADIC_CORPUS_DIR"); env && *env) return env;
  return SADIC_DEFAULT_CORPUS_DIR;
}

std::vector<std::string> corpus_ids() {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir(), ec))
    if (entry.path().extension() == ".dseq") ids.push_back(entry.path().stem().string());
  if (ec) throw IoError("cannot list corpus directory '" + corpus_dir() + "'");
  std::sort(ids.begin(), ids.end());
  return ids;
}

DirectiveSequence load_directive_sequence(const std::string& id_or_path) {
  std::filesystem::path corpus_file = std::filesystem::path(corpus_dir()) / (id_or_path + ".dseq");
  DirectiveSequence d;
  if (id_or_path.find('/') == std::string::npos && std::filesystem::exists(corpus_file)) {
    d = parse_directive_sequence(read_file(corpus_file.string()));
  } else {
    d = parse_directive_sequence(read_file(id_or_path));
  }
  d.name = id_or_path;
  return d;
}

// ------------------------------------------------------------ LanguageTable

std::vector<Word> LanguageTable::of_length(std::size_t len) const {
  std::vector<Word> out;
  auto it = words.lower_bound(Word(len, 0));
  for (; it != words.end() && it->size() == len; ++it) out.push_back(*it);
  return out;
}

std::vector<Letter> LanguageTable::letters() const {
  std::vector<Letter> out;
  for (const Word& w : of_length(1)) out.push_back(w[0]);
  return out;
}

namespace {

void add_factors(std::set<Word, ShortLex>& out, const Word& w, std::size_t L) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t len = 1; len <= L && i + len <= w.size(); ++len) out.insert(w.substr(i, len));
}

std::set<Word, ShortLex> language_words(const DirectiveSequence& d, std::size_t n, std::size_t L, std::size_t N) {
  // F_k holds every length-L factor of sigma_[k,N)(a) and the whole image
  // when it is shorter than L; F_k is computed from F_{k+1}.
  std::unordered_set<Word> F;
  for (std::size_t a = 0; a < d.alphabet(N).size(); ++a) F.insert(Word(1, static_cast<Letter>(a)));
  for (std::size_t k = N; k-- > n;) {
    const Morphism& m = d.level(k);
    std::unordered_set<Word> next;
    for (const Word& g : F) {
      Word img = sadic::apply(m, g);
      if (img.size() < L) {
        next.insert(img);
      } else {
        for (std::size_t i = 0; i + L <= img.size(); ++i) next.insert(img.substr(i, L));
      }
    }
    F = std::move(next);
  }
  std::set<Word, ShortLex> out;
  for (const Word& g : F) add_factors(out, g, L);
  return out;
}

}  // namespace

LanguageTable level_language(const DirectiveSequence& d, std::size_t n, std::size_t L, std::size_t N) {
  if (L == 0) throw HypothesisError("level_language: L must be at least 1");
  if (N > d.declared_depth())
    throw HypothesisError("insufficient materialized levels: depth " + std::to_string(N) + " requested, " +
                          std::to_string(d.declared_depth()) + " available");
  if (n >= N) throw HypothesisError("level_language: need n < N");
  LanguageTable t;
  t.alphabet = d.alphabet(n);
  t.level = n;
  t.max_len = L;
  t.depth = N;
  t.words = language_words(d, n, L, N);
  if (N - 1 > n) {
    auto prev = language_words(d, n, L, N - 1);
    t.monotone = std::includes(t.words.begin(), t.words.end(), prev.begin(), prev.end(), ShortLex{});
    t.stabilized = prev == t.words;
  }
  return t;
}

LanguageTable level_language(const DirectiveSequence& d, std::size_t n, std::size_t L) {
  return level_language(d, n, L, d.declared_depth());
}

LanguageTable table_from_words(const Alphabet& alphabet, const std::vector<Word>& words, std::size_t L) {
  LanguageTable t;
  t.alphabet = alphabet;
  t.max_len = L;
  for (const Word& w : words) add_factors(t.words, w, L);
  t.stabilized = true;
  return t;
}

// ------------------------------------------------------------ profiles

std::vector<std::uint64_t> growth_profile(const DirectiveSequence& d, std::size_t N) {
  std::vector<std::uint64_t> out;
  for (std::size_t n = 0; n < N; ++n) {
    auto lens = d.composite_lengths(0, n);
    out.push_back(*std::min_element(lens.begin(), lens.end()));
  }
  return out;
}

std::vector<std::size_t> min_period_profile(const DirectiveSequence& d, std::size_t N) {
  constexpr std::size_t kMaxLen = std::size_t{1} << 26;
  std::vector<std::size_t> out;
  std::vector<Word> imgs;
  for (std::size_t a = 0; a < d.alphabet(0).size(); ++a) imgs.push_back(Word(1, static_cast<Letter>(a)));
  for (std::size_t n = 0;; ++n) {
    std::size_t p = std::numeric_limits<std::size_t>::max();
    for (const Word& w : imgs) p = std::min(p, least_period(w));
    out.push_back(p);
    if (n == N) break;
    const Morphism& m = d.level(n);
    std::vector<Word> next;
    for (const Word& img : m.images()) {
      Word w;
      for (Letter c : img) {
        w += imgs[c];
        if (w.size() > kMaxLen) throw HypothesisError("min_period_profile: images exceed the materialization limit");
      }
      next.push_back(std::move(w));
    }
    imgs = std::move(next);
  }
  return out;
}

std::size_t prefix_alphabet_rank(const DirectiveSequence& d) {
  std::size_t rank = std::numeric_limits<std::size_t>::max();
  const std::size_t top = d.explicit_levels() + d.repeat().period;
  for (std::size_t n = 1; n <= std::min(top, d.declared_depth()); ++n) rank = std::min(rank, d.alphabet(n).size());
  return rank;
}

// ------------------------------------------------------------ contraction

DirectiveSequence contract(const DirectiveSequence& d, const std::vector<std::size_t>& cuts) {
  if (cuts.size() < 2 || cuts.front() != 0) throw HypothesisError("contract: cut points must start at 0 and have at least two entries");
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (cuts[i] <= cuts[i - 1]) throw HypothesisError("contract: cut points must be strictly increasing");
  if (cuts.back() > d.declared_depth()) throw HypothesisError("contract: cut point beyond the declared depth");
  std::vector<Morphism> blocks;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) blocks.push_back(d.composite(cuts[i], cuts[i + 1]));
  RepeatRule rule;
  const std::size_t E = d.explicit_levels();
  const std::size_t start = cuts[cuts.size() - 2], len = cuts.back() - start;
  if (d.repeat().kind != RepeatRule::Kind::none && start + d.repeat().period >= E &&
      len % d.repeat().period == 0 && (start - (E - d.repeat().period)) % d.repeat().period == 0)
    rule = RepeatRule::stationary();
  if (rule.kind == RepeatRule::Kind::stationary && !(blocks.back().source() == blocks.back().target()))
    rule = {};
  return DirectiveSequence(std::move(blocks), rule);
}

// ------------------------------------------------------------ trimming

namespace {

Morphism restrict_morphism(const Morphism& m, const std::vector<Letter>& src, const std::vector<Letter>& tgt) {
  std::vector<Letter> index(m.target().size(), std::numeric_limits<Letter>::max());
  for (std::size_t i = 0; i < tgt.size(); ++i) index[tgt[i]] = static_cast<Letter>(i);
  std::vector<Word> images;
  for (Letter a : src) {
    Word w;
    for (Letter c : m.images()[a]) {
      if (index[c] == std::numeric_limits<Letter>::max())
        throw InternalError("trim: image of a used letter leaves the trimmed alphabet");
      w.push_back(index[c]);
    }
    images.push_back(std::move(w));
  }
  return Morphism(m.source().restricted(src), m.target().restricted(tgt), std::move(images));
}

}  // namespace

DirectiveSequence trim_letter_onto(const DirectiveSequence& d, std::size_t N) {
  const std::size_t E = d.explicit_levels();
  const std::size_t p = d.repeat().period;
  const std::size_t top = E + p;  // alphabets A_0 .. A_top
  if (top >= N) throw HypothesisError("trim_letter_onto: depth too small for the explicit levels");
  std::vector<std::vector<Letter>> used;
  bool trimmed = false;
  for (std::size_t n = 0; n <= top; ++n) {
    auto letters = level_language(d, n, 1, N).letters();
    if (letters.empty()) throw HypothesisError("trim_letter_onto: alphabet of level " + std::to_string(n) + " would be empty");
    if (letters.size() != d.alphabet(n).size()) trimmed = true;
    used.push_back(std::move(letters));
  }
  if (!trimmed) return d;
  std::vector<Morphism> levels;
  for (std::size_t n = 0; n < top; ++n) levels.push_back(restrict_morphism(d.level(n), used[n + 1], used[n]));
  if (p == 0) return DirectiveSequence(std::move(levels));
  bool periodic = true;
  for (std::size_t i = 0; i < p; ++i)
    if (!(levels[E + i] == levels[E - p + i])) periodic = false;
  if (periodic) {
    levels.resize(E);
    return DirectiveSequence(std::move(levels), d.repeat());
  }
  // Tail does not repeat after trimming: keep an explicit finite prefix.
  for (std::size_t n = top; n + 1 < N; ++n) {
    auto next = level_language(d, n + 1, 1, N).letters();
    levels.push_back(restrict_morphism(d.level(n), next, used.back()));
    used.push_back(std::move(next));
  }
  return DirectiveSequence(std::move(levels));
}

DirectiveSequence trim_letter_onto(const DirectiveSequence& d) { return trim_letter_onto(d, d.declared_depth()); }

// ------------------------------------------------------------ properization

namespace {

std::size_t count_occurrences(const Word& text, const Word& w, std::size_t stop_at) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(w); pos != Word::npos && count < stop_at; pos = text.find(w, pos + 1)) ++count;
  return count;
}

}  // namespace

Properized properize(const DirectiveSequence& d, std::size_t N) {
  constexpr std::size_t kMaxImage = std::size_t{1} << 22;
  std::vector<std::size_t> cuts{0};
  std::vector<Morphism> blocks;
  std::vector<Word> splits;
  for (;;) {
    const std::size_t ck = cuts.back();
    if (ck + 1 >= N) break;
    auto w3 = level_language(d, ck, 3, N).of_length(3);
    std::optional<std::size_t> found;
    for (std::size_t c = ck + 1; c + 1 < N; ++c) {
      auto lens = d.composite_lengths(ck, c);
      if (*std::max_element(lens.begin(), lens.end()) > kMaxImage) break;
      Morphism block = d.composite(ck, c);
      bool ok = true;
      for (Letter a : level_language(d, c, 1, N).letters())
        for (const Word& w : w3)
          if (count_occurrences(block.images()[a], w, 2) < 2) ok = false;
      if (ok) {
        found = c;
        break;
      }
    }
    if (!found) break;
    cuts.push_back(*found);
  }
  const std::size_t K = cuts.size() - 1;
  if (K < 1) throw HypothesisError("insufficient depth for properization");

  // Pair alphabets B_k for k = 0..K.
  std::vector<Alphabet> B;
  std::vector<std::map<std::pair<Letter, Letter>, Letter>> pair_index;
  for (std::size_t k = 0; k <= K; ++k) {
    const Alphabet& A = d.alphabet(cuts[k]);
    std::vector<std::string> names;
    std::map<std::pair<Letter, Letter>, Letter> idx;
    for (const Word& ab : level_language(d, cuts[k], 2, N).of_length(2)) {
      idx[{ab[0], ab[1]}] = static_cast<Letter>(names.size());
      names.push_back("[" + A.name(ab[0]) + ";" + A.name(ab[1]) + "]");
    }
    if (names.empty()) throw HypothesisError("properize: level " + std::to_string(cuts[k]) + " has no words of length 2");
    B.emplace_back(std::move(names));
    pair_index.push_back(std::move(idx));
  }

  std::vector<Morphism> taus;
  for (std::size_t k = 0; k < K; ++k) {
    Morphism block = d.composite(cuts[k], cuts[k + 1]);
    auto letters = level_language(d, cuts[k + 1], 1, N).letters();
    // Least w (letter order) occurring in every used image.
    std::optional<Word> wk;
    for (const Word& w : level_language(d, cuts[k], 3, N).of_length(3)) {
      bool everywhere = std::all_of(letters.begin(), letters.end(),
                                    [&](Letter a) { return block.images()[a].find(w) != Word::npos; });
      if (everywhere && (!wk || w < *wk)) wk = w;
    }
    if (!wk) throw HypothesisError("insufficient depth for properization");
    splits.push_back(*wk);
    std::vector<Word> u(block.source().size()), v(block.source().size());
    for (Letter a : letters) {
      const Word& img = block.images()[a];
      std::size_t pos = img.find(*wk);
      u[a] = img.substr(0, pos + 1);
      v[a] = img.substr(pos + 1);
    }
    std::vector<Word> images;
    for (const auto& [ab, idx] : pair_index[k + 1]) {
      Word raw = v[ab.first] + u[ab.second] + Word(1, (*wk)[1]);
      Word chi;
      for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        auto it = pair_index[k].find({raw[i], raw[i + 1]});
        if (it == pair_index[k].end()) throw InternalError("properize: pair outside the level language");
        chi.push_back(it->second);
      }
      (void)idx;
      images.push_back(std::move(chi));
    }
    taus.emplace_back(B[k + 1], B[k], std::move(images));
  }

  // eta : B_0 -> A_0 keeps the first coordinate.
  std::vector<Word> eta_images;
  for (const auto& [ab, idx] : pair_index[0]) eta_images.push_back(Word(1, ab.first));
  Morphism eta(B[0], d.alphabet(0), std::move(eta_images));
  std::vector<Morphism> levels = taus;
  levels[0] = compose(eta, taus[0]);
  RepeatRule rule;
  while (levels.size() >= 3 && levels[levels.size() - 1] == levels[levels.size() - 2]) {
    levels.pop_back();
    rule = RepeatRule::stationary();
  }
  Properized out{DirectiveSequence(std::move(levels), rule), cuts, splits};
  for (std::size_t n = 0; n < out.sequence.explicit_levels(); ++n) {
    const Morphism& m = out.sequence.explicit_morphisms()[n];
    if (properness(m) < 1 || metrics(m).min_len < 2) throw InternalError("properize: level " + std::to_string(n) + " is not proper or too short");
  }
  return out;
}

Properized properize(const DirectiveSequence& d) { return properize(d, d.declared_depth()); }

std::optional<DirectiveSequence> proper_conjugate(const DirectiveSequence& d) {
  if (d.repeat().kind != RepeatRule::Kind::stationary) return std::nullopt;
  const auto& lv = d.explicit_morphisms();
  if (!std::all_of(lv.begin(), lv.end(), [&](const Morphism& m) { return m == lv.front(); })) return std::nullopt;
  const Morphism& s = lv.front();
  std::vector<Word> conj;
  if (common_prefix(s) >= 1) {
    const Letter c = s.images().front().front();
    for (const Word& w : s.images()) conj.push_back(w.substr(1) + Word(1, c));
  } else if (common_suffix(s) >= 1) {
    const Letter c = s.images().front().back();
    for (const Word& w : s.images()) conj.push_back(Word(1, c) + w.substr(0, w.size() - 1));
  } else {
    return std::nullopt;
  }
  Morphism g = compose(s, Morphism(s.source(), s.target(), std::move(conj)));
  if (properness(g) < 1) return std::nullopt;
  DirectiveSequence out({g}, RepeatRule::stationary());
  out.name = d.name;
  return out;
}

bool all_levels_proper(const DirectiveSequence& d) {
  const std::size_t top = std::min(d.declared_depth(), d.explicit_levels() + d.repeat().period);
  for (std::size_t n = 0; n < top; ++n)
    if (properness(d.level(n)) < 1) return false;
  return true;
}

ProperRepresentation proper_representation(const DirectiveSequence& d) {
  DirectiveSequence t = trim_letter_onto(d);
  t.name = d.name;
  if (all_levels_proper(t)) return {t, "already-proper"};
  if (auto c = proper_conjugate(t)) return {*c, "conjugate"};
  Properized p = properize(t);
  p.sequence.name = d.name;
  return {p.sequence, "properize"};
}

}  // namespace sadic
