#include "sadic/coding.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "sadic/error.hpp"
#include "sadic/hash.hpp"
#include "sadic/periods.hpp"

namespace sadic {

// ------------------------------------------------------------ markers

std::size_t Marker::radius() const {
  std::size_t r = 0;
  for (const auto& [u, v] : variants) r = std::max({r, u.size(), v.size()});
  return r;
}

std::size_t Marker::properness() const {
  if (variants.empty()) return 0;
  std::size_t left = variants.front().first.size(), right = variants.front().second.size();
  for (const auto& [u, v] : variants) {
    left = std::min(left, common_suffix_length(u, variants.front().first));
    right = std::min(right, common_prefix_length(v, variants.front().second));
  }
  return std::min(left, right);
}

Marker parse_marker(const Alphabet& alphabet, std::string_view text) {
  Marker m;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view part = text.substr(start, comma - start);
    const std::size_t dot = part.find('.');
    if (dot == std::string_view::npos) throw ParseError("marker variant '" + std::string(part) + "' has no '.'");
    Word u = parse_word(alphabet, part.substr(0, dot));
    Word v = parse_word(alphabet, part.substr(dot + 1));
    if (u.empty() && v.empty()) throw ParseError("marker variant with both sides empty");
    m.variants.emplace_back(std::move(u), std::move(v));
    start = comma + 1;
  }
  return m;
}

std::string format_marker(const Alphabet& alphabet, const Marker& marker) {
  std::string out;
  for (std::size_t i = 0; i < marker.variants.size(); ++i) {
    if (i > 0) out += ",";
    out += format_word(alphabet, marker.variants[i].first) + "." + format_word(alphabet, marker.variants[i].second);
  }
  return out;
}

Marker image_marker(const Morphism& s, const std::vector<Word>& words4) {
  Marker m;
  for (const Word& w : words4) {
    if (w.size() != 4) throw HypothesisError("image_marker expects words of length 4");
    m.variants.emplace_back(sadic::apply(s, w.substr(0, 2)), sadic::apply(s, w.substr(2, 2)));
  }
  return m;
}

std::vector<std::size_t> marker_occurrences(const Word& g, const Marker& marker) {
  if (marker.variants.empty()) throw HypothesisError("marker has no variants");
  // Prefilter on the common prefix of the right sides (or the common
  // suffix of the left sides), then match variants by hash and confirm.
  std::size_t lp = marker.variants.front().second.size(), ls = marker.variants.front().first.size();
  for (const auto& [u, v] : marker.variants) {
    lp = std::min(lp, common_prefix_length(v, marker.variants.front().second));
    ls = std::min(ls, common_suffix_length(u, marker.variants.front().first));
  }
  const PrefixHash ph(g);
  std::vector<std::pair<WindowHash, WindowHash>> hashes;
  for (const auto& [u, v] : marker.variants) hashes.emplace_back(PrefixHash::of(u), PrefixHash::of(v));
  const Word& v0 = marker.variants.front().second;
  const Word& u0 = marker.variants.front().first;
  const WindowHash hp = PrefixHash::of(v0.substr(0, lp));
  const WindowHash hs = PrefixHash::of(u0.substr(u0.size() - ls));
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= g.size(); ++k) {
    if (lp > 0 && (k + lp > g.size() || ph.factor(k, lp) != hp)) continue;
    if (lp == 0 && ls > 0 && (k < ls || ph.factor(k - ls, ls) != hs)) continue;
    for (std::size_t i = 0; i < marker.variants.size(); ++i) {
      const auto& [u, v] = marker.variants[i];
      if (k < u.size() || k + v.size() > g.size()) continue;
      if (ph.factor(k - u.size(), u.size()) != hashes[i].first || ph.factor(k, v.size()) != hashes[i].second) continue;
      if (g.compare(k - u.size(), u.size(), u) != 0 || g.compare(k, v.size(), v) != 0) continue;
      out.push_back(k);
      break;
    }
  }
  return out;
}

// ------------------------------------------------------------ generator sources

namespace {
constexpr std::uint64_t kMaxGeneratorLetters = std::uint64_t{1} << 27;
}

ExpansionSource::ExpansionSource(DirectiveSequence d) : d_(std::move(d)) {}

void ExpansionSource::for_each(std::size_t horizon, const std::function<void(const Word&)>& f) const {
  std::uint64_t total = 0;
  for (std::uint64_t len : d_.composite_lengths(0, horizon)) total += len;
  if (total > kMaxGeneratorLetters) throw HypothesisError("generator words exceed the materialization limit");
  const Morphism m = d_.composite(0, horizon);
  for (const Word& img : m.images()) f(img);
}

std::string ExpansionSource::describe() const { return "expansions sigma_[0,h)(a)"; }

LanguageImageSource::LanguageImageSource(DirectiveSequence d, std::size_t level, std::size_t depth)
    : d_(std::move(d)), level_(level), depth_(depth), s_(d_.composite(0, level)) {}

void LanguageImageSource::for_each(std::size_t horizon, const std::function<void(const Word&)>& f) const {
  const LanguageTable t = level_language(d_, level_, horizon, depth_);
  const auto ys = t.of_length(horizon);
  std::uint64_t total = 0;
  const std::size_t max_len = metrics(s_).max_len;
  total = static_cast<std::uint64_t>(ys.size()) * horizon * max_len;
  if (total > 4 * kMaxGeneratorLetters) throw HypothesisError("generator words exceed the materialization limit");
  for (const Word& y : ys) f(sadic::apply(s_, y));
}

std::string LanguageImageSource::describe() const {
  return "images sigma_[0," + std::to_string(level_) + ")(y) of level-" + std::to_string(level_) + " words";
}

// ------------------------------------------------------------ return words

namespace {

struct Scanned {
  std::vector<Word> words;
  std::unordered_map<Word, Letter> index;
  std::vector<Word> coded;
  std::size_t d = 0;
  std::size_t rho = std::numeric_limits<std::size_t>::max();
  std::size_t occurrences = 0;
  // (|g|, per(g)) of every generator word
  std::vector<std::pair<std::size_t, std::size_t>> periods;
};

Scanned scan(const GeneratorSource& source, const Marker& marker, std::size_t horizon) {
  Scanned s;
  source.for_each(horizon, [&](const Word& g) {
    const auto occ = marker_occurrences(g, marker);
    s.occurrences += occ.size();
    s.periods.emplace_back(g.size(), least_period(g));
    if (occ.size() < 2) return;
    Word coded;
    for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
      const std::size_t gap = occ[i + 1] - occ[i];
      s.d = std::max(s.d, gap);
      s.rho = std::min(s.rho, gap);
      Word w = g.substr(occ[i], gap);
      auto [it, fresh] = s.index.emplace(w, static_cast<Letter>(s.words.size()));
      if (fresh) s.words.push_back(std::move(w));
      coded.push_back(it->second);
    }
    s.coded.push_back(std::move(coded));
  });
  return s;
}

bool same_words(const Scanned& a, const Scanned& b) {
  if (a.words.size() != b.words.size()) return false;
  return std::all_of(b.words.begin(), b.words.end(), [&](const Word& w) { return a.index.count(w) > 0; });
}

Alphabet numbered_alphabet(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return Alphabet(std::move(names));
}

// Coded factors of length <= L of `prev`, translated into the letters of `cur`.
std::optional<std::set<Word, ShortLex>> translated_factors(const Scanned& prev, const Scanned& cur, std::size_t L) {
  std::vector<Letter> map(prev.words.size());
  for (std::size_t i = 0; i < prev.words.size(); ++i) {
    auto it = cur.index.find(prev.words[i]);
    if (it == cur.index.end()) return std::nullopt;
    map[i] = it->second;
  }
  std::vector<Word> coded;
  for (const Word& w : prev.coded) coded.push_back(translate(w, map));
  return table_from_words(numbered_alphabet(cur.words.size()), coded, L).words;
}

}  // namespace

ReturnWords return_words(const GeneratorSource& source, const Marker& marker, std::size_t horizon) {
  const Scanned cur = scan(source, marker, horizon);
  if (cur.words.empty()) throw HypothesisError("marker not syndetic at horizon " + std::to_string(horizon));
  ReturnWords out;
  out.words = cur.words;
  out.d = cur.d;
  out.rho = cur.rho;
  out.horizon = horizon;
  out.occurrences = cur.occurrences;
  if (horizon > source.min_horizon()) out.stabilized = same_words(cur, scan(source, marker, horizon - 1));
  return out;
}

bool all_pass(const std::vector<Certificate>& certs) {
  return std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.pass; });
}

// ------------------------------------------------------------ return coding

ReturnCoding build_return_coding(const GeneratorSource& source, const Marker& marker, const CodingOptions& options) {
  const std::size_t r = marker.radius();
  auto coded_length = [&](const Scanned& s) {
    const std::size_t rho = s.rho;
    const std::size_t g = std::max<std::size_t>(rho, 1);
    return std::max(2 * ((r + s.d + g - 1) / g) + 1, options.min_coded_length);
  };
  auto stable = [&](const Scanned& cur, const Scanned& prev) {
    if (cur.words.empty() || !same_words(cur, prev)) return false;
    const std::size_t L = coded_length(cur);
    const auto now = table_from_words(numbered_alphabet(cur.words.size()), cur.coded, L);
    if (now.of_length(L).empty()) return false;
    auto before = translated_factors(prev, cur, L);
    return before && *before == now.words;
  };

  std::size_t h = options.horizon;
  Scanned cur;
  bool stabilized = false;
  if (h != 0) {
    cur = scan(source, marker, h);
    if (h > source.min_horizon()) stabilized = stable(cur, scan(source, marker, h - 1));
  } else {
    std::optional<Scanned> prev;
    for (h = source.min_horizon(); h <= source.max_horizon(); ++h) {
      cur = scan(source, marker, h);
      if (prev && stable(cur, *prev)) {
        stabilized = true;
        break;
      }
      prev = cur;
    }
    if (h > source.max_horizon()) h = source.max_horizon();
  }
  if (cur.words.empty()) throw HypothesisError("marker not syndetic at horizon " + std::to_string(h));

  // Periodicity obstruction: return words cannot separate a periodic orbit.
  for (const auto& [len, per] : cur.periods)
    if (len >= 3 * cur.d && per <= cur.d)
      throw HypothesisError("separation check failed: a generator word of length " + std::to_string(len) +
                            " has period " + std::to_string(per) + " <= d = " + std::to_string(cur.d));

  ReturnCoding rc;
  rc.marker = marker;
  rc.horizon = h;
  rc.d = cur.d;
  rc.rho = cur.rho;
  rc.ell = marker.properness();
  rc.radius = r;
  rc.recognizability_radius = r + cur.d;
  rc.stabilized = stabilized;
  const Alphabet C = numbered_alphabet(cur.words.size());
  rc.tau = Morphism(C, source.alphabet(), cur.words);
  const std::size_t L = coded_length(cur);
  rc.coded = table_from_words(C, cur.coded, L);
  rc.coded.depth = h;
  rc.coded.stabilized = stabilized;

  auto& certs = rc.certificates;
  certs.push_back({"stabilized", stabilized,
                   "return words and coded factors of length " + std::to_string(L) + " unchanged from horizon " +
                       std::to_string(h - 1) + " to " + std::to_string(h)});

  // (b) recognizability at r + d
  const RecognizabilityReport rep = recognizability_check(rc.tau, rc.coded, rc.recognizability_radius);
  const bool deep = !rc.coded.of_length(L).empty();
  certs.push_back({"recognizability", deep && rep.verdict == Verdict::recognizable_at_r,
                   "radius " + std::to_string(rc.recognizability_radius) + ", " + to_string(rep.verdict) + ", " +
                       std::to_string(rep.table_size) + " windows" + (deep ? "" : ", coded words too short")});

  // (c) lengths and properness
  const Metrics mt = metrics(rc.tau);
  const std::size_t prop = properness(rc.tau);
  const std::size_t need = std::min(rc.rho, rc.ell);
  certs.push_back({"lengths-properness", mt.max_len <= rc.d && mt.min_len >= rc.rho && prop >= need,
                   "|tau| = " + std::to_string(mt.max_len) + " <= d = " + std::to_string(rc.d) + ", <tau> = " +
                       std::to_string(mt.min_len) + " >= rho = " + std::to_string(rc.rho) + ", properness " +
                       std::to_string(prop) + " >= " + std::to_string(need)});

  // (a) and (d) on a second pass over the generators
  bool reproduces = true;
  bool cuts_agree = rep.verdict == Verdict::recognizable_at_r;
  std::size_t checked = 0;
  std::string cut_detail;
  std::optional<WindowIndex> index;
  if (cuts_agree) index.emplace(rc.tau, rc.coded, rc.recognizability_radius);
  const std::size_t R = rc.recognizability_radius;
  source.for_each(h, [&](const Word& g) {
    const auto occ = marker_occurrences(g, marker);
    if (occ.size() < 2) return;
    Word coded;
    for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
      auto it = cur.index.find(g.substr(occ[i], occ[i + 1] - occ[i]));
      if (it == cur.index.end()) {
        reproduces = false;
        return;
      }
      coded.push_back(it->second);
    }
    if (sadic::apply(rc.tau, coded) != g.substr(occ.front(), occ.back() - occ.front())) reproduces = false;
    if (!index || !cuts_agree) return;
    const PrefixHash ph(g);
    auto expect = [&](std::size_t pos, Symbol want) {
      if (pos < R || pos + R >= g.size()) return;
      ++checked;
      const auto got = index->lookup(ph, pos);
      if (got.size() != 1 || got.front() != want) {
        cuts_agree = false;
        cut_detail = "position " + std::to_string(pos) + " of a generator word";
      }
    };
    for (std::size_t i = 0; i + 1 < occ.size() && cuts_agree; ++i) {
      const std::size_t len = occ[i + 1] - occ[i];
      expect(occ[i], Symbol{0, coded[i]});
      expect(occ[i] + len / 2, Symbol{len / 2, coded[i]});
      expect(occ[i + 1] - 1, Symbol{len - 1, coded[i]});
    }
  });
  certs.push_back({"language-reproduction", reproduces, "tau(coded generator) equals the generator between its first and last return times"});
  if (cuts_agree && checked == 0) {
    cuts_agree = false;
    cut_detail = "no window of radius " + std::to_string(R) + " fits in the generator words";
  }
  certs.push_back({"cuts-return-times", cuts_agree,
                   cuts_agree ? std::to_string(checked) + " return times, block midpoints and block ends parsed"
                              : (cut_detail.empty() ? "coding is not recognizable" : cut_detail)});

  if (options.throw_on_failure)
    for (const auto& c : certs)
      if (!c.pass) throw HypothesisError("return coding certificate failed: " + c.name + " (" + c.detail + ")");
  return rc;
}

// ------------------------------------------------------------ alignment

Morphism align_through(const WindowIndex& index, const Morphism& sigma1) {
  const Morphism& sigma0 = index.morphism();
  const std::size_t r = index.radius();
  if (!(sigma1.target() == sigma0.target())) throw HypothesisError("align_through: target alphabets differ");
  if (properness(sigma1) < r)
    throw HypothesisError("align_through: sigma1 is not " + std::to_string(r) + "-proper");
  const Word u = sigma1.images().front().substr(0, r);
  const Word& any = sigma1.images().front();
  const Word v = any.substr(any.size() - r);
  std::vector<Word> images;
  for (std::size_t a = 0; a < sigma1.source().size(); ++a) {
    const Word& img = sigma1.images()[a];
    const Word text = v + img + u;
    const PrefixHash ph(text);
    Word w;
    std::size_t pos = r;
    while (pos < r + img.size()) {
      const auto syms = index.lookup(ph, pos);
      if (syms.size() != 1 || syms.front().offset != 0)
        throw HypothesisError("cut containment violated at letter '" + sigma1.source().name(static_cast<Letter>(a)) +
                              "' (position " + std::to_string(pos - r) + ")");
      w.push_back(syms.front().letter);
      pos += sigma0.images()[syms.front().letter].size();
    }
    if (pos != r + img.size())
      throw HypothesisError("cut containment violated at letter '" + sigma1.source().name(static_cast<Letter>(a)) +
                            "' (parse overruns the image)");
    images.push_back(std::move(w));
  }
  Morphism nu(sigma1.source(), sigma0.source(), std::move(images));
  if (!(compose(sigma0, nu) == sigma1)) throw InternalError("align_through: sigma0 o nu differs from sigma1");
  return nu;
}

Morphism align_through(const Morphism& sigma0, const LanguageTable& lx0, std::size_t r, const Morphism& sigma1) {
  return align_through(WindowIndex(sigma0, lx0, r), sigma1);
}

// ------------------------------------------------------------ tower

namespace {

std::string level_name(const char* what, std::size_t n) { return std::string(what) + "_" + std::to_string(n); }

}  // namespace

Tower recognizable_tower(const DirectiveSequence& d, std::size_t m, const TowerOptions& options) {
  if (m < 1) throw HypothesisError("recognizable_tower needs at least one level");
  Tower t;
  t.levels = m;
  if (options.prepare) {
    ProperRepresentation pr = proper_representation(d);
    t.base = std::move(pr.sequence);
    t.representation = pr.method;
  } else {
    t.base = d;
    t.representation = "as-given";
  }
  const DirectiveSequence& D = t.base;
  const std::size_t N = D.declared_depth();
  const std::size_t last = m + 2;
  t.cuts = {0, 1};
  t.nu.resize(last + 1);
  t.tau.resize(last + 1);
  t.phi.resize(last + 1);
  t.codings.resize(last + 1);
  t.constants.assign(last + 1, 0);
  t.tau_constants.resize(last + 1);

  auto too_long = [&](std::size_t c) {
    auto lens = D.composite_lengths(0, c);
    return *std::max_element(lens.begin(), lens.end()) > options.max_image_length;
  };

  for (std::size_t n = 2; n <= last; ++n) {
    std::string why = "no admissible cut below the depth";
    bool found = false;
    for (std::size_t c = t.cuts.back() + 1; c < N && !too_long(c); ++c) {
      const Morphism S = D.composite(0, c);
      if (n >= 3 && properness(S) < t.constants[n - 1]) {
        why = "sigma'_[0," + std::to_string(n) + ") is not " + std::to_string(t.constants[n - 1]) + "-proper";
        continue;
      }
      const Marker marker = image_marker(S, level_language(D, c, 4, N).of_length(4));
      const LanguageImageSource source(D, c, N);
      CodingOptions co;
      co.throw_on_failure = false;
      co.min_coded_length = 12;
      ReturnCoding rc;
      try {
        rc = build_return_coding(source, marker, co);
      } catch (const HypothesisError& e) {
        why = e.what();
        continue;
      }
      if (!rc.ok()) {
        for (const auto& cert : rc.certificates)
          if (!cert.pass) why = "certificate " + cert.name + " failed (" + cert.detail + ")";
        continue;
      }
      if (n >= 3 && properness(rc.tau) < t.constants[n - 1]) {
        why = "nu_" + std::to_string(n) + " is not " + std::to_string(t.constants[n - 1]) + "-proper";
        continue;
      }
      auto R = minimal_constant_bisect(rc.tau, rc.coded, 0, rc.recognizability_radius);
      if (!R) throw InternalError("tower: recognizability at r + d vanished");
      t.cuts.push_back(c);
      t.nu[n] = rc.tau;
      t.constants[n] = *R;
      t.codings[n] = std::move(rc);
      found = true;
      break;
    }
    if (!found) {
      auto p = min_period_profile(D, std::min<std::size_t>(t.cuts.back() + 1, N - 1));
      throw HypothesisError("contraction budget exhausted at tower level " + std::to_string(n) + ": " + why +
                            "; p = " + std::to_string(p.back()) + " at level " + std::to_string(p.size() - 1) +
                            ", properness " + std::to_string(properness(D.composite(0, t.cuts.back()))));
    }
  }
  {
    bool found = false;
    for (std::size_t c = t.cuts.back() + 1; c <= N && !too_long(c); ++c)
      if (properness(D.composite(0, c)) >= t.constants[last]) {
        t.cuts.push_back(c);
        found = true;
        break;
      }
    if (!found)
      throw HypothesisError("contraction budget exhausted: no cut makes sigma' " + std::to_string(t.constants[last]) +
                            "-proper");
  }

  for (std::size_t n = 2; n <= last; ++n) {
    try {
      const WindowIndex index(t.nu[n], t.codings[n].coded, t.constants[n]);
      if (n + 1 <= last) t.tau[n] = align_through(index, t.nu[n + 1]);
      t.phi[n] = align_through(index, t.prefix(n + 1));
    } catch (const HypothesisError& e) {
      throw HypothesisError("tower level " + std::to_string(n) + ": " + e.what());
    }
  }

  auto& certs = t.certificates;
  for (std::size_t n = 2; n <= last; ++n)
    certs.push_back({level_name("coding", n), t.codings[n].ok(),
                     std::to_string(t.nu[n].source().size()) + " return words, d = " + std::to_string(t.codings[n].d) +
                         ", R* = " + std::to_string(t.constants[n])});
  for (std::size_t n = 2; n <= last; ++n) {
    if (n + 1 <= last) {
      certs.push_back({"nu_" + std::to_string(n) + " tau_" + std::to_string(n) + " = nu_" + std::to_string(n + 1),
                       compose(t.nu[n], t.tau[n]) == t.nu[n + 1], "letterwise"});
      certs.push_back({"phi_" + std::to_string(n) + " sigma'_" + std::to_string(n + 1) + " = tau_" + std::to_string(n) +
                           " phi_" + std::to_string(n + 1),
                       compose(t.phi[n], t.level(n + 1)) == compose(t.tau[n], t.phi[n + 1]), "letterwise"});
      certs.push_back({level_name("tau", n) + " proper", properness(t.tau[n]) >= 1,
                       "properness " + std::to_string(properness(t.tau[n]))});
      certs.push_back({level_name("tau", n) + " letter-onto", is_letter_onto(t.tau[n]), ""});
      const ConstantSearch cs = minimal_constant(t.tau[n], t.codings[n + 1].coded, options.constant_cap);
      t.tau_constants[n] = cs.constant;
      certs.push_back({"(Y_" + std::to_string(n + 1) + ", tau_" + std::to_string(n) + ") recognizable",
                       cs.constant.has_value(),
                       cs.constant ? "constant " + std::to_string(*cs.constant)
                                   : "unknown at cap " + std::to_string(options.constant_cap)});
    }
    certs.push_back({"sigma'_[0," + std::to_string(n + 1) + ") = nu_" + std::to_string(n) + " phi_" + std::to_string(n),
                     compose(t.nu[n], t.phi[n]) == t.prefix(n + 1), "letterwise"});
    certs.push_back({level_name("phi", n) + " proper", properness(t.phi[n]) >= 1,
                     "properness " + std::to_string(properness(t.phi[n]))});
    certs.push_back({level_name("phi", n) + " letter-onto", is_letter_onto(t.phi[n]), ""});
  }

  for (std::size_t n = 2; n <= last; ++n) {
    const Morphism before = t.prefix(n - 1), now = t.prefix(n);
    const std::size_t bound = 3 * metrics(before).max_len;
    std::size_t p = std::numeric_limits<std::size_t>::max();
    for (const Word& w : now.images()) p = std::min(p, least_period(w));
    t.literal_conditions.push_back({"(I_" + std::to_string(n) + ")", p >= bound,
                                    "p = " + std::to_string(p) + ", 3|sigma'_[0," + std::to_string(n - 1) +
                                        ")| = " + std::to_string(bound)});
    t.literal_conditions.push_back({"(II_" + std::to_string(n) + ")", properness(now) >= bound,
                                    "properness " + std::to_string(properness(now)) + ", needed " +
                                        std::to_string(bound)});
  }
  return t;
}

}  // namespace sadic
