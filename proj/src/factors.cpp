#include "sadic/factors.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <sstream>

#include "sadic/error.hpp"

namespace sadic {

// ------------------------------------------------------------ local codes

Letter LocalCode::at(const Word& window) const {
  auto it = table.find(window);
  if (it == table.end())
    throw HypothesisError("local code has no entry for window '" + format_word(domain, window) + "'");
  return it->second;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> tokens(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

LocalCode parse_local_code(std::string_view text, const Alphabet& domain) {
  LocalCode code;
  code.domain = domain;
  bool have_radius = false, have_target = false;
  std::vector<std::string> target_names;
  std::vector<std::pair<Word, std::string>> rules;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "local code line " + std::to_string(lineno) + ": ";
    if (line.rfind("radius:", 0) == 0) {
      const std::string v = trim(std::string_view(line).substr(7));
      if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(where + "radius must be a nonnegative integer");
      code.radius = std::stoul(v);
      have_radius = true;
      continue;
    }
    if (line.rfind("target:", 0) == 0) {
      target_names = tokens(std::string_view(line).substr(7));
      have_target = true;
      continue;
    }
    const std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError(where + "expected 'window -> letter'");
    if (!have_radius) throw ParseError(where + "rule before the 'radius:' header");
    Word w = parse_word(domain, trim(std::string_view(line).substr(0, arrow)));
    if (w.size() != 2 * code.radius + 1)
      throw ParseError(where + "window must have " + std::to_string(2 * code.radius + 1) + " letters");
    const auto rhs = tokens(std::string_view(line).substr(arrow + 2));
    if (rhs.size() != 1) throw ParseError(where + "the image must be a single letter");
    rules.emplace_back(std::move(w), rhs.front());
  }
  if (!have_radius) throw ParseError("local code: missing 'radius:' header");
  if (!have_target)
    for (const auto& [w, c] : rules)
      if (std::find(target_names.begin(), target_names.end(), c) == target_names.end()) target_names.push_back(c);
  code.target = Alphabet(target_names);
  for (auto& [w, c] : rules) {
    const auto letter = code.target.find(c);
    if (!letter) throw ParseError("local code: letter '" + c + "' is not in the target alphabet");
    if (!code.table.emplace(w, *letter).second)
      throw ParseError("local code: duplicate window '" + format_word(domain, w) + "'");
  }
  return code;
}

std::string serialize_local_code(const LocalCode& code) {
  std::string out = "radius: " + std::to_string(code.radius) + "\ntarget:";
  for (const auto& n : code.target.names()) out += " " + n;
  out += "\n";
  for (const auto& [w, c] : code.table) out += format_word(code.domain, w) + " -> " + code.target.name(c) + "\n";
  return out;
}

Word apply_code(const LocalCode& code, const Word& w) {
  const std::size_t span = 2 * code.radius + 1;
  Word out;
  for (std::size_t i = 0; i + span <= w.size(); ++i) out.push_back(code.at(w.substr(i, span)));
  return out;
}

// ------------------------------------------------------------ sliding block codes

BlockMorphism sliding_block_to_morphism(const Morphism& sigma, const LocalCode& code, const LanguageTable& lx1) {
  const std::size_t r = code.radius;
  if (!(sigma.target() == code.domain))
    throw HypothesisError("sliding_block_to_morphism: the code is not defined on the target of sigma");
  if (properness(sigma) < r)
    throw HypothesisError("sliding_block_to_morphism: sigma is not " + std::to_string(r) + "-proper");
  const Word& first = sigma.images().front();
  const Word u = first.substr(0, r);
  const Word v = first.substr(first.size() - r);
  std::vector<Word> images;
  for (const Word& img : sigma.images()) images.push_back(apply_code(code, v + img + u));
  BlockMorphism out{Morphism(sigma.source(), code.target, std::move(images)), false, 0};
  out.proper = properness(out.tau) >= 1;
  for (std::size_t a = 0; a < sigma.source().size(); ++a)
    if (out.tau.images()[a].size() != sigma.images()[a].size())
      throw InternalError("sliding_block_to_morphism: lengths not preserved");

  if (!(lx1.alphabet == sigma.source())) throw HypothesisError("sliding_block_to_morphism: table alphabet differs");
  for (const Word& w : lx1.words) {
    const Word image = sadic::apply(sigma, w);
    if (image.size() < 2 * r + 1) continue;
    const Word coded = apply_code(code, image);
    const Word t = sadic::apply(out.tau, w);
    if (t.substr(r, t.size() - 2 * r) != coded)
      throw InternalError("sliding_block_to_morphism: commuting square fails on '" + format_word(lx1.alphabet, w) + "'");
    ++out.words_checked;
  }
  return out;
}

// ------------------------------------------------------------ transport

namespace {

std::size_t max_alphabet(const DirectiveSequence& d, std::size_t top) {
  std::size_t k = 0;
  for (std::size_t n = 0; n <= top; ++n) k = std::max(k, d.alphabet(n).size());
  return k;
}

}  // namespace

Transport transported_structure(const DirectiveSequence& d, const LocalCode& code, std::size_t m) {
  Transport t;
  ProperRepresentation pr = proper_representation(d);
  t.representation = pr.method;
  const DirectiveSequence& P = pr.sequence;
  if (!(P.alphabet(0) == code.domain)) throw HypothesisError("transport: the code is not defined on the level-0 alphabet");

  // Contract so that sigma_0 is (r+1)-proper.
  const std::size_t r = code.radius;
  const std::size_t N = P.declared_depth();
  std::size_t c = 1;
  while (c < N && properness(P.composite(0, c)) < r + 1) ++c;
  if (c >= N) throw HypothesisError("transport: no prefix of the sequence is " + std::to_string(r + 1) + "-proper");
  std::vector<std::size_t> cuts{0, c};
  const std::size_t top = P.repeat().kind == RepeatRule::Kind::none
                              ? N
                              : std::max(P.explicit_levels() + P.repeat().period, c + 1);
  for (std::size_t k = c + 1; k <= std::min(top, N); ++k) cuts.push_back(k);
  t.source = contract(P, cuts);
  const DirectiveSequence& S = t.source;

  const Morphism& s0 = S.level(0);
  const LanguageTable lx1 = level_language(S, 1, required_language_length(s0, r) + 2);
  t.block = sliding_block_to_morphism(s0, code, lx1);
  std::vector<Morphism> levels = S.explicit_morphisms();
  levels.front() = t.block.tau;
  t.factor = DirectiveSequence(std::move(levels), S.repeat());
  t.factor.name = S.name.empty() ? "factor" : S.name + "-factor";

  TowerOptions topt;
  topt.prepare = false;
  try {
    t.tower = recognizable_tower(t.factor, m, topt);
  } catch (const HypothesisError& e) {
    throw HypothesisError(std::string("transport, factor tower: ") + e.what());
  }
  const Tower& T = t.tower;
  const std::size_t last = m + 2;

  // sigma'' = (sigma'_[0,3), sigma'_3, ...), tau'' = (nu_2, tau_3, ...),
  // phi'' = (sigma'_[0,3), phi_2, phi_3, ...).
  std::vector<Morphism> sig, tau, phi;
  sig.push_back(T.prefix(3));
  tau.push_back(T.nu[2]);
  phi.push_back(T.prefix(3));
  for (std::size_t k = 1; k <= m; ++k) {
    sig.push_back(T.level(k + 2));
    tau.push_back(T.tau[k + 1]);
  }
  for (std::size_t k = 1; k <= m + 1; ++k) phi.push_back(T.phi[k + 1]);
  t.alphabet_bound = max_alphabet(S, T.cuts[last + 1]);
  std::size_t widest = 0;
  for (const auto& x : tau) widest = std::max(widest, x.source().size());
  if (widest <= t.alphabet_bound) {
    t.nu = tau;
    t.psi = phi;
  } else {
    FactorizeOptions fo;
    fo.require_properness_bound = false;
    try {
      PushResult pr = push_rank_through(sig, tau, phi, fo);
      t.nu = std::move(pr.nu);
      t.psi = std::move(pr.psi);
      t.pushed = true;
    } catch (const HypothesisError& e) {
      throw HypothesisError(std::string("transport, push_rank_through: ") + e.what());
    }
  }

  auto& certs = t.certificates;
  certs.push_back({"code morphism proper", t.block.proper,
                   "properness " + std::to_string(properness(t.block.tau)) + ", commuting square on " +
                       std::to_string(t.block.words_checked) + " words"});
  certs.push_back({"factor tower", T.ok(), std::to_string(T.certificates.size()) + " certificates"});

  std::size_t biggest = 0;
  for (const auto& nu : t.nu) biggest = std::max(biggest, nu.source().size());
  certs.push_back({"nu alphabets bounded", biggest <= t.alphabet_bound,
                   "max #alphabet " + std::to_string(biggest) + " <= " + std::to_string(t.alphabet_bound)});

  const Morphism s03 = S.composite(0, T.cuts[3]);
  const Morphism& psi0 = t.psi.front();
  bool lengths = s03.source() == psi0.source();
  for (std::size_t a = 0; lengths && a < s03.source().size(); ++a)
    lengths = s03.images()[a].size() == psi0.images()[a].size();
  certs.push_back({"first-coordinate lengths", lengths, "|sigma_[0," + std::to_string(T.cuts[3]) + ")(a)| = |psi_0(a)|"});

  // Recognizability of the resulting levels against images of the input language.
  for (std::size_t n = 0; n < t.nu.size(); ++n) {
    const Morphism& nu = t.nu[n];
    const Morphism& psi = t.psi[n + 1];
    const std::size_t level = T.cuts[n + 2];
    if (!(psi.source() == T.base.alphabet(level))) throw InternalError("transport: psi alphabet mismatch");
    const std::size_t hi = std::max(topt.constant_cap, 4 * metrics(nu).max_len);
    const std::size_t L = required_language_length(nu, hi);
    const std::size_t k = (L + metrics(psi).min_len - 1) / metrics(psi).min_len + 2;
    auto table = [&](std::size_t len) {
      std::vector<Word> images;
      for (const Word& y : level_language(T.base, level, len).of_length(len)) images.push_back(sadic::apply(psi, y));
      return table_from_words(nu.source(), images, L);
    };
    LanguageTable lz = table(k);
    lz.stabilized = lz.words == table(k + 1).words;
    const auto R = minimal_constant_bisect(nu, lz, 0, hi);
    certs.push_back({"nu_" + std::to_string(n) + " recognizable", R.has_value() && lz.stabilized,
                     R ? "constant " + std::to_string(*R) : "not recognizable at radius " + std::to_string(hi)});
  }
  return t;
}

// ------------------------------------------------------------ covering symbols

FiberProfile covering_symbol_profile(const Morphism& s, const Word& y, const LanguageTable& lxn) {
  if (!(lxn.alphabet == s.source())) throw HypothesisError("covering_symbol_profile: table alphabet differs");
  if (y.empty()) throw HypothesisError("covering_symbol_profile: empty word");
  constexpr std::size_t kMaxFactorizations = std::size_t{1} << 20;
  const std::size_t L = y.size();
  const auto& img = s.images();
  FiberProfile out;
  out.y = y;
  std::vector<std::set<Symbol>> seen(L);
  // blocks: (start of the image relative to y, letter)
  std::vector<std::pair<long long, Letter>> blocks;
  Word x;

  auto consistent = [&]() {
    const std::size_t k = std::min(x.size(), lxn.max_len);
    return lxn.contains(x.substr(x.size() - k));
  };
  auto matches = [&](std::size_t pos, const Word& w, std::size_t from) {
    const std::size_t n = std::min(L - pos, w.size() - from);
    return y.compare(pos, n, w, from, n) == 0;
  };
  auto record = [&]() {
    if (++out.factorizations > kMaxFactorizations)
      throw HypothesisError("covering_symbol_profile: more than 2^20 factorizations");
    for (const auto& [start, a] : blocks) {
      const long long end = start + static_cast<long long>(img[a].size());
      for (long long j = std::max(0LL, start); j < std::min<long long>(end, L); ++j)
        seen[j].insert(Symbol{static_cast<std::size_t>(j - start), a});
    }
  };
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (pos >= L) {
      record();
      return;
    }
    for (std::size_t b = 0; b < img.size(); ++b) {
      if (!matches(pos, img[b], 0)) continue;
      x.push_back(static_cast<Letter>(b));
      if (consistent()) {
        blocks.emplace_back(static_cast<long long>(pos), static_cast<Letter>(b));
        self(self, pos + img[b].size());
        blocks.pop_back();
      }
      x.pop_back();
    }
  };
  for (std::size_t a = 0; a < img.size(); ++a)
    for (std::size_t k = 0; k < img[a].size(); ++k) {
      if (!matches(0, img[a], k)) continue;
      x.assign(1, static_cast<Letter>(a));
      if (!consistent()) continue;
      blocks.assign(1, {-static_cast<long long>(k), static_cast<Letter>(a)});
      dfs(dfs, img[a].size() - k);
    }
  if (out.factorizations == 0) throw HypothesisError("not in generated language at this depth");
  out.counts.resize(L);
  for (std::size_t j = 0; j < L; ++j) out.counts[j] = seen[j].size();
  const auto it = std::min_element(out.counts.begin(), out.counts.end());
  out.min_count = *it;
  out.argmin = static_cast<std::size_t>(it - out.counts.begin());
  return out;
}

std::vector<FiberProfile> sample_fiber_profiles(const DirectiveSequence& d, std::size_t n, std::size_t len,
                                                std::size_t samples, std::uint64_t seed) {
  if (len == 0) throw HypothesisError("sample_fiber_profiles: length must be positive");
  const std::size_t N = d.declared_depth();
  std::size_t h = 0;
  for (;; ++h) {
    if (h >= N) throw HypothesisError("sample_fiber_profiles: the sequence does not grow enough to sample");
    const auto lens = d.composite_lengths(0, h);
    if (*std::min_element(lens.begin(), lens.end()) >= 8 * len) break;
  }
  const Morphism s = d.composite(0, n);
  const std::size_t min_len = metrics(s).min_len;
  const LanguageTable lxn = level_language(d, n, len / min_len + 3);
  const Word g = d.composite(0, h).images().front();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.size() - len);
  std::vector<FiberProfile> out;
  for (std::size_t i = 0; i < samples; ++i) out.push_back(covering_symbol_profile(s, g.substr(pick(rng), len), lxn));
  return out;
}

// ------------------------------------------------------------ asymptotic candidates

AsymptoticCandidates asymptotic_candidates(const LanguageTable& lx, std::size_t m, TailSide side) {
  if (m == 0) throw HypothesisError("asymptotic_candidates: m must be positive");
  if (lx.max_len < m + 1) throw HypothesisError("asymptotic_candidates: table shorter than m + 1");
  const auto words = lx.of_length(m + 1);
  if (words.empty()) throw HypothesisError("asymptotic_candidates: table has no words of length m + 1");
  AsymptoticCandidates out;
  out.m = m;
  out.side = side;
  out.stabilized = lx.stabilized;
  std::map<Word, std::vector<Word>> groups;
  for (const Word& w : words) groups[side == TailSide::right ? w.substr(1) : w.substr(0, m)].push_back(w);
  for (const auto& [tail, ws] : groups) {
    if (ws.size() >= 2) ++out.specials;
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = i + 1; j < ws.size(); ++j) out.pairs.emplace_back(ws[i], ws[j]);
  }
  return out;
}

}  // namespace sadic
