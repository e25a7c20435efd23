#include "sadic/morphism.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "sadic/error.hpp"

namespace sadic {

Morphism::Morphism(Alphabet source, Alphabet target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (source_.empty()) throw HypothesisError("morphism source alphabet is empty");
  if (images_.size() != source_.size())
    throw HypothesisError("morphism is not total: " + std::to_string(images_.size()) + " images for " +
                          std::to_string(source_.size()) + " letters");
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (images_[a].empty())
      throw HypothesisError("empty image for letter '" + source_.names()[a] + "'");
    for (Letter b : images_[a])
      if (b >= target_.size())
        throw HypothesisError("image of '" + source_.names()[a] + "' leaves the target alphabet");
  }
}

Morphism Morphism::identity(const Alphabet& alphabet) {
  std::vector<Word> images;
  for (std::size_t a = 0; a < alphabet.size(); ++a) images.push_back(Word(1, static_cast<Letter>(a)));
  return Morphism(alphabet, alphabet, std::move(images));
}

const Word& Morphism::image(Letter a) const {
  if (a >= images_.size()) throw HypothesisError("letter index " + std::to_string(a) + " not in the source alphabet");
  return images_[a];
}

Word Morphism::operator()(const Word& w) const { return sadic::apply(*this, w); }

bool operator==(const Morphism& x, const Morphism& y) {
  return x.source_ == y.source_ && x.target_ == y.target_ && x.images_ == y.images_;
}

Word apply(const Morphism& m, const Word& w) {
  std::size_t len = 0;
  for (Letter a : w) len += m.image(a).size();
  Word out;
  out.reserve(len);
  for (Letter a : w) out += m.images()[a];
  return out;
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
  if (!(inner.target() == outer.source()))
    throw HypothesisError("alphabet mismatch in compose: inner target differs from outer source");
  std::vector<Word> images;
  images.reserve(inner.images().size());
  for (const Word& w : inner.images()) images.push_back(sadic::apply(outer, w));
  return Morphism(inner.source(), outer.target(), std::move(images));
}

Morphism compose_chain(const std::vector<Morphism>& chain) {
  if (chain.empty()) throw HypothesisError("empty composition chain");
  Morphism acc = chain.back();
  for (std::size_t i = chain.size() - 1; i-- > 0;) acc = compose(chain[i], acc);
  return acc;
}

Metrics metrics(const Morphism& m) {
  Metrics out;
  out.min_len = m.images().front().size();
  for (const Word& w : m.images()) {
    out.min_len = std::min(out.min_len, w.size());
    out.max_len = std::max(out.max_len, w.size());
    out.total_len += w.size();
  }
  return out;
}

std::size_t common_prefix(const Morphism& m) {
  std::size_t len = m.images().front().size();
  for (const Word& w : m.images()) len = std::min(len, common_prefix_length(m.images().front(), w));
  return len;
}

std::size_t common_suffix(const Morphism& m) {
  std::size_t len = m.images().front().size();
  for (const Word& w : m.images()) len = std::min(len, common_suffix_length(m.images().front(), w));
  return len;
}

std::size_t properness(const Morphism& m) { return std::min(common_prefix(m), common_suffix(m)); }

bool is_letter_onto(const Morphism& m) {
  std::vector<bool> seen(m.target().size(), false);
  for (const Word& w : m.images())
    for (Letter b : w) seen[b] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

Classification classify(const Morphism& m, std::size_t r) {
  Classification c;
  const std::size_t prop = properness(m);
  c.r_proper = r <= prop;
  c.proper = prop >= 1;
  c.letter_onto = is_letter_onto(m);
  c.positive = true;
  for (const Word& w : m.images()) {
    std::vector<bool> seen(m.target().size(), false);
    for (Letter b : w) seen[b] = true;
    if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) c.positive = false;
  }
  return c;
}

Morphism mirror(const Morphism& m) {
  std::vector<Word> images = m.images();
  for (Word& w : images) std::reverse(w.begin(), w.end());
  return Morphism(m.source(), m.target(), std::move(images));
}

Morphism inflate(const Morphism& m) {
  std::vector<Word> images;
  for (std::size_t a = 0; a < m.source().size(); ++a)
    images.push_back(Word(m.images()[a].size(), static_cast<Letter>(a)));
  return Morphism(m.source(), m.source(), std::move(images));
}

namespace {

void check_letter(const Alphabet& alphabet, Letter a) {
  if (a >= alphabet.size()) throw HypothesisError("letter index " + std::to_string(a) + " outside alphabet");
}

}  // namespace

Morphism erase(const Alphabet& alphabet, Letter a, Letter b) {
  check_letter(alphabet, a);
  check_letter(alphabet, b);
  if (a == b) throw HypothesisError("erase needs two distinct letters");
  Alphabet target = alphabet.without_letter(b);
  std::vector<Word> images;
  for (std::size_t c = 0; c < alphabet.size(); ++c) {
    Letter src = c == b ? a : static_cast<Letter>(c);
    images.push_back(Word(1, src > b ? src - 1 : src));
  }
  return Morphism(alphabet, target, std::move(images));
}

Morphism cut(const Alphabet& alphabet, Letter a, Letter b) {
  check_letter(alphabet, a);
  check_letter(alphabet, b);
  if (a == b) throw HypothesisError("cut needs two distinct letters");
  Morphism id = Morphism::identity(alphabet);
  std::vector<Word> images = id.images();
  images[b] = Word{a, b};
  return Morphism(alphabet, alphabet, std::move(images));
}

Morphism split(const Alphabet& alphabet, Letter a, const std::string& fresh) {
  check_letter(alphabet, a);
  if (alphabet.contains(fresh)) throw HypothesisError("split letter '" + fresh + "' already in the alphabet");
  Alphabet target = alphabet.with_letter(fresh);
  std::vector<Word> images = Morphism::identity(alphabet).images();
  images[a] = Word{static_cast<Letter>(alphabet.size()), a};
  return Morphism(alphabet, target, std::move(images));
}

std::string fresh_name(const Alphabet& alphabet, std::string_view base) {
  for (std::size_t k = 1;; ++k) {
    std::string name = std::string(base) + "~" + std::to_string(k);
    if (!alphabet.contains(name)) return name;
  }
}

Peel peel_equal(const Morphism& sigma, Letter a, Letter b) {
  check_letter(sigma.source(), a);
  check_letter(sigma.source(), b);
  if (a == b) throw HypothesisError("peel equal: letters must differ");
  if (sigma.image(a) != sigma.image(b)) throw HypothesisError("peel equal: sigma(a) != sigma(b)");
  Morphism e = erase(sigma.source(), a, b);
  std::vector<Word> images;
  for (std::size_t c = 0; c < sigma.source().size(); ++c)
    if (c != b) images.push_back(sigma.images()[c]);
  return {Morphism(e.target(), sigma.target(), std::move(images)), e};
}

Peel peel_prefix(const Morphism& sigma, Letter a, Letter b) {
  check_letter(sigma.source(), a);
  check_letter(sigma.source(), b);
  if (a == b) throw HypothesisError("peel prefix: letters must differ");
  const Word& sa = sigma.image(a);
  const Word& sb = sigma.image(b);
  if (!(sa.size() < sb.size() && sb.starts_with(sa)))
    throw HypothesisError("peel prefix: sigma(a) is not a strict prefix of sigma(b)");
  std::vector<Word> images = sigma.images();
  images[b] = sb.substr(sa.size());
  return {Morphism(sigma.source(), sigma.target(), std::move(images)), cut(sigma.source(), a, b)};
}

Peel peel_interior(const Morphism& sigma, Letter a, std::size_t s_len) {
  check_letter(sigma.source(), a);
  const Word& sa = sigma.image(a);
  if (s_len == 0 || s_len >= sa.size())
    throw HypothesisError("peel interior: need 1 <= s_len < |sigma(a)|");
  Morphism e = split(sigma.source(), a, fresh_name(sigma.source(), sigma.source().name(a)));
  std::vector<Word> images = sigma.images();
  images[a] = sa.substr(s_len);
  images.push_back(sa.substr(0, s_len));
  return {Morphism(e.target(), sigma.target(), std::move(images)), e};
}

// ---------------------------------------------------------------- text format

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

}  // namespace

Morphism parse_morphism(std::string_view text) { return parse_morphism(text, nullptr); }

Morphism parse_morphism(std::string_view text, const Alphabet* default_target) {
  std::optional<std::vector<std::string>> source_hdr, target_hdr;
  std::vector<std::pair<std::string, std::vector<std::string>>> rules;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (auto arrow = line.find("->"); arrow != std::string::npos) {
      std::string lhs = trim(std::string_view(line).substr(0, arrow));
      auto rhs = tokens(std::string_view(line).substr(arrow + 2));
      if (!valid_letter_name(lhs)) throw ParseError(where + "invalid letter '" + lhs + "'");
      if (rhs.empty()) throw ParseError(where + "empty image for '" + lhs + "'");
      rules.emplace_back(lhs, std::move(rhs));
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(where + "expected 'letter -> image' or a header");
    std::string key = trim(std::string_view(line).substr(0, colon));
    auto vals = tokens(std::string_view(line).substr(colon + 1));
    if (key == "source") {
      source_hdr = vals;
    } else if (key == "target") {
      target_hdr = vals;
    } else {
      throw ParseError(where + "unknown header '" + key + "'");
    }
  }
  if (rules.empty()) throw ParseError("no rules");

  std::vector<std::string> src_names;
  if (source_hdr) {
    src_names = *source_hdr;
  } else {
    for (const auto& r : rules) src_names.push_back(r.first);
  }
  Alphabet source(src_names);

  Alphabet target;
  if (target_hdr) {
    target = Alphabet(*target_hdr);
  } else if (default_target) {
    target = *default_target;
  } else {
    std::vector<std::string> seen;
    bool inside = true;
    for (const auto& r : rules)
      for (const auto& t : r.second) {
        if (std::find(seen.begin(), seen.end(), t) == seen.end()) seen.push_back(t);
        if (!source.contains(t)) inside = false;
      }
    target = inside ? source : Alphabet(seen);
  }

  std::vector<std::optional<Word>> images(source.size());
  for (const auto& [lhs, rhs] : rules) {
    auto a = source.find(lhs);
    if (!a) throw ParseError("rule for '" + lhs + "' which is not in the source alphabet");
    if (images[*a]) throw ParseError("duplicate rule for '" + lhs + "'");
    Word w;
    for (const auto& t : rhs) {
      auto b = target.find(t);
      if (!b) throw ParseError("image letter '" + t + "' is not in the target alphabet");
      w.push_back(*b);
    }
    images[*a] = std::move(w);
  }
  std::vector<Word> out;
  for (std::size_t a = 0; a < source.size(); ++a) {
    if (!images[a]) throw ParseError("no rule for letter '" + source.names()[a] + "'");
    out.push_back(std::move(*images[a]));
  }
  return Morphism(source, target, std::move(out));
}

std::string serialize_morphism(const Morphism& m) {
  std::string out = "source:";
  for (const auto& n : m.source().names()) out += " " + n;
  out += "\ntarget:";
  for (const auto& n : m.target().names()) out += " " + n;
  out += "\n";
  for (std::size_t a = 0; a < m.source().size(); ++a) {
    out += m.source().names()[a] + " ->";
    for (Letter b : m.images()[a]) out += " " + m.target().names()[b];
    out += "\n";
  }
  return out;
}

}  // namespace sadic
