#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sadic/word.hpp"

namespace sadic {

/// Non-erasing morphism A+ -> B+ given by the images of the letters of A.
class Morphism {
 public:
  Morphism() = default;
  /// Validates totality, nonempty images and image letters.
  Morphism(Alphabet source, Alphabet target, std::vector<Word> images);

  static Morphism identity(const Alphabet& alphabet);

  const Alphabet& source() const noexcept { return source_; }
  const Alphabet& target() const noexcept { return target_; }
  const Word& image(Letter a) const;
  const std::vector<Word>& images() const noexcept { return images_; }

  Word operator()(const Word& w) const;

  friend bool operator==(const Morphism& x, const Morphism& y);

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Word> images_;
};

/// Concatenation of the images of the letters of w.
Word apply(const Morphism& m, const Word& w);

/// outer o inner, i.e. a -> outer(inner(a)).
Morphism compose(const Morphism& outer, const Morphism& inner);

/// Composes a chain left to right: chain[0] o chain[1] o ... .
Morphism compose_chain(const std::vector<Morphism>& chain);

struct Metrics {
  std::size_t min_len = 0;
  std::size_t max_len = 0;
  std::size_t total_len = 0;
};
Metrics metrics(const Morphism& m);

struct Classification {
  bool r_proper = false;
  bool proper = false;
  bool letter_onto = false;
  bool positive = false;
};
Classification classify(const Morphism& m, std::size_t r);

/// Length of the longest common prefix of all images.
std::size_t common_prefix(const Morphism& m);
/// Length of the longest common suffix of all images.
std::size_t common_suffix(const Morphism& m);
/// Largest r such that m is r-proper.
std::size_t properness(const Morphism& m);
bool is_letter_onto(const Morphism& m);

/// Images reversed letterwise. rev(f o g) = rev(f) o rev(g).
Morphism mirror(const Morphism& m);

/// Letters a -> a^{|m(a)|} over the source alphabet.
Morphism inflate(const Morphism& m);

// Elementary morphisms. All three are letter-onto.

/// b -> a, other letters fixed; the target drops b.
Morphism erase(const Alphabet& alphabet, Letter a, Letter b);
/// b -> ab, other letters fixed.
Morphism cut(const Alphabet& alphabet, Letter a, Letter b);
/// a -> fresh a, other letters fixed; the target gains `fresh` (last).
Morphism split(const Alphabet& alphabet, Letter a, const std::string& fresh);

/// "base~k" with the smallest k >= 1 not already in the alphabet.
std::string fresh_name(const Alphabet& alphabet, std::string_view base);

struct Peel {
  Morphism rest;        ///< sigma'
  Morphism elementary;  ///< e, with compose(rest, e) == sigma
};

/// sigma(a) == sigma(b), a != b: sigma = sigma' o erase(a,b).
Peel peel_equal(const Morphism& sigma, Letter a, Letter b);
/// sigma(a) a strict prefix of sigma(b): sigma = sigma' o cut(a,b).
Peel peel_prefix(const Morphism& sigma, Letter a, Letter b);
/// sigma(a) = st with |s| = s_len, both nonempty: sigma = sigma' o split(a, fresh).
Peel peel_interior(const Morphism& sigma, Letter a, std::size_t s_len);

// Plain-text format:
//   # comment
//   source: a b c        (optional)
//   target: x y          (optional)
//   a -> x y
// Without headers the source is the rule keys in order; the target is the
// source when every image letter belongs to it, otherwise the image
// letters in order of first appearance.

Morphism parse_morphism(std::string_view text);
/// Same, but the target alphabet is fixed by the caller when no header is given.
Morphism parse_morphism(std::string_view text, const Alphabet* default_target);
/// Canonical form: both headers, one rule per source letter, tokens
/// separated by single spaces, trailing newline.
std::string serialize_morphism(const Morphism& m);

}  // namespace sadic
