#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sadic/morphism.hpp"

namespace sadic {

/// Materialized depth of sequences with a repeat rule.
inline constexpr std::size_t kDepthCap = 32;

struct RepeatRule {
  enum class Kind { none, stationary, cycle };
  Kind kind = Kind::none;
  std::size_t period = 0;  ///< 1 for stationary, k for cycle k

  static RepeatRule stationary() { return {Kind::stationary, 1}; }
  static RepeatRule cycle(std::size_t k) { return {Kind::cycle, k}; }
  friend bool operator==(const RepeatRule&, const RepeatRule&) = default;
};

/// Finite prefix of a directive sequence sigma_n : A_{n+1} -> A_n, with an
/// optional periodic tail.
class DirectiveSequence {
 public:
  DirectiveSequence() = default;
  DirectiveSequence(std::vector<Morphism> levels, RepeatRule repeat = {});

  std::size_t explicit_levels() const noexcept { return levels_.size(); }
  const std::vector<Morphism>& explicit_morphisms() const noexcept { return levels_; }
  const RepeatRule& repeat() const noexcept { return repeat_; }
  /// Number of levels that can be materialized.
  std::size_t declared_depth() const noexcept;

  /// sigma_n; throws "insufficient materialized levels" past the depth.
  const Morphism& level(std::size_t n) const;
  /// A_n.
  const Alphabet& alphabet(std::size_t n) const;
  /// sigma_[n,N) = sigma_n o ... o sigma_{N-1}; identity when n == N.
  Morphism composite(std::size_t n, std::size_t N) const;
  /// |sigma_[n,N)(a)| for a in A_N without materializing images (saturating).
  std::vector<std::uint64_t> composite_lengths(std::size_t n, std::size_t N) const;

  std::string name;

 private:
  std::vector<Morphism> levels_;
  RepeatRule repeat_;
};

/// Sections separated by lines "---", each a morphism block; an optional
/// footer "repeat: stationary" or "repeat: cycle k". A section without a
/// target header takes the source of the previous section as its target.
DirectiveSequence parse_directive_sequence(std::string_view text);
std::string serialize_directive_sequence(const DirectiveSequence& d);

/// Directory of the built-in corpus (SADIC_CORPUS_DIR overrides).
std::string corpus_dir();
std::vector<std::string> corpus_ids();
/// Loads a corpus id, or a file path when `id_or_path` is not a corpus id.
DirectiveSequence load_directive_sequence(const std::string& id_or_path);

/// Length-then-lexicographic order.
struct ShortLex {
  bool operator()(const Word& x, const Word& y) const {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  }
};

struct LanguageTable {
  Alphabet alphabet;
  std::size_t level = 0;
  std::size_t max_len = 0;
  std::size_t depth = 0;
  std::set<Word, ShortLex> words;
  bool stabilized = false;  ///< equal to the table computed at depth - 1
  bool monotone = true;     ///< the depth - 1 table is a subset

  bool contains(const Word& w) const { return words.count(w) > 0; }
  std::vector<Word> of_length(std::size_t len) const;
  std::vector<Letter> letters() const;
};

/// Factors of length <= L of sigma_[n,N)(a), a in A_N.
LanguageTable level_language(const DirectiveSequence& d, std::size_t n, std::size_t L, std::size_t N);
/// Same, with N = declared depth.
LanguageTable level_language(const DirectiveSequence& d, std::size_t n, std::size_t L);

/// Factor-closed table from an explicit set of words (all their factors up to L).
LanguageTable table_from_words(const Alphabet& alphabet, const std::vector<Word>& words, std::size_t L);

/// min_a |sigma_[0,n)(a)| for n = 0 .. N-1.
std::vector<std::uint64_t> growth_profile(const DirectiveSequence& d, std::size_t N);
/// p_n = min_a per(sigma_[0,n)(a)) for n = 0 .. N.
std::vector<std::size_t> min_period_profile(const DirectiveSequence& d, std::size_t N);

/// min over materialized levels n >= 1 of #A_n.
std::size_t prefix_alphabet_rank(const DirectiveSequence& d);

/// Blocks sigma_[c_k, c_{k+1}). A stationary input whose last block lies in
/// the periodic tail stays stationary.
DirectiveSequence contract(const DirectiveSequence& d, const std::vector<std::size_t>& cuts);

/// Restricts every A_n to the letters of the level-n language (depth N).
DirectiveSequence trim_letter_onto(const DirectiveSequence& d, std::size_t N);
DirectiveSequence trim_letter_onto(const DirectiveSequence& d);

struct Properized {
  DirectiveSequence sequence;
  std::vector<std::size_t> cuts;  ///< contraction of the input used
  std::vector<Word> split_words;  ///< w_n per level, over A_{c_n}
};

/// Pair-alphabet construction: contract until every length-3 word of the
/// level language occurs twice in each block image, split each image at
/// the first occurrence of w_n and recode on pairs.
Properized properize(const DirectiveSequence& d, std::size_t N);
Properized properize(const DirectiveSequence& d);

/// For a stationary sequence whose substitution is left- or right-proper,
/// sigma o sigma' with sigma' the conjugate moving the common letter to
/// the other end. The result is proper, has the same alphabet and
/// generates the same subshift.
std::optional<DirectiveSequence> proper_conjugate(const DirectiveSequence& d);

struct ProperRepresentation {
  DirectiveSequence sequence;
  std::string method;  ///< "already-proper", "conjugate" or "properize"
};

/// Trims, then returns a proper sequence generating the same subshift,
/// preferring methods that keep the alphabet.
ProperRepresentation proper_representation(const DirectiveSequence& d);

/// True when every materialized level (up to the declared depth) is proper.
bool all_levels_proper(const DirectiveSequence& d);

}  // namespace sadic
