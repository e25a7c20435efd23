#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sadic {

/// A letter is an index into its alphabet.
using Letter = char32_t;

/// Finite words are strings of letter indices. The empty string plays the
/// role of the empty word.
using Word = std::u32string;

/// Ordered finite set of letter names. Copies share storage.
class Alphabet {
 public:
  Alphabet();
  explicit Alphabet(std::vector<std::string> names);

  /// One letter per character, e.g. "ab" gives {a, b}.
  static Alphabet from_chars(std::string_view letters);

  std::size_t size() const noexcept { return data_->names.size(); }
  bool empty() const noexcept { return data_->names.empty(); }

  const std::string& name(Letter a) const;
  const std::vector<std::string>& names() const noexcept { return data_->names; }
  std::optional<Letter> find(std::string_view name) const;
  /// Throws HypothesisError naming the letter when it is absent.
  Letter index(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }

  /// True when every letter name is a single character, so words can be
  /// written without separators.
  bool single_char() const noexcept { return data_->single_char; }

  Alphabet with_letter(std::string name) const;
  Alphabet without_letter(Letter a) const;
  /// Sub-alphabet keeping the given letters in the given order.
  Alphabet restricted(const std::vector<Letter>& keep) const;

  friend bool operator==(const Alphabet& x, const Alphabet& y);

 private:
  struct Data {
    std::vector<std::string> names;
    std::unordered_map<std::string, Letter> index;
    bool single_char = true;
  };
  std::shared_ptr<const Data> data_;
};

/// Letter names may not contain whitespace, '#', ':' or '.', and may not be "->".
bool valid_letter_name(std::string_view name);

/// Parses a word: whitespace-separated tokens, or one letter per character
/// when the text has no whitespace. Unknown letters raise HypothesisError.
Word parse_word(const Alphabet& alphabet, std::string_view text);

/// Inverse of parse_word: concatenated for single-character alphabets,
/// space-separated otherwise.
std::string format_word(const Alphabet& alphabet, const Word& w);

/// Maps every letter of w through `map` (letter index translation).
Word translate(const Word& w, const std::vector<Letter>& map);

/// Letters occurring in w, sorted by index, without repetition.
std::vector<Letter> letters_of(const Word& w);

std::size_t common_prefix_length(const Word& x, const Word& y);
std::size_t common_suffix_length(const Word& x, const Word& y);

}  // namespace sadic
