#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sadic/hash.hpp"
#include "sadic/language.hpp"
#include "sadic/morphism.hpp"

namespace sadic {

/// (k, a): the window center sits at offset k inside sigma(a).
struct Symbol {
  std::size_t offset = 0;
  Letter letter = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// A centered factorization seen through a window of radius r.
struct Interpretation {
  Word window;
  std::size_t offset = 0;
  Letter letter = 0;
  /// Window indices j in [0, |window|] where an image starts.
  std::vector<std::size_t> local_cuts;
  friend bool operator==(const Interpretation&, const Interpretation&) = default;
  friend auto operator<=>(const Interpretation&, const Interpretation&) = default;
};

enum class Verdict { recognizable_at_r, violated, unknown_at_cap };

std::string to_string(Verdict v);

struct RecognizabilityReport {
  std::size_t radius = 0;
  Verdict verdict = Verdict::unknown_at_cap;
  /// Two interpretations with equal windows and different symbols.
  std::optional<std::pair<Interpretation, Interpretation>> witness;
  /// Distinct windows examined.
  std::size_t table_size = 0;
  /// Length of the x-words whose images were scanned.
  std::size_t scanned_length = 0;
  bool language_stabilized = false;
};

/// 2 * ceil(r / <sigma>) + 1: x-words of this length, centered on their
/// middle letter, cover every radius-r window around that letter's image.
std::size_t required_language_length(const Morphism& sigma, std::size_t r);

/// Every radius-r window around a position of sigma(v_c), v in Lx of the
/// required length with middle letter v_c, mapped to its symbols.
std::map<Word, std::set<Symbol>> centered_interpretations(const Morphism& sigma, const LanguageTable& lx,
                                                          std::size_t r);

/// Recognizable at r iff every window has exactly one symbol (relative to Lx).
RecognizabilityReport recognizability_check(const Morphism& sigma, const LanguageTable& lx, std::size_t r);

/// All centered interpretations of an odd-length window with their local
/// cuts. Empty when the window does not occur.
std::vector<Interpretation> parse_window(const Word& window, const Morphism& sigma, const LanguageTable& lx);

struct ConstantSearch {
  std::optional<std::size_t> constant;  ///< empty: unknown at cap
  std::size_t cap = 0;
  std::vector<RecognizabilityReport> reports;  ///< r = 0 .. last tried
};

/// Tries r = 0, 1, ... up to cap.
ConstantSearch minimal_constant(const Morphism& sigma, const LanguageTable& lx, std::size_t cap = 64);

/// Smallest r in [lo, hi] passing the check, by bisection (the verdict is
/// monotone in r). Empty when hi itself fails.
std::optional<std::size_t> minimal_constant_bisect(const Morphism& sigma, const LanguageTable& lx, std::size_t lo,
                                                   std::size_t hi);

/// Hash table of radius-r windows for fast repeated parsing.
class WindowIndex {
 public:
  WindowIndex(const Morphism& sigma, const LanguageTable& lx, std::size_t r);

  std::size_t radius() const noexcept { return r_; }
  const Morphism& morphism() const noexcept { return sigma_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Symbols of the window of `text` centered at `center`; the window must
  /// fit inside text.
  std::vector<Symbol> lookup(const PrefixHash& text, std::size_t center) const;
  std::vector<Symbol> lookup(const WindowHash& h) const;

 private:
  struct Entry {
    WindowHash hash;
    Symbol symbol;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };
  Morphism sigma_;
  std::size_t r_;
  std::vector<Entry> entries_;
};

}  // namespace sadic
