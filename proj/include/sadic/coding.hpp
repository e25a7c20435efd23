#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sadic/language.hpp"
#include "sadic/morphism.hpp"
#include "sadic/recognize.hpp"

namespace sadic {

/// Union of cylinders [u.v]; a position k of a word is an occurrence when
/// word[k - |u|, k + |v|) = uv for some variant.
struct Marker {
  std::vector<std::pair<Word, Word>> variants;

  /// max |u|, |v| over the variants.
  std::size_t radius() const;
  /// min(common suffix of the u's, common prefix of the v's).
  std::size_t properness() const;
};

/// "u.v" variants separated by commas; either side may be empty.
Marker parse_marker(const Alphabet& alphabet, std::string_view text);
std::string format_marker(const Alphabet& alphabet, const Marker& marker);

/// Variants (S(w0 w1), S(w2 w3)) for the length-4 words w.
Marker image_marker(const Morphism& s, const std::vector<Word>& words4);

/// Sorted occurrence positions of the marker in g.
std::vector<std::size_t> marker_occurrences(const Word& g, const Marker& marker);

/// Finite words standing in for orbits of Y, produced per horizon.
class GeneratorSource {
 public:
  virtual ~GeneratorSource() = default;
  virtual const Alphabet& alphabet() const = 0;
  virtual void for_each(std::size_t horizon, const std::function<void(const Word&)>& f) const = 0;
  virtual std::size_t min_horizon() const = 0;
  virtual std::size_t max_horizon() const = 0;
  virtual std::string describe() const = 0;
};

/// sigma_[0,h)(a) for a in A_h, in letter order.
class ExpansionSource final : public GeneratorSource {
 public:
  explicit ExpansionSource(DirectiveSequence d);
  const Alphabet& alphabet() const override { return d_.alphabet(0); }
  void for_each(std::size_t horizon, const std::function<void(const Word&)>& f) const override;
  std::size_t min_horizon() const override { return 1; }
  std::size_t max_horizon() const override { return d_.declared_depth(); }
  std::string describe() const override;

 private:
  DirectiveSequence d_;
};

/// sigma_[0,n)(y) for y in the level-n language, |y| = horizon, in
/// short-lex order.
class LanguageImageSource final : public GeneratorSource {
 public:
  LanguageImageSource(DirectiveSequence d, std::size_t level, std::size_t depth);
  const Alphabet& alphabet() const override { return d_.alphabet(0); }
  void for_each(std::size_t horizon, const std::function<void(const Word&)>& f) const override;
  std::size_t min_horizon() const override { return 4; }
  std::size_t max_horizon() const override { return 48; }
  std::string describe() const override;
  const Morphism& image() const noexcept { return s_; }

 private:
  DirectiveSequence d_;
  std::size_t level_, depth_;
  Morphism s_;
};

struct ReturnWords {
  std::vector<Word> words;  ///< first-occurrence order
  std::size_t d = 0;        ///< largest gap
  std::size_t rho = 0;      ///< smallest gap
  std::size_t horizon = 0;
  std::size_t occurrences = 0;
  bool stabilized = false;  ///< same set at horizon - 1
};

/// Words read between consecutive marker occurrences in the generators.
ReturnWords return_words(const GeneratorSource& source, const Marker& marker, std::size_t horizon);

struct Certificate {
  std::string name;
  bool pass = false;
  std::string detail;
};

bool all_pass(const std::vector<Certificate>& certs);

struct CodingOptions {
  /// Horizon of the generators; 0 picks the smallest stabilized one.
  std::size_t horizon = 0;
  /// Lower bound for the length of the coded language table.
  std::size_t min_coded_length = 0;
  /// Throw HypothesisError naming the first failed certificate.
  bool throw_on_failure = true;
};

struct ReturnCoding {
  Marker marker;
  Morphism tau;                     ///< C -> B, C = {1, 2, ...}
  LanguageTable coded;              ///< Lz
  std::size_t horizon = 0;
  std::size_t d = 0, rho = 0, ell = 0, radius = 0;
  std::size_t recognizability_radius = 0;  ///< r + d
  bool stabilized = false;
  std::vector<Certificate> certificates;
  bool ok() const { return all_pass(certificates); }
};

/// Return-word coding of Y along the marker, with the four certificates:
/// language reproduction, recognizability at r + d, length and properness
/// bounds, and agreement of cuts with return times.
ReturnCoding build_return_coding(const GeneratorSource& source, const Marker& marker,
                                 const CodingOptions& options = {});

/// nu with sigma1 = sigma0 o nu, read off by parsing v.sigma1(a)u through
/// the radius-r window table of (sigma0, Lx0). sigma1 must be r-proper.
Morphism align_through(const Morphism& sigma0, const LanguageTable& lx0, std::size_t r, const Morphism& sigma1);
Morphism align_through(const WindowIndex& index, const Morphism& sigma1);

struct TowerOptions {
  /// Replace the input by a trimmed proper representation first.
  bool prepare = true;
  /// Largest composite image length tried while contracting.
  std::size_t max_image_length = std::size_t{1} << 22;
  /// Cap of the search for the constants of (Y_{n+1}, tau_n).
  std::size_t constant_cap = 64;
};

/// Recognizable tower over a contraction sigma' of the input:
/// nu_n (n = 2 .. m+2), tau_n (n = 2 .. m+1), phi_n (n = 2 .. m+2) with
/// nu_n tau_n = nu_{n+1}, sigma'_[0,n+1) = nu_n phi_n and
/// phi_n sigma'_{n+1} = tau_n phi_{n+1}.
struct Tower {
  DirectiveSequence base;            ///< sequence that was contracted
  std::string representation;        ///< how base was obtained
  std::vector<std::size_t> cuts;     ///< n_0 = 0, n_1 = 1, ..., n_{m+3}
  std::size_t levels = 0;            ///< m
  std::vector<Morphism> nu, tau, phi;          ///< indexed by n, unused slots default
  std::vector<ReturnCoding> codings;           ///< indexed by n
  std::vector<std::size_t> constants;          ///< R*_n of (Y_n, nu_n)
  std::vector<std::optional<std::size_t>> tau_constants;  ///< of (Y_{n+1}, tau_n)
  std::vector<Certificate> certificates;
  /// The literal contraction conditions (I_n), (II_n); informational.
  std::vector<Certificate> literal_conditions;

  /// sigma'_[0,n).
  Morphism prefix(std::size_t n) const { return base.composite(0, cuts[n]); }
  /// sigma'_n.
  Morphism level(std::size_t n) const { return base.composite(cuts[n], cuts[n + 1]); }
  bool ok() const { return all_pass(certificates); }
};

Tower recognizable_tower(const DirectiveSequence& d, std::size_t m_levels, const TowerOptions& options = {});

}  // namespace sadic
