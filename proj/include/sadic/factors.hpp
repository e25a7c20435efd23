#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sadic/coding.hpp"
#include "sadic/decompose.hpp"
#include "sadic/language.hpp"
#include "sadic/morphism.hpp"
#include "sadic/recognize.hpp"

namespace sadic {

/// Sliding-block code psi : A^{2r+1} -> B.
struct LocalCode {
  std::size_t radius = 0;
  Alphabet domain;
  Alphabet target;
  std::map<Word, Letter> table;

  /// psi(window); throws HypothesisError naming a missing window.
  Letter at(const Word& window) const;
};

// Format:
//   radius: r
//   target: 0 1        (optional; otherwise order of first appearance)
//   a b a -> 0
LocalCode parse_local_code(std::string_view text, const Alphabet& domain);
std::string serialize_local_code(const LocalCode& code);

/// The code applied to every radius-r window of w: |w| - 2r letters.
Word apply_code(const LocalCode& code, const Word& w);

struct BlockMorphism {
  Morphism tau;
  /// tau is proper; guaranteed when sigma is (r+1)-proper.
  bool proper = false;
  /// Table words on which the commuting square was checked.
  std::size_t words_checked = 0;
};

/// tau(a) = psi applied along v sigma(a) u, u and v the common prefix and
/// suffix of length r. Verifies the commuting square on every word of lx1.
BlockMorphism sliding_block_to_morphism(const Morphism& sigma, const LocalCode& code, const LanguageTable& lx1);

struct Transport {
  /// Proper contracted input; its level 0 is (r+1)-proper.
  DirectiveSequence source;
  std::string representation;
  BlockMorphism block;
  /// (tau, sigma_1, sigma_2, ...).
  DirectiveSequence factor;
  Tower tower;
  /// Rank was pushed through the factor; otherwise the tower levels
  /// already respect the alphabet bound and are used as they are.
  bool pushed = false;
  /// nu_0 .. nu_{N-1} and psi_0 .. psi_N: psi_0 = nu_0 psi_1 and
  /// psi_n sigma''_n = nu_n psi_{n+1}.
  std::vector<Morphism> nu, psi;
  /// Largest alphabet of `source` over the levels the tower used.
  std::size_t alphabet_bound = 0;
  std::vector<Certificate> certificates;

  bool ok() const { return all_pass(certificates); }
};

/// Builds the factor sequence and its recognizable tower. When the tower
/// exceeds the alphabet bound of the input, the rank is pushed through the
/// factor maps (without the |phi|_1^4 properness precondition).
Transport transported_structure(const DirectiveSequence& d, const LocalCode& code, std::size_t m_levels);

struct FiberProfile {
  Word y;
  std::size_t factorizations = 0;
  /// Distinct covering symbols (offset, letter) at every position of y.
  std::vector<std::size_t> counts;
  std::size_t min_count = 0;
  std::size_t argmin = 0;
};

/// Enumerates the factorizations of y by images of s whose letter
/// sequences are consistent with lxn; y may start and end inside images.
FiberProfile covering_symbol_profile(const Morphism& s, const Word& y, const LanguageTable& lxn);

/// `samples` random factors of length `len` of the level-0 language,
/// profiled against sigma_[0,n) and the level-n language. mt19937_64(seed).
std::vector<FiberProfile> sample_fiber_profiles(const DirectiveSequence& d, std::size_t n, std::size_t len,
                                                std::size_t samples, std::uint64_t seed);

enum class TailSide { left, right };

struct AsymptoticCandidates {
  std::size_t m = 0;
  TailSide side = TailSide::right;
  /// Unordered pairs of (m+1)-words sharing their m-tail on the given side.
  std::vector<std::pair<Word, Word>> pairs;
  /// m-words with at least two extensions on the opposite side.
  std::size_t specials = 0;
  bool stabilized = false;
};

/// right: pairs equal on positions 2..m+1 and different at position 1.
/// left: equal on positions 1..m and different at position m+1.
AsymptoticCandidates asymptotic_candidates(const LanguageTable& lx, std::size_t m, TailSide side);

}  // namespace sadic
