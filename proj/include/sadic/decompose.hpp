#pragma once

#include <cstddef>
#include <vector>

#include "sadic/morphism.hpp"

namespace sadic {

enum class Side { prefix, suffix };

/// Morphisms sigma_j : A -> B_j sharing the source and the image lengths.
struct AlignedFamily {
  std::vector<Morphism> morphisms;

  /// Throws HypothesisError unless all members share the source alphabet
  /// and |sigma_j(a)| does not depend on j.
  void validate() const;
  /// l_a for every letter a.
  std::vector<std::size_t> lengths() const;
  /// l = sum of l_a.
  std::size_t total_length() const;
};

/// sigma_j = ps[j] o q for every j.
struct Decomposition {
  Morphism q;
  std::vector<Morphism> ps;
};

/// Rank lowering for aligned families: q letter-onto with #C < #A.
/// prefix side: u, v start with different letters, |u| >= l, and
/// sigma_j(u) is a prefix of sigma_j(v) for every j. The suffix side is
/// the mirror statement.
Decomposition lower_rank_aligned(const AlignedFamily& family, const Word& u, const Word& v,
                                 Side side = Side::prefix);

/// Rank lowering with a split: a = u[0], b = v[0], sigma(a) = st with
/// |s| = s_len, t nonempty; sigma(u) a prefix of s sigma(v);
/// |u| >= |sigma|_1 + |s|; s nonempty or a != b. Returns q letter-onto
/// with #C <= #A and |p|_1 < |sigma|_1. On the suffix side sigma(a) = ts
/// with a, b the last letters.
Decomposition lower_rank_split(const Morphism& sigma, const Word& u, const Word& v, std::size_t s_len,
                               Side side = Side::prefix);

struct FactorizeOptions {
  /// Enforce the properness bound l >= |phi|_1^4 before starting. When
  /// false, the reduction loop runs anyway and every step is still
  /// verified; failures surface as HypothesisError.
  bool require_properness_bound = true;
};

/// tau = p o q with q : B -> D letter-onto and proper and #D <= #(phi source).
/// Needs phi(u) == tau(w) with every letter of B occurring in w.
Decomposition factorize_through(const Morphism& phi, const Morphism& tau, const Word& u, const Word& w,
                                const FactorizeOptions& options = {});

struct PushResult {
  std::vector<Morphism> nu;   ///< nu_0 .. nu_{N-1}
  std::vector<Morphism> psi;  ///< psi_0 .. psi_N
  std::vector<Morphism> q;    ///< q_1 .. q_N (index 0 unused, equal to identity on B_0)
  std::vector<Morphism> p;    ///< p_0 .. p_{N-1}
};

/// Pushes the rank of sigma through a factor phi : sigma -> tau.
/// sigma has N levels (sigma_0 .. sigma_{N-1}), tau has N levels, phi has
/// N + 1 entries with phi_0 : A_1 -> B_0 and phi_n : A_n -> B_n for n >= 1.
/// Requires phi_0 = tau_0 phi_1 and phi_n sigma_n = tau_n phi_{n+1}.
PushResult push_rank_through(const std::vector<Morphism>& sigma, const std::vector<Morphism>& tau,
                             const std::vector<Morphism>& phi, const FactorizeOptions& options = {});

}  // namespace sadic
