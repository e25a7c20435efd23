#include "sadic/decompose.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "sadic/error.hpp"

namespace sadic {

void AlignedFamily::validate() const {
  if (morphisms.empty()) throw HypothesisError("aligned family is empty");
  const auto& first = morphisms.front();
  for (const auto& m : morphisms) {
    if (!(m.source() == first.source())) throw HypothesisError("aligned family: source alphabets differ");
    for (std::size_t a = 0; a < first.source().size(); ++a)
      if (m.images()[a].size() != first.images()[a].size())
        throw HypothesisError("aligned family: |sigma_j(" + first.source().names()[a] + ")| depends on j");
  }
}

std::vector<std::size_t> AlignedFamily::lengths() const {
  std::vector<std::size_t> out;
  for (const Word& w : morphisms.front().images()) out.push_back(w.size());
  return out;
}

std::size_t AlignedFamily::total_length() const { return metrics(morphisms.front()).total_len; }

namespace {

Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

Decomposition mirror_decomposition(const Decomposition& d) {
  Decomposition out{mirror(d.q), {}};
  for (const auto& p : d.ps) out.ps.push_back(mirror(p));
  return out;
}

Decomposition aligned_prefix(std::vector<Morphism> fam, Word u, Word v) {
  Morphism q = Morphism::identity(fam.front().source());
  std::size_t prev_total = std::numeric_limits<std::size_t>::max();
  for (;;) {
    const std::size_t total = metrics(fam.front()).total_len;
    if (total >= prev_total) throw InternalError("lower_rank_aligned: total length did not decrease");
    prev_total = total;
    if (u.empty() || v.empty()) throw HypothesisError("lower_rank_aligned: u and v must be nonempty");
    if (u.size() < total)
      throw HypothesisError("lower_rank_aligned: |u| = " + std::to_string(u.size()) + " < l = " +
                            std::to_string(total));
    const Letter a = u.front(), b = v.front();
    if (a == b) throw HypothesisError("lower_rank_aligned: u and v start with the same letter");
    for (const auto& s : fam)
      if (!sadic::apply(s, v).starts_with(sadic::apply(s, u)))
        throw HypothesisError("lower_rank_aligned: sigma_j(u) is not a prefix of sigma_j(v)");
    const std::size_t la = fam.front().images()[a].size();
    const std::size_t lb = fam.front().images()[b].size();
    if (la == lb) {
      std::vector<Morphism> ps;
      Morphism e;
      for (const auto& s : fam) {
        Peel pl = peel_equal(s, a, b);
        ps.push_back(pl.rest);
        e = pl.elementary;
      }
      return {compose(e, q), std::move(ps)};
    }
    const Letter lo = la < lb ? a : b, hi = la < lb ? b : a;
    Morphism e;
    for (auto& s : fam) {
      Peel pl = peel_prefix(s, lo, hi);
      s = pl.rest;
      e = pl.elementary;
    }
    const Word u1 = u.substr(1), v1 = v.substr(1);
    if (la < lb) {
      u = sadic::apply(e, u1);
      v = Word(1, b) + sadic::apply(e, v1);
    } else {
      u = Word(1, a) + sadic::apply(e, u1);
      v = sadic::apply(e, v1);
    }
    q = compose(e, q);
  }
}

}  // namespace

Decomposition lower_rank_aligned(const AlignedFamily& family, const Word& u, const Word& v, Side side) {
  family.validate();
  if (side == Side::prefix) return aligned_prefix(family.morphisms, u, v);
  std::vector<Morphism> fam;
  for (const auto& m : family.morphisms) fam.push_back(mirror(m));
  return mirror_decomposition(aligned_prefix(std::move(fam), reversed(u), reversed(v)));
}

namespace {

Decomposition split_prefix(const Morphism& sigma, const Word& u, const Word& v, std::size_t s_len) {
  if (u.empty() || v.empty()) throw HypothesisError("lower_rank_split: u and v must be nonempty");
  const Letter a = u.front(), b = v.front();
  const Word& sa = sigma.image(a);
  if (s_len >= sa.size()) throw HypothesisError("lower_rank_split: t must be nonempty (s_len < |sigma(a)|)");
  const Word s = sa.substr(0, s_len);
  if (!(s + sadic::apply(sigma, v)).starts_with(sadic::apply(sigma, u)))
    throw HypothesisError("lower_rank_split: sigma(u) is not a prefix of s sigma(v)");
  const std::size_t total = metrics(sigma).total_len;
  if (u.size() < total + s_len)
    throw HypothesisError("lower_rank_split: |u| < |sigma|_1 + |s|");
  if (s_len == 0 && a == b) throw HypothesisError("lower_rank_split: s is empty and a == b");

  Decomposition d;
  if (s_len == 0) {
    d = aligned_prefix({sigma}, u, v);
  } else {
    Peel pl = peel_interior(sigma, a, s_len);
    const Morphism& theta = pl.elementary;
    Word ut = Word(1, a) + sadic::apply(theta, u.substr(1));
    Word vt = sadic::apply(theta, v);
    Decomposition inner = aligned_prefix({pl.rest}, ut, vt);
    d = {compose(inner.q, theta), inner.ps};
  }
  if (metrics(d.ps.front()).total_len >= total)
    throw InternalError("lower_rank_split: |p|_1 did not decrease");
  return d;
}

}  // namespace

Decomposition lower_rank_split(const Morphism& sigma, const Word& u, const Word& v, std::size_t s_len, Side side) {
  if (side == Side::prefix) return split_prefix(sigma, u, v, s_len);
  return mirror_decomposition(split_prefix(mirror(sigma), reversed(u), reversed(v), s_len));
}

// ------------------------------------------------------------ factorize_through

namespace {

struct Violation {
  std::size_t ik;  // 1-based
  std::size_t s_len;
};

std::vector<std::size_t> prefix_lengths(const Morphism& m, const Word& w) {
  std::vector<std::size_t> out(w.size() + 1, 0);
  for (std::size_t i = 0; i < w.size(); ++i) out[i + 1] = out[i] + m.image(w[i]).size();
  return out;
}

/// i_k for k = 1..m-1 (1-based) and the matching |s_k|.
std::vector<Violation> block_cuts(const Morphism& phi, const Morphism& tau, const Word& u, const Word& w) {
  auto pu = prefix_lengths(phi, u);
  auto pw = prefix_lengths(tau, w);
  std::vector<Violation> out;
  for (std::size_t k = 1; k < w.size(); ++k) {
    const std::size_t t = pw[k];
    auto it = std::upper_bound(pu.begin(), pu.end(), t);  // first prefix length > t
    std::size_t ik = static_cast<std::size_t>(it - pu.begin());
    out.push_back({ik, t - pu[ik - 1]});
  }
  return out;
}

std::optional<Violation> first_violation(const Morphism& phi, const Morphism& tau, const Word& u, const Word& w) {
  for (const auto& c : block_cuts(phi, tau, u, w))
    if (c.s_len != 0 || u[0] != u[c.ik - 1]) return c;
  return std::nullopt;
}

struct Reduced {
  Morphism phi;
  Morphism q;
};

Reduced reduce(const Morphism& phi, const Word& u, const Violation& v) {
  const std::size_t L = metrics(phi).total_len;
  const std::size_t want_u = L * L, want_v = L * L * L;
  const std::size_t start = v.ik - 1;
  std::size_t len_u = std::min(want_u, u.size() - start);
  std::size_t len_v = std::min(want_v, u.size());
  Word ut = u.substr(start, len_u);
  Word vt = u.substr(0, len_v);
  Decomposition d = lower_rank_split(phi, ut, vt, v.s_len);
  return {d.ps.front(), d.q};
}

Word reversed_word(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

Decomposition factorize_through(const Morphism& phi, const Morphism& tau, const Word& u, const Word& w,
                                const FactorizeOptions& options) {
  if (!(phi.target() == tau.target())) throw HypothesisError("factorize_through: phi and tau have different targets");
  if (u.empty() || w.empty()) throw HypothesisError("factorize_through: empty witness");
  {
    std::vector<bool> seen(tau.source().size(), false);
    for (Letter b : w) seen.at(b) = true;
    if (!std::all_of(seen.begin(), seen.end(), [](bool x) { return x; }))
      throw HypothesisError("factorize_through: w does not contain every letter of B");
  }
  if (sadic::apply(phi, u) != sadic::apply(tau, w)) throw HypothesisError("factorize_through: phi(u) != tau(w)");
  const std::size_t L0 = metrics(phi).total_len;
  if (options.require_properness_bound) {
    const double bound = static_cast<double>(L0) * L0 * L0 * L0;
    if (static_cast<double>(properness(tau)) < bound)
      throw HypothesisError("factorize_through: tau is " + std::to_string(properness(tau)) +
                            "-proper, needs |phi|_1^4 = " + std::to_string(static_cast<unsigned long long>(bound)));
  }

  const std::size_t source_size = phi.source().size();
  if (w.size() == 1) {
    // Single block: every letter of tau(w_1) becomes a letter of D, unless
    // that would exceed #A; then D = B itself.
    const Word& img = tau.image(w[0]);
    auto used = letters_of(img);
    if (used.size() <= source_size) {
      std::vector<Letter> map(tau.target().size(), 0);
      for (std::size_t i = 0; i < used.size(); ++i) map[used[i]] = static_cast<Letter>(i);
      Alphabet D = tau.target().restricted(used);
      std::vector<Word> incl;
      for (Letter c : used) incl.push_back(Word(1, c));
      Morphism q(tau.source(), D, {translate(img, map)});
      return {q, {Morphism(D, tau.target(), incl)}};
    }
    return {Morphism::identity(tau.source()), {tau}};
  }

  Morphism cur = phi;
  Word cu = u;
  for (std::size_t guard = 0;; ++guard) {
    if (guard > L0 + 1) throw InternalError("factorize_through: reduction loop exceeded |phi|_1 steps");
    const std::size_t before = metrics(cur).total_len;
    if (auto v = first_violation(cur, tau, cu, w)) {
      Reduced r = reduce(cur, cu, *v);
      cu = sadic::apply(r.q, cu);
      cur = r.phi;
    } else if (auto vm = first_violation(mirror(cur), mirror(tau), reversed_word(cu), reversed_word(w))) {
      Reduced r = reduce(mirror(cur), reversed_word(cu), *vm);
      Morphism q = mirror(r.q);
      cu = sadic::apply(q, cu);
      cur = mirror(r.phi);
    } else {
      break;
    }
    if (metrics(cur).total_len >= before) throw InternalError("factorize_through: |phi|_1 did not decrease");
  }

  // Blocks tau(w_k) = phi(u_{i_{k-1}} .. u_{i_k - 1}).
  auto cuts = block_cuts(cur, tau, cu, w);
  std::vector<std::size_t> starts{0};
  for (const auto& c : cuts) starts.push_back(c.ik - 1);
  starts.push_back(cu.size());

  // Letters with equal phi-images are merged; the class is named after its
  // smallest member.
  const Alphabet& A = cur.source();
  std::vector<Letter> rep(A.size());
  for (std::size_t a = 0; a < A.size(); ++a) {
    rep[a] = static_cast<Letter>(a);
    for (std::size_t c = 0; c < a; ++c)
      if (cur.images()[c] == cur.images()[a]) {
        rep[a] = static_cast<Letter>(c);
        break;
      }
  }
  std::vector<std::optional<Word>> blocks(tau.source().size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    Word blk = cu.substr(starts[k], starts[k + 1] - starts[k]);
    if (sadic::apply(cur, blk) != tau.image(w[k])) throw InternalError("factorize_through: block parse failed");
    if (!blocks[w[k]]) blocks[w[k]] = translate(blk, rep);
  }
  std::vector<Letter> used;
  for (const auto& b : blocks)
    for (Letter c : *b) used.push_back(c);
  used = letters_of(Word(used.begin(), used.end()));
  std::vector<Letter> index(A.size(), 0);
  for (std::size_t i = 0; i < used.size(); ++i) index[used[i]] = static_cast<Letter>(i);
  Alphabet D = A.restricted(used);
  std::vector<Word> qimg, pimg;
  for (const auto& b : blocks) qimg.push_back(translate(*b, index));
  for (Letter c : used) pimg.push_back(cur.images()[c]);
  Decomposition out{Morphism(tau.source(), D, qimg), {Morphism(D, tau.target(), pimg)}};

  if (compose(out.ps.front(), out.q) != tau) throw InternalError("factorize_through: tau != pq");
  if (!is_letter_onto(out.q) || properness(out.q) < 1)
    throw InternalError("factorize_through: q is not letter-onto and proper");
  if (D.size() > source_size) throw InternalError("factorize_through: #D > #A");
  return out;
}

// ------------------------------------------------------------ push_rank_through

PushResult push_rank_through(const std::vector<Morphism>& sigma, const std::vector<Morphism>& tau,
                             const std::vector<Morphism>& phi, const FactorizeOptions& options) {
  const std::size_t N = tau.size();
  if (N == 0) throw HypothesisError("push_rank_through: no levels");
  if (sigma.size() != N || phi.size() != N + 1)
    throw HypothesisError("push_rank_through: expected N sigma levels, N tau levels and N+1 phi levels");
  if (!(compose(tau[0], phi[1]) == phi[0])) throw HypothesisError("push_rank_through: phi_0 != tau_0 phi_1 at level 0");
  for (std::size_t n = 1; n < N; ++n)
    if (!(compose(phi[n], sigma[n]) == compose(tau[n], phi[n + 1])))
      throw HypothesisError("push_rank_through: phi_n sigma_n != tau_n phi_{n+1} at level " + std::to_string(n));
  for (std::size_t n = 0; n <= N; ++n)
    if (!is_letter_onto(phi[n])) throw HypothesisError("push_rank_through: phi_" + std::to_string(n) + " is not letter-onto");

  PushResult out;
  out.q.resize(N + 1);
  out.q[0] = Morphism::identity(tau[0].target());
  for (std::size_t n = 0; n < N; ++n) {
    const Alphabet& top = phi[n + 1].source();
    Word x;
    for (std::size_t a = 0; a < top.size(); ++a) x.push_back(static_cast<Letter>(a));
    Word wn = sadic::apply(phi[n + 1], x);
    Word un = n == 0 ? x : sadic::apply(sigma[n], x);
    Decomposition d;
    try {
      d = factorize_through(phi[n], tau[n], un, wn, options);
    } catch (const HypothesisError& e) {
      throw HypothesisError("level " + std::to_string(n) + ": " + e.what());
    }
    out.p.push_back(d.ps.front());
    out.q[n + 1] = d.q;
  }
  out.nu.push_back(out.p[0]);
  for (std::size_t n = 1; n < N; ++n) out.nu.push_back(compose(out.q[n], out.p[n]));
  out.psi.push_back(phi[0]);
  for (std::size_t n = 1; n <= N; ++n) out.psi.push_back(compose(out.q[n], phi[n]));

  if (!(compose(out.nu[0], out.psi[1]) == out.psi[0])) throw InternalError("push_rank_through: nu_0 psi_1 != psi_0");
  for (std::size_t n = 1; n < N; ++n) {
    if (!(compose(out.psi[n], sigma[n]) == compose(out.nu[n], out.psi[n + 1])))
      throw InternalError("push_rank_through: psi_n sigma_n != nu_n psi_{n+1} at level " + std::to_string(n));
    if (!is_letter_onto(out.nu[n]) || properness(out.nu[n]) < 1)
      throw InternalError("push_rank_through: nu_" + std::to_string(n) + " is not letter-onto and proper");
  }
  return out;
}

}  // namespace sadic
