#include <doctest.h>

#include "oracles.hpp"
#include "sadic/coding.hpp"
#include "sadic/error.hpp"
#include "sadic/language.hpp"
#include "sadic/recognize.hpp"
#include "util.hpp"

using namespace sadic;

namespace {

std::set<Word> as_set(const std::vector<Word>& ws) { return {ws.begin(), ws.end()}; }

Word power_image(const oracle::Images& s, std::size_t k, Letter a) {
  Word w(1, a);
  for (std::size_t i = 0; i < k; ++i) w = oracle::apply(s, w);
  return w;
}

}  // namespace

TEST_CASE("markers") {
  const Alphabet ab = Alphabet::from_chars("ab");
  const Marker m = parse_marker(ab, "ab.a,b.");
  REQUIRE(m.variants.size() == 2);
  CHECK(m.variants[0].first == oracle::word_of("ab"));
  CHECK(m.variants[0].second == oracle::word_of("a"));
  CHECK(m.variants[1].second.empty());
  CHECK(m.radius() == 2);
  CHECK(format_marker(ab, m) == "ab.a,b.");
  CHECK_THROWS_AS(parse_marker(ab, "aba"), ParseError);

  const Word g = oracle::word_of("abaababaab");
  // Brute force: k with g[k-|u|, k+|v|) = uv for some variant.
  std::vector<std::size_t> expect;
  for (std::size_t k = 0; k <= g.size(); ++k)
    for (const auto& [u, v] : m.variants)
      if (k >= u.size() && k + v.size() <= g.size() && g.substr(k - u.size(), u.size() + v.size()) == u + v) {
        expect.push_back(k);
        break;
      }
  CHECK(marker_occurrences(g, m) == expect);
}

TEST_CASE("return words to a on Fibonacci and Thue-Morse") {
  for (const char* id : {"fibonacci", "thue-morse"}) {
    const DirectiveSequence d = load_directive_sequence(id);
    const Marker m = parse_marker(d.alphabet(0), ".a");
    const ReturnWords rw = return_words(ExpansionSource(d), m, 8);
    const auto expect = oracle::gaps(power_image(d.level(0).images(), 8, 0), 0);
    CHECK(as_set(rw.words) == expect);
    CHECK(rw.horizon == 8);
  }
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  const auto rw = return_words(ExpansionSource(fib), parse_marker(fib.alphabet(0), ".a"), 8);
  CHECK(as_set(rw.words) == std::set<Word>{oracle::word_of("a"), oracle::word_of("ab")});
  CHECK(rw.d == 2);
  CHECK(rw.rho == 1);
}

TEST_CASE("return coding certificates") {
  for (const char* id : {"fibonacci", "thue-morse"}) {
    const DirectiveSequence d = load_directive_sequence(id);
    const ReturnCoding rc = build_return_coding(ExpansionSource(d), parse_marker(d.alphabet(0), ".a"));
    CHECK(rc.ok());
    CHECK(rc.certificates.size() == 5);
    CHECK(rc.stabilized);
    // tau spells the return words, within the length bounds.
    const auto expect = oracle::gaps(power_image(d.level(0).images(), 10, 0), 0);
    CHECK(as_set(rc.tau.images()) == expect);
    CHECK(metrics(rc.tau).max_len <= rc.d);
    CHECK(metrics(rc.tau).min_len >= rc.rho);
  }
}

TEST_CASE("a periodic substitution fails the separation check") {
  const DirectiveSequence p = parse_directive_sequence("a -> a a\nrepeat: stationary\n");
  CodingOptions opt;
  opt.throw_on_failure = false;
  CHECK_THROWS_WITH_AS(build_return_coding(ExpansionSource(p), parse_marker(p.alphabet(0), ".a"), opt),
                       doctest::Contains("separation"), HypothesisError);
}

TEST_CASE("a marker that never occurs is not syndetic") {
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  CHECK_THROWS_WITH_AS(return_words(ExpansionSource(fib), parse_marker(fib.alphabet(0), ".bb"), 8),
                       doctest::Contains("syndetic"), HypothesisError);
}

TEST_CASE("align_through recovers the upper morphism") {
  const auto conj = proper_conjugate(load_directive_sequence("fibonacci"));
  REQUIRE(conj);
  const Morphism s0 = conj->level(0);
  const Morphism s1 = compose(compose(s0, s0), s0);
  const LanguageTable lx0 = level_language(*conj, 1, required_language_length(s0, 8));
  const auto r = minimal_constant(s0, lx0, 8).constant;
  REQUIRE(r);
  REQUIRE(properness(s1) >= *r);
  const Morphism nu = align_through(s0, lx0, *r, s1);
  CHECK(oracle::compose_all({s0.images(), nu.images()}) == s1.images());
  CHECK(nu.images() == compose(s0, s0).images());
}

TEST_CASE("a one-level tower on Fibonacci") {
  const Tower t = recognizable_tower(load_directive_sequence("fibonacci"), 1);
  REQUIRE(t.ok());
  CHECK(t.cuts.front() == 0);
  CHECK(t.cuts.size() == t.levels + 4);
  for (std::size_t n = 2; n <= t.levels + 1; ++n) {
    const auto nu = t.nu[n].images(), nu1 = t.nu[n + 1].images();
    CHECK(oracle::compose_all({nu, t.tau[n].images()}) == nu1);
    CHECK(oracle::compose_all({nu, t.phi[n].images()}) == t.prefix(n + 1).images());
    CHECK(oracle::compose_all({t.phi[n].images(), t.level(n + 1).images()}) ==
          oracle::compose_all({t.tau[n].images(), t.phi[n + 1].images()}));
    CHECK(properness(t.tau[n]) >= 1);
    CHECK(is_letter_onto(t.tau[n]));
  }
}
