#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sadic/error.hpp"
#include "sadic/language.hpp"
#include "util.hpp"

using namespace sadic;

namespace {

std::set<Word> as_set(const std::vector<Word>& ws) { return {ws.begin(), ws.end()}; }

}  // namespace

TEST_CASE("corpus loads") {
  const auto ids = corpus_ids();
  for (const char* id : {"fibonacci", "thue-morse", "tribonacci", "chacon"})
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  CHECK(fib.repeat() == RepeatRule::stationary());
  CHECK(fib.declared_depth() == kDepthCap);
  CHECK(fib.level(17) == fib.level(0));
  CHECK_THROWS_AS(fib.level(kDepthCap), HypothesisError);
  CHECK_THROWS_AS(load_directive_sequence("/nonexistent/x.dseq"), IoError);
}

TEST_CASE("directive sequence text round-trip") {
  const std::string text =
      "a -> a b\nb -> a\n---\nsource: x y z\ntarget: a b\nx -> a b\ny -> b a\nz -> a\n---\n"
      "x -> x y\ny -> z\nz -> x\nrepeat: cycle 1\n";
  const DirectiveSequence d = parse_directive_sequence(text);
  CHECK(d.explicit_levels() == 3);
  CHECK(d.repeat() == RepeatRule::cycle(1));
  const DirectiveSequence back = parse_directive_sequence(serialize_directive_sequence(d));
  CHECK(serialize_directive_sequence(back) == serialize_directive_sequence(d));
  CHECK(back.explicit_morphisms() == d.explicit_morphisms());
  CHECK_THROWS_AS(parse_directive_sequence("a -> a b\nb -> a\nrepeat: sometimes\n"), ParseError);
}

TEST_CASE("composites and growth") {
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  const auto g = fib.level(0).images();
  CHECK(fib.composite(0, 3).images() == oracle::compose_all({g, g, g}));
  CHECK(fib.composite(2, 2) == Morphism::identity(fib.alphabet(2)));
  const auto lens = fib.composite_lengths(0, 10);
  const auto full = fib.composite(0, 10).images();
  for (std::size_t a = 0; a < full.size(); ++a) CHECK(lens[a] == full[a].size());
  CHECK(growth_profile(fib, 6) == std::vector<std::uint64_t>{1, 1, 2, 3, 5, 8});
  CHECK(prefix_alphabet_rank(fib) == 2);
}

TEST_CASE("level languages match the substitution oracle") {
  for (const char* id : {"fibonacci", "thue-morse", "tribonacci"}) {
    const DirectiveSequence d = load_directive_sequence(id);
    const auto s = d.level(0).images();
    for (std::size_t L : {1u, 3u, 6u, 9u}) {
      const LanguageTable t = level_language(d, 0, L);
      CHECK(t.stabilized);
      CHECK(as_set(t.of_length(L)) == oracle::substitution_language(s, L));
    }
  }
  const LanguageTable t = level_language(load_directive_sequence("fibonacci"), 0, 4);
  CHECK(t.of_length(2).size() == 3);
  CHECK(!t.contains(oracle::word_of("bb")));
}

TEST_CASE("contraction") {
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  const DirectiveSequence c = contract(fib, {0, 2, 5});
  CHECK(c.level(0) == fib.composite(0, 2));
  CHECK(c.level(1) == fib.composite(2, 5));
  const auto a = level_language(fib, 0, 6), b = level_language(c, 0, 6);
  CHECK(a.words == b.words);
}

TEST_CASE("properize gives a proper sequence with the same level-0 language") {
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  const Properized p = properize(fib);
  CHECK(all_levels_proper(p.sequence));
  CHECK(p.cuts.front() == 0);
  for (std::size_t n = 0; n < p.sequence.explicit_levels(); ++n) CHECK(metrics(p.sequence.level(n)).min_len >= 2);
  // The level-0 morphism of the output reaches the input alphabet.
  const auto mine = level_language(p.sequence, 0, 5);
  const auto theirs = oracle::substitution_language(fib.level(0).images(), 5);
  CHECK(mine.stabilized);
  for (const Word& w : mine.of_length(5)) CHECK(theirs.count(w) == 1);
}

TEST_CASE("proper conjugate and proper representation") {
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  const auto conj = proper_conjugate(fib);
  REQUIRE(conj);
  CHECK(properness(conj->level(0)) >= 1);
  CHECK(conj->alphabet(0) == fib.alphabet(0));
  CHECK(as_set(level_language(*conj, 0, 7).of_length(7)) ==
        oracle::substitution_language(fib.level(0).images(), 7));
  CHECK(!proper_conjugate(load_directive_sequence("thue-morse")));

  const ProperRepresentation tm = proper_representation(load_directive_sequence("thue-morse"));
  CHECK(all_levels_proper(tm.sequence));
  CHECK(tm.method == "properize");
  CHECK(proper_representation(fib).method == "conjugate");
}

TEST_CASE("trimming and table helpers") {
  const DirectiveSequence d = parse_directive_sequence("target: a b c\na -> a b\nb -> a\nc -> c\nrepeat: stationary\n");
  const DirectiveSequence t = trim_letter_onto(d, 6);
  CHECK(t.alphabet(0).size() <= 3);
  const LanguageTable tab = table_from_words(Alphabet::from_chars("ab"), {oracle::word_of("abba")}, 2);
  CHECK(tab.words.size() == 2 + 3);
  CHECK(tab.letters() == std::vector<Letter>{0, 1});
}
