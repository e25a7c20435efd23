// Acceptance runner: one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "instances.hpp"
#include "oracles.hpp"
#include "sadic/coding.hpp"
#include "sadic/decompose.hpp"
#include "sadic/error.hpp"
#include "sadic/factors.hpp"
#include "sadic/language.hpp"
#include "sadic/periods.hpp"
#include "sadic/recognize.hpp"
#include "util.hpp"

using namespace sadic;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

struct CliRun {
  std::string args;
  std::string out;
  int status = 0;
};

std::vector<CliRun> g_runs;
fs::path g_work;

CliRun run_cli(const std::string& args, bool record = true) {
  const std::string cmd = std::string(SADIC_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r{args, "", -1};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  if (record) g_runs.push_back(r);
  return r;
}

// Runs the CLI and returns its report when it exits 0 with all certificates passing.
std::optional<json> cli_report(const std::string& args, Outcome& o) {
  const CliRun r = run_cli(args);
  if (r.status != 0) {
    o.fail("`sadic " + args + "` exited with " + std::to_string(r.status));
    return std::nullopt;
  }
  json j;
  try {
    j = json::parse(r.out);
  } catch (const std::exception& e) {
    o.fail("`sadic " + args + "` printed invalid JSON");
    return std::nullopt;
  }
  for (const auto& c : j.at("certificates"))
    if (!c.at("pass").get<bool>()) o.fail("`sadic " + args + "`: certificate " + c.at("name").get<std::string>());
  return j;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = g_work / name;
  std::ofstream(p) << text;
  return p.string();
}

bool recomposes(const Decomposition& d, const std::vector<Morphism>& family) {
  if (d.ps.size() != family.size()) return false;
  for (std::size_t j = 0; j < family.size(); ++j)
    for (std::size_t a = 0; a < family[j].source().size(); ++a)
      if (oracle::apply(d.ps[j].images(), d.q.images()[a]) != family[j].images()[a]) return false;
  return true;
}

oracle::Images chain_composite(const DirectiveSequence& d, std::size_t from, std::size_t to) {
  if (from == to) return Morphism::identity(d.alphabet(from)).images();
  std::vector<oracle::Images> chain;
  for (std::size_t n = from; n < to; ++n) chain.push_back(d.level(n).images());
  return oracle::compose_all(chain);
}

// ------------------------------------------------------------------ 1

Outcome periods_exhaustive() {
  Outcome o;
  std::size_t words = 0;
  for (std::size_t k : {2u, 3u})
    for (std::size_t n = 2; n <= 14; ++n) {
      Word w(n, 0);
      for (;;) {
        ++words;
        const std::size_t p = least_period(w);
        if (critical_positions(w).empty()) o.fail("no critical position in a word of length " + std::to_string(n));
        for (std::size_t pos = 1; pos < n; ++pos)
          if (local_period(w, pos) > p) o.fail("local period above the period at length " + std::to_string(n));
        std::size_t i = 0;
        while (i < n && ++w[i] == k) w[i++] = 0;
        if (i == n) break;
      }
    }
  o.detail = std::to_string(words) + " words" + (o.pass ? "" : "; " + o.detail);
  return o;
}

// ------------------------------------------------------------------ 2

Outcome decomposition_exactness() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int aligned = 0, split = 0, fact = 0;
  while (aligned < 500) {
    auto inst = instances::random_aligned(rng);
    if (!inst) continue;
    ++aligned;
    try {
      const Decomposition d = lower_rank_aligned(inst->family, inst->u, inst->v, inst->side);
      o.require(recomposes(d, inst->family.morphisms), "aligned: recomposition");
      o.require(d.q.target().size() < inst->family.morphisms.front().source().size(), "aligned: #C < #A");
      o.require(is_letter_onto(d.q), "aligned: q letter-onto");
    } catch (const std::exception& e) {
      o.fail(std::string("aligned: ") + e.what());
    }
  }
  while (split < 500) {
    auto inst = instances::random_split(rng);
    if (!inst) continue;
    ++split;
    try {
      const Decomposition d = lower_rank_split(inst->sigma, inst->u, inst->v, inst->s_len, inst->side);
      o.require(recomposes(d, {inst->sigma}), "split: recomposition");
      o.require(d.q.target().size() <= inst->sigma.source().size(), "split: #C <= #A");
      o.require(is_letter_onto(d.q), "split: q letter-onto");
    } catch (const std::exception& e) {
      o.fail(std::string("split: ") + e.what());
    }
  }
  for (; fact < 500; ++fact) {
    const auto inst = instances::random_factorize(rng);
    try {
      const Decomposition d = factorize_through(inst.phi, inst.tau, inst.u, inst.w);
      o.require(recomposes(d, {inst.tau}), "factorize: recomposition");
      o.require(d.q.target().size() <= inst.phi.source().size(), "factorize: #D <= #A");
      o.require(is_letter_onto(d.q) && properness(d.q) >= 1, "factorize: q letter-onto and proper");
    } catch (const std::exception& e) {
      o.fail(std::string("factorize: ") + e.what());
    }
  }
  if (o.pass) o.detail = "500 aligned, 500 split, 500 factorize instances";
  return o;
}

// ------------------------------------------------------------------ 3

Outcome tiny_oracle() {
  Outcome o;
  std::size_t morphisms = 0, hypotheses = 0;
  for (std::size_t nA = 2; nA <= 3; ++nA)
    for (std::size_t nB = 1; nB <= 3; ++nB) {
      // Every length vector with sum <= 8, every image.
      std::vector<std::size_t> lens(nA, 1);
      std::function<void(std::size_t, std::size_t)> by_len = [&](std::size_t a, std::size_t used) {
        if (a == nA) {
          oracle::Images img(nA);
          std::function<void(std::size_t)> fill = [&](std::size_t i) {
            if (i == nA) {
              ++morphisms;
              oracle::WitnessQuery q;
              q.images = img;
              q.min_u = used;
              q.max_u = used + 2;
              q.max_v = used + 2;
              const auto wit = oracle::find_witness(q);
              if (!wit) return;
              ++hypotheses;
              if (!oracle::has_rank_lowering(img)) {
                o.fail("brute force finds no decomposition");
                return;
              }
              const Morphism s = testutil::from_images(img, testutil::letters(nA), testutil::letters(nB, '0'));
              try {
                const Decomposition d = lower_rank_aligned({{s}}, wit->first, wit->second);
                if (!recomposes(d, {s}) || d.q.target().size() >= nA || !is_letter_onto(d.q))
                  o.fail("invalid decomposition for " + serialize_morphism(s));
              } catch (const std::exception& e) {
                o.fail(std::string(e.what()));
              }
              return;
            }
            Word w(lens[i], 0);
            for (;;) {
              img[i] = w;
              fill(i + 1);
              std::size_t j = 0;
              while (j < w.size() && ++w[j] == nB) w[j++] = 0;
              if (j == w.size()) break;
            }
          };
          fill(0);
          return;
        }
        for (std::size_t l = 1; used + l + (nA - a - 1) <= 8; ++l) {
          lens[a] = l;
          by_len(a + 1, used + l);
        }
      };
      by_len(0, 0);
    }
  o.detail = std::to_string(morphisms) + " morphisms, " + std::to_string(hypotheses) + " satisfy the hypotheses" +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

// ------------------------------------------------------------------ 4

Outcome recognizability() {
  Outcome o;
  // (a) sigma(a) = sigma(b) = x against a rich table of x-words.
  const Morphism collapse = parse_morphism("target: x\na -> x\nb -> x\n");
  std::mt19937_64 rng(4);
  const LanguageTable rich =
      table_from_words(collapse.source(), {testutil::random_word(rng, 2, 4000)}, required_language_length(collapse, 8));
  for (std::size_t r = 0; r <= 8; ++r) {
    const RecognizabilityReport rep = recognizability_check(collapse, rich, r);
    if (rep.verdict != Verdict::violated || !rep.witness) {
      o.fail("collapse not violated at r = " + std::to_string(r));
      continue;
    }
    const auto& [x, y] = *rep.witness;
    std::vector<Word> xs = rich.of_length(2 * r + 1);
    const auto syms = oracle::window_symbols(collapse.images(), {xs.begin(), xs.end()}, r);
    const auto it = syms.find(x.window);
    const bool valid = x.window == y.window && x.window.size() == 2 * r + 1 &&
                       (x.offset != y.offset || x.letter != y.letter) && it != syms.end() &&
                       it->second.count({x.offset, x.letter}) && it->second.count({y.offset, y.letter});
    o.require(valid, "invalid witness at r = " + std::to_string(r));
  }
  // (b) through the CLI, with the constant recorded.
  std::string constants;
  for (const auto& [id, rules] : std::vector<std::pair<std::string, std::string>>{
           {"fibonacci", "a -> a b\nb -> a\n"}, {"thue-morse", "a -> a b\nb -> b a\n"}}) {
    const std::string file = write_file(id + ".mor", rules);
    const auto rep = cli_report("recognizable " + file + " --lang " + id + " --cap 8", o);
    if (!rep) continue;
    const json& c = rep->at("results").at("constant");
    if (c.is_null()) {
      o.fail(id + " not recognizable for r <= 8");
      continue;
    }
    const auto& checks = rep->at("results").at("checks");
    o.require(checks.back().at("verdict") == "recognizable_at_r", id + ": last check not recognizable");
    constants += " " + id + " r=" + std::to_string(c.get<std::size_t>());
  }
  // (c) monotone verdicts on the corpus.
  for (const std::string& id : corpus_ids()) {
    const DirectiveSequence d = load_directive_sequence(id);
    const Morphism s = d.level(0);
    const LanguageTable lx = level_language(d, 1, required_language_length(s, 12));
    bool seen = false;
    for (std::size_t r = 0; r <= 12; ++r) {
      const bool ok = recognizability_check(s, lx, r).verdict == Verdict::recognizable_at_r;
      o.require(!seen || ok, id + ": verdict not monotone at r = " + std::to_string(r));
      seen = seen || ok;
    }
  }
  if (o.pass) o.detail = "collapse violated for r <= 8;" + constants + "; monotone on the corpus";
  return o;
}

// ------------------------------------------------------------------ 5

Outcome return_coding() {
  Outcome o;
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  Word w(1, 0);
  for (int i = 0; i < 8; ++i) w = oracle::apply(fib.level(0).images(), w);
  const auto expect = oracle::gaps(w, 0);
  o.require(expect == std::set<Word>{{0}, {0, 1}}, "oracle gaps differ from {a, ab}");
  const ReturnWords rw = return_words(ExpansionSource(fib), parse_marker(fib.alphabet(0), ".a"), 8);
  o.require(std::set<Word>(rw.words.begin(), rw.words.end()) == expect, "return words differ from the gaps");
  for (const char* id : {"fibonacci", "thue-morse"}) {
    const auto rep = cli_report(std::string("return-words ") + id + " --marker .a", o);
    if (rep) o.require(rep->at("certificates").size() >= 4, std::string(id) + ": missing certificates");
  }
  const std::string periodic = write_file("periodic.dseq", "a -> a a\nrepeat: stationary\n");
  try {
    CodingOptions opt;
    opt.throw_on_failure = false;
    build_return_coding(ExpansionSource(load_directive_sequence(periodic)),
                        parse_marker(Alphabet::from_chars("a"), ".a"), opt);
    o.fail("a -> aa: no error");
  } catch (const HypothesisError& e) {
    o.require(std::string(e.what()).find("separation") != std::string::npos, std::string("a -> aa: ") + e.what());
  }
  o.require(run_cli("return-words " + periodic + " --marker .a").status == 2, "a -> aa: CLI exit code");
  if (o.pass) o.detail = "W = {a, ab}; certificates pass on fibonacci and thue-morse; a -> aa separation error";
  return o;
}

// ------------------------------------------------------------------ 6

Outcome tower_identities() {
  Outcome o;
  std::string timing;
  for (const char* id : {"fibonacci", "thue-morse"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Tower t = recognizable_tower(load_directive_sequence(id), 2);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(t.ok(), std::string(id) + ": tower certificates");
    o.require(secs < 300, std::string(id) + ": over 5 minutes");
    const std::size_t m = t.levels;
    o.require(m == 2, std::string(id) + ": wrong level count");
    const DirectiveSequence& b = t.base;
    for (std::size_t n = 2; n <= m + 2; ++n) {
      const std::string at = std::string(id) + " n=" + std::to_string(n) + ": ";
      o.require(oracle::compose_all({t.nu[n].images(), t.phi[n].images()}) == chain_composite(b, 0, t.cuts[n + 1]),
                at + "sigma_[0,n+1) != nu_n phi_n");
      if (n > m + 1) continue;
      o.require(oracle::compose_all({t.nu[n].images(), t.tau[n].images()}) == t.nu[n + 1].images(),
                at + "nu_n tau_n != nu_{n+1}");
      o.require(oracle::compose_all({t.phi[n].images(), chain_composite(b, t.cuts[n + 1], t.cuts[n + 2])}) ==
                    oracle::compose_all({t.tau[n].images(), t.phi[n + 1].images()}),
                at + "phi_n sigma_{n+1} != tau_n phi_{n+1}");
      o.require(properness(t.tau[n]) >= 1 && is_letter_onto(t.tau[n]), at + "tau_n not proper and letter-onto");
    }
    std::ostringstream s;
    s.precision(2);
    s << std::fixed << " " << id << " " << secs << "s";
    timing += s.str();
    cli_report(std::string("reco-tower ") + id + " --levels 2", o);
  }
  if (o.pass) o.detail = "identities hold letterwise;" + timing;
  return o;
}

// ------------------------------------------------------------------ 7

Outcome factor_transport() {
  Outcome o;
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  const std::string code_text = "radius: 0\na -> 1\nb -> 0\n";
  const Transport t = transported_structure(fib, parse_local_code(code_text, fib.alphabet(0)), 2);
  o.require(t.ok(), "transport certificates");
  std::size_t widest = 0;
  for (const Morphism& n : t.nu) widest = std::max(widest, n.source().size());
  for (std::size_t n = 2; n < t.tower.nu.size(); ++n)
    if (!t.tower.nu[n].images().empty()) widest = std::max(widest, t.tower.nu[n].source().size());
  o.require(widest <= 2, "alphabet of size " + std::to_string(widest));
  const auto first = chain_composite(t.source, 0, t.tower.cuts[3]);
  bool lengths = !t.psi.empty() && first.size() == t.psi[0].source().size();
  for (std::size_t a = 0; lengths && a < first.size(); ++a) lengths = first[a].size() == t.psi[0].images()[a].size();
  o.require(lengths, "|sigma_0(a)| != |phi_0(a)|");
  for (std::size_t n = 0; n + 1 < t.psi.size() && n < t.nu.size(); ++n)
    o.require(is_letter_onto(t.nu[n]) && properness(t.nu[n]) >= 1, "nu_" + std::to_string(n) + " not proper");
  cli_report("factor fibonacci --code " + write_file("relabel.code", code_text), o);
  if (o.pass) o.detail = "recognizable tower, max alphabet " + std::to_string(widest) + ", first-coordinate lengths agree";
  return o;
}

// ------------------------------------------------------------------ 8

Outcome covering_symbols() {
  Outcome o;
  std::size_t worst = 0;
  for (const char* id : {"fibonacci", "thue-morse"})
    for (int n = 2; n <= 3; ++n) {
      const auto rep =
          cli_report(std::string("fibers ") + id + " --len 64 --level " + std::to_string(n) + " --samples 10", o);
      if (!rep) continue;
      const auto& profiles = rep->at("results").at("profiles");
      o.require(profiles.size() == 10, std::string(id) + ": sample count");
      for (const auto& p : profiles) {
        worst = std::max(worst, p.at("min_count").get<std::size_t>());
        o.require(p.at("word").get<std::string>().size() >= 64, std::string(id) + ": short sample");
        o.require(p.at("min_count").get<std::size_t>() <= 2, std::string(id) + ": min_count above 2");
      }
    }
  if (o.pass) o.detail = "40 profiles, largest min_count " + std::to_string(worst);
  return o;
}

// ------------------------------------------------------------------ 9

Outcome asymptotic() {
  Outcome o;
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  const LanguageTable lx = level_language(fib, 0, 9);
  for (std::size_t m = 2; m <= 8; ++m)
    for (TailSide side : {TailSide::left, TailSide::right}) {
      const auto c = asymptotic_candidates(lx, m, side);
      const auto words = oracle::substitution_language(fib.level(0).images(), m + 1);
      const auto expect = oracle::tail_pairs(words, m, side == TailSide::right);
      o.require(expect.size() == 1, "oracle count is not 1 at m = " + std::to_string(m));
      o.require(std::set<std::pair<Word, Word>>(c.pairs.begin(), c.pairs.end()) == expect,
                "candidates differ from the oracle at m = " + std::to_string(m));
    }
  for (const std::string& id : corpus_ids()) {
    const DirectiveSequence d = load_directive_sequence(id);
    const LanguageTable t = level_language(d, 0, 9);
    const std::size_t k = t.letters().size();
    for (std::size_t m = 1; m <= 8; ++m)
      for (TailSide side : {TailSide::left, TailSide::right}) {
        const auto c = asymptotic_candidates(t, m, side);
        o.require(c.pairs.size() <= 2 * c.specials * k * k, id + ": count bound at m = " + std::to_string(m));
      }
  }
  for (const char* side : {"left", "right"}) cli_report(std::string("asymptotic fibonacci --m 8 --side ") + side, o);
  if (o.pass) o.detail = "fibonacci: 1 pair per side for m = 2..8; count bound holds on the corpus";
  return o;
}

// ------------------------------------------------------------------ 10

Outcome properization() {
  Outcome o;
  const DirectiveSequence fib = load_directive_sequence("fibonacci");
  const Properized p = properize(fib);
  std::size_t min_len = SIZE_MAX;
  for (std::size_t n = 0; n < p.sequence.declared_depth(); ++n) {
    const Morphism& s = p.sequence.level(n);
    const Classification c = classify(s, 1);
    o.require(c.proper, "level " + std::to_string(n) + " not proper");
    min_len = std::min(min_len, metrics(s).min_len);
  }
  o.require(min_len >= 2, "an image shorter than 2");
  const LanguageTable l5 = level_language(p.sequence, 0, 5);
  o.require(l5.stabilized, "level-0 table not stabilized");
  const auto theirs = oracle::substitution_language(fib.level(0).images(), 5);
  for (const Word& w : l5.of_length(5)) o.require(theirs.count(w) == 1, "a length-5 word outside the language");
  cli_report("properize fibonacci", o);
  if (o.pass) o.detail = "every level proper, min image length " + std::to_string(min_len) + ", language subset";
  return o;
}

// ------------------------------------------------------------------ 11

Outcome determinism() {
  Outcome o;
  const std::vector<CliRun> first = g_runs;
  for (const CliRun& r : first) {
    const CliRun again = run_cli(r.args, false);
    o.require(again.status == r.status && again.out == r.out, "`sadic " + r.args + "` differs between runs");
  }
  o.require(!first.empty(), "no CLI runs recorded");
  if (o.pass) o.detail = std::to_string(first.size()) + " CLI runs repeated byte-identically";
  return o;
}

}  // namespace

int main() {
  g_work = fs::temp_directory_path() / "sadic_acceptance";
  fs::create_directories(g_work);
  const std::vector<std::pair<std::function<Outcome()>, double>> criteria{
      {periods_exhaustive, 60},   {decomposition_exactness, 120}, {tiny_oracle, 0}, {recognizability, 0},
      {return_coding, 0},         {tower_identities, 600},        {factor_transport, 0}, {covering_symbols, 0},
      {asymptotic, 0},            {properization, 0},             {determinism, 0}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].first();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (criteria[i].second > 0 && secs >= criteria[i].second)
      o.fail("took " + std::to_string(secs) + "s, limit " + std::to_string(criteria[i].second) + "s");
    std::ostringstream line;
    line.precision(1);
    line << std::fixed << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ") ["
         << secs << "s]";
    std::cout << line.str() << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
