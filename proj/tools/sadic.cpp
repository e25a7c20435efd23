// Command-line front end: one JSON report per invocation.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sadic/coding.hpp"
#include "sadic/decompose.hpp"
#include "sadic/error.hpp"
#include "sadic/factors.hpp"
#include "sadic/language.hpp"
#include "sadic/morphism.hpp"
#include "sadic/periods.hpp"
#include "sadic/recognize.hpp"
#include "sadic/report.hpp"

namespace {

using namespace sadic;
using report::json;

struct Global {
  bool pretty = false;
  std::uint64_t seed = 0;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("cannot write '" + path.string() + "'");
}

Morphism load_morphism(const std::string& path) { return parse_morphism(read_text(path)); }

// Letters of a free-standing word, in order of first occurrence.
std::pair<Alphabet, Word> infer_word(const std::string& text) {
  const bool spaced = std::any_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  std::vector<std::string> toks;
  if (spaced) {
    std::istringstream in(text);
    for (std::string t; in >> t;) toks.push_back(t);
  } else {
    for (char c : text) toks.emplace_back(1, c);
  }
  std::vector<std::string> names;
  for (const auto& t : toks)
    if (std::find(names.begin(), names.end(), t) == names.end()) names.push_back(t);
  Alphabet a(names);
  return {a, parse_word(a, text)};
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int emit(const Global& g, const json& r) {
  std::cout << report::dump(r, g.pretty);
  for (const auto& c : r.at("certificates"))
    if (!c.at("pass").get<bool>()) return 2;
  return 0;
}

json dseq_json(const DirectiveSequence& d) { return serialize_directive_sequence(d); }

// ------------------------------------------------------------ words

int cmd_period(const Global& g, const std::string& text) {
  auto [a, w] = infer_word(text);
  json res = {{"word", format_word(a, w)}, {"length", w.size()}, {"least_period", least_period(w)}};
  return emit(g, report::make("period", json::array({text}), json::object(), res, {}));
}

int cmd_critical(const Global& g, const std::string& text) {
  auto [a, w] = infer_word(text);
  const std::size_t p = least_period(w);
  std::vector<std::size_t> locals;
  bool bounded = true;
  for (std::size_t i = 1; i < w.size(); ++i) {
    locals.push_back(local_period(w, i));
    bounded = bounded && locals.back() <= p;
  }
  const auto crit = critical_positions(w);
  json res = {{"word", format_word(a, w)},
              {"least_period", p},
              {"local_periods", locals},
              {"critical_positions", crit}};
  std::vector<Certificate> certs;
  if (w.size() >= 2) {
    certs.push_back({"critical position exists", !crit.empty(), std::to_string(crit.size()) + " critical cuts"});
    certs.push_back({"local periods bounded by the period", bounded, "least period " + std::to_string(p)});
  }
  return emit(g, report::make("critical", json::array({text}), json::object(), res, certs));
}

// ------------------------------------------------------------ morphisms

int cmd_compose(const Global& g, const std::vector<std::string>& files) {
  std::vector<Morphism> chain;
  for (const auto& f : files) chain.push_back(load_morphism(f));
  const Morphism m = compose_chain(chain);
  const Metrics mt = metrics(m);
  json res = {{"morphism", report::morphism(m)},
              {"text", serialize_morphism(m)},
              {"min_len", mt.min_len},
              {"max_len", mt.max_len},
              {"total_len", mt.total_len}};
  return emit(g, report::make("compose", files, json::object(), res, {}));
}

int cmd_classify(const Global& g, const std::string& file, std::size_t r) {
  const Morphism m = load_morphism(file);
  const Classification c = classify(m, r);
  const Metrics mt = metrics(m);
  json res = {{"r_proper", c.r_proper},       {"proper", c.proper},         {"letter_onto", c.letter_onto},
              {"positive", c.positive},       {"properness", properness(m)}, {"min_len", mt.min_len},
              {"max_len", mt.max_len},        {"total_len", mt.total_len}};
  return emit(g, report::make("classify", json::array({file}), {{"r", r}}, res, {}));
}

int cmd_peel(const Global& g, const std::string& file, const std::string& equal, const std::string& prefix,
             const std::string& interior, std::optional<std::size_t> at) {
  const Morphism m = load_morphism(file);
  const int modes = !equal.empty() + !prefix.empty() + !interior.empty();
  if (modes != 1) throw CLI::ValidationError("peel", "give exactly one of --equal, --prefix, --interior");
  Peel p;
  json params;
  auto pair = [&](const std::string& s) {
    auto parts = split_commas(s);
    if (parts.size() != 2) throw CLI::ValidationError("peel", "expected two letters 'a,b'");
    return std::pair{m.source().index(parts[0]), m.source().index(parts[1])};
  };
  if (!equal.empty()) {
    auto [a, b] = pair(equal);
    p = peel_equal(m, a, b);
    params = {{"equal", equal}};
  } else if (!prefix.empty()) {
    auto [a, b] = pair(prefix);
    p = peel_prefix(m, a, b);
    params = {{"prefix", prefix}};
  } else {
    if (!at) throw CLI::ValidationError("peel", "--interior needs --at");
    p = peel_interior(m, m.source().index(interior), *at);
    params = {{"interior", interior}, {"at", *at}};
  }
  json res = {{"rest", report::morphism(p.rest)}, {"elementary", report::morphism(p.elementary)}};
  std::vector<Certificate> certs{{"recomposes", compose(p.rest, p.elementary) == m, "sigma' o e = sigma letterwise"}};
  return emit(g, report::make("peel", json::array({file}), params, res, certs));
}

int cmd_lower_rank(const Global& g, const std::vector<std::string>& files, const std::string& u_text,
                   const std::string& v_text, const std::string& side_text, std::optional<std::size_t> split) {
  if (side_text != "prefix" && side_text != "suffix") throw CLI::ValidationError("--side", "prefix or suffix");
  const Side side = side_text == "prefix" ? Side::prefix : Side::suffix;
  AlignedFamily fam;
  for (const auto& f : files) fam.morphisms.push_back(load_morphism(f));
  const Alphabet& A = fam.morphisms.front().source();
  const Word u = parse_word(A, u_text), v = parse_word(A, v_text);
  Decomposition d;
  json params = {{"u", u_text}, {"v", v_text}, {"side", side_text}};
  std::vector<Certificate> certs;
  if (split) {
    if (fam.morphisms.size() != 1) throw CLI::ValidationError("--split", "takes a single morphism");
    d = lower_rank_split(fam.morphisms.front(), u, v, *split, side);
    params["split"] = *split;
    certs.push_back({"rank bound", d.q.target().size() <= A.size(),
                     "#C = " + std::to_string(d.q.target().size()) + " <= #A = " + std::to_string(A.size())});
  } else {
    d = lower_rank_aligned(fam, u, v, side);
    certs.push_back({"rank bound", d.q.target().size() < A.size(),
                     "#C = " + std::to_string(d.q.target().size()) + " < #A = " + std::to_string(A.size())});
  }
  bool recomposes = d.ps.size() == fam.morphisms.size();
  for (std::size_t j = 0; recomposes && j < d.ps.size(); ++j) recomposes = compose(d.ps[j], d.q) == fam.morphisms[j];
  certs.insert(certs.begin(), Certificate{"recomposes", recomposes, "p_j o q = sigma_j letterwise"});
  certs.push_back({"q letter-onto", is_letter_onto(d.q), ""});
  json ps = json::array();
  for (const auto& p : d.ps) ps.push_back(report::morphism(p));
  json res = {{"q", report::morphism(d.q)}, {"p", ps}};
  return emit(g, report::make("lower-rank", files, params, res, certs));
}

int cmd_factorize(const Global& g, const std::string& phi_file, const std::string& tau_file, const std::string& u_text,
                  const std::string& w_text, bool relaxed) {
  const Morphism phi = load_morphism(phi_file), tau = load_morphism(tau_file);
  const Word u = parse_word(phi.source(), u_text), w = parse_word(tau.source(), w_text);
  FactorizeOptions opt;
  opt.require_properness_bound = !relaxed;
  const Decomposition d = factorize_through(phi, tau, u, w, opt);
  const Morphism& p = d.ps.front();
  std::vector<Certificate> certs{
      {"recomposes", compose(p, d.q) == tau, "p o q = tau letterwise"},
      {"q letter-onto", is_letter_onto(d.q), ""},
      {"q proper", properness(d.q) >= 1, "properness " + std::to_string(properness(d.q))},
      {"rank bound", d.q.target().size() <= phi.source().size(),
       "#D = " + std::to_string(d.q.target().size()) + " <= #A = " + std::to_string(phi.source().size())}};
  json res = {{"q", report::morphism(d.q)}, {"p", report::morphism(p)}};
  return emit(g, report::make("factorize-through", json::array({phi_file, tau_file}),
                              {{"u", u_text}, {"w", w_text}, {"relaxed", relaxed}}, res, certs));
}

// ------------------------------------------------------------ languages

int cmd_language(const Global& g, const std::string& id, std::size_t level, std::size_t len,
                 std::optional<std::size_t> depth) {
  const DirectiveSequence d = load_directive_sequence(id);
  const std::size_t N = depth.value_or(d.declared_depth());
  const LanguageTable t = level_language(d, level, len, N);
  json by_len = json::array();
  for (std::size_t k = 1; k <= len; ++k) by_len.push_back(t.of_length(k).size());
  json res = {{"alphabet", t.alphabet.names()},
              {"words", report::words(t.alphabet, t.of_length(len))},
              {"counts", by_len},
              {"stabilized", t.stabilized},
              {"monotone", t.monotone}};
  std::vector<Certificate> certs{{"stabilized", t.stabilized, "table at depth " + std::to_string(N) +
                                                                   " equals the table at depth " + std::to_string(N - 1)}};
  return emit(g, report::make("language", json::array({id}), {{"level", level}, {"len", len}, {"depth", N}}, res, certs));
}

json report_check(const Morphism& s, const RecognizabilityReport& r) {
  json out = {{"radius", r.radius},
              {"verdict", to_string(r.verdict)},
              {"table_size", r.table_size},
              {"scanned_length", r.scanned_length}};
  if (r.witness)
    out["witness"] = json::array({report::interpretation(s, r.witness->first), report::interpretation(s, r.witness->second)});
  return out;
}

int cmd_recognizable(const Global& g, const std::string& file, const std::string& lang, std::size_t level,
                     std::optional<std::size_t> r, std::size_t cap) {
  const Morphism s = load_morphism(file);
  const DirectiveSequence d = load_directive_sequence(lang);
  if (!(d.alphabet(level) == s.source()))
    throw HypothesisError("recognizable: the language alphabet differs from the source of the morphism");
  const std::size_t L = required_language_length(s, r.value_or(cap));
  const LanguageTable lx = level_language(d, level, L);
  json params = {{"level", level}, {"language_length", L}};
  json res;
  if (r) {
    params["r"] = *r;
    res = report_check(s, recognizability_check(s, lx, *r));
  } else {
    params["cap"] = cap;
    const ConstantSearch cs = minimal_constant(s, lx, cap);
    json reports = json::array();
    for (const auto& rep : cs.reports) reports.push_back(report_check(s, rep));
    res = {{"constant", cs.constant ? json(*cs.constant) : json(nullptr)}, {"checks", reports}};
  }
  std::vector<Certificate> certs{{"language stabilized", lx.stabilized, "level " + std::to_string(level) +
                                                                          " words of length " + std::to_string(L)}};
  return emit(g, report::make("recognizable", json::array({file, lang}), params, res, certs));
}

// ------------------------------------------------------------ coding

json coding_json(const ReturnCoding& rc) {
  json words = json::array();
  for (std::size_t i = 0; i < rc.tau.source().size(); ++i)
    words.push_back({{"letter", rc.tau.source().name(static_cast<Letter>(i))},
                     {"word", format_word(rc.tau.target(), rc.tau.images()[i])}});
  return {{"return_words", words},
          {"tau", report::morphism(rc.tau)},
          {"horizon", rc.horizon},
          {"d", rc.d},
          {"rho", rc.rho},
          {"ell", rc.ell},
          {"marker_radius", rc.radius},
          {"recognizability_radius", rc.recognizability_radius},
          {"coded_words", rc.coded.words.size()},
          {"stabilized", rc.stabilized}};
}

int cmd_return_words(const Global& g, const std::string& id, const std::string& marker_text, std::size_t horizon) {
  const DirectiveSequence d = load_directive_sequence(id);
  const Marker marker = parse_marker(d.alphabet(0), marker_text);
  CodingOptions opt;
  opt.horizon = horizon;
  opt.throw_on_failure = false;
  const ReturnCoding rc = build_return_coding(ExpansionSource(d), marker, opt);
  return emit(g, report::make("return-words", json::array({id}), {{"marker", marker_text}, {"horizon", horizon}},
                              coding_json(rc), rc.certificates));
}

int cmd_reco_tower(const Global& g, const std::string& id, std::size_t m, const std::string& out_dir) {
  const DirectiveSequence d = load_directive_sequence(id);
  const Tower t = recognizable_tower(d, m);
  json levels = json::array();
  const std::size_t last = m + 2;
  for (std::size_t n = 2; n <= last; ++n) {
    json lv = {{"n", n},
               {"cut", t.cuts[n]},
               {"nu", report::morphism(t.nu[n])},
               {"phi", report::morphism(t.phi[n])},
               {"constant", t.constants[n]},
               {"return_words", t.nu[n].source().size()},
               {"d", t.codings[n].d}};
    if (n + 1 <= last) {
      lv["tau"] = report::morphism(t.tau[n]);
      lv["tau_constant"] = t.tau_constants[n] ? json(*t.tau_constants[n]) : json(nullptr);
    }
    levels.push_back(lv);
  }
  json res = {{"representation", t.representation},
              {"cuts", t.cuts},
              {"levels", levels},
              {"literal_conditions", report::certificates(t.literal_conditions)}};
  json r = report::make("reco-tower", json::array({id}), {{"levels", m}}, res, t.certificates);
  if (!out_dir.empty()) {
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + out_dir + "'");
    for (std::size_t n = 2; n <= last; ++n) {
      write_text(dir / ("nu_" + std::to_string(n) + ".mor"), serialize_morphism(t.nu[n]));
      write_text(dir / ("phi_" + std::to_string(n) + ".mor"), serialize_morphism(t.phi[n]));
      if (n + 1 <= last) write_text(dir / ("tau_" + std::to_string(n) + ".mor"), serialize_morphism(t.tau[n]));
    }
    write_text(dir / "certificates.json", report::dump(r, true));
  }
  return emit(g, r);
}

int cmd_properize(const Global& g, const std::string& id) {
  const DirectiveSequence d = load_directive_sequence(id);
  const Properized p = properize(d);
  const DirectiveSequence& s = p.sequence;
  const std::size_t top = std::min(s.declared_depth(), s.explicit_levels() + 1);
  json levels = json::array();
  bool all_proper = true, long_enough = true;
  for (std::size_t n = 0; n < top; ++n) {
    const Morphism& m = s.level(n);
    all_proper = all_proper && properness(m) >= 1;
    long_enough = long_enough && metrics(m).min_len >= 2;
    levels.push_back({{"n", n}, {"properness", properness(m)}, {"min_len", metrics(m).min_len}});
  }
  json split = json::array();
  for (std::size_t n = 0; n < p.split_words.size(); ++n)
    split.push_back(format_word(d.alphabet(p.cuts[n]), p.split_words[n]));
  json res = {{"cuts", p.cuts}, {"split_words", split}, {"levels", levels}, {"sequence", dseq_json(s)}};
  std::vector<Certificate> certs{{"every level proper", all_proper, std::to_string(top) + " levels"},
                                 {"images of length at least 2", long_enough, ""}};
  return emit(g, report::make("properize", json::array({id}), json::object(), res, certs));
}

// ------------------------------------------------------------ factors

int cmd_factor(const Global& g, const std::string& id, const std::string& code_file, std::size_t m) {
  const DirectiveSequence d = load_directive_sequence(id);
  const LocalCode code = parse_local_code(read_text(code_file), d.alphabet(0));
  const Transport t = transported_structure(d, code, m);
  json nus = json::array();
  for (const auto& x : t.nu) nus.push_back(report::morphism(x));
  json res = {{"representation", t.representation},
              {"code_morphism", report::morphism(t.block.tau)},
              {"tower_cuts", t.tower.cuts},
              {"pushed", t.pushed},
              {"alphabet_bound", t.alphabet_bound},
              {"nu", nus}};
  return emit(g, report::make("factor", json::array({id, code_file}), {{"levels", m}}, res, t.certificates));
}

int cmd_fibers(const Global& g, const std::string& id, const std::string& code_file, std::size_t len,
               std::size_t level, std::size_t samples) {
  DirectiveSequence d = load_directive_sequence(id);
  json inputs = json::array({id});
  if (!code_file.empty()) {
    const DirectiveSequence p = proper_representation(d).sequence;
    const LocalCode code = parse_local_code(read_text(code_file), p.alphabet(0));
    const std::size_t probe = required_language_length(p.level(0), code.radius) + 2;
    const BlockMorphism b = sliding_block_to_morphism(p.level(0), code, level_language(p, 1, probe));
    std::vector<Morphism> levels = p.explicit_morphisms();
    levels.front() = b.tau;
    d = DirectiveSequence(std::move(levels), p.repeat());
    inputs.push_back(code_file);
  }
  const std::size_t K = prefix_alphabet_rank(d);
  const auto profiles = sample_fiber_profiles(d, level, len, samples, g.seed);
  json out = json::array();
  std::vector<Certificate> certs;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& p = profiles[i];
    out.push_back({{"word", format_word(d.alphabet(0), p.y)},
                   {"factorizations", p.factorizations},
                   {"min_count", p.min_count},
                   {"argmin", p.argmin}});
    certs.push_back({"sample " + std::to_string(i) + " min_count <= K", p.min_count <= K,
                     "min_count " + std::to_string(p.min_count) + " at position " + std::to_string(p.argmin) +
                         ", K = " + std::to_string(K)});
  }
  json res = {{"alphabet_rank", K}, {"profiles", out}};
  return emit(g, report::make("fibers", inputs,
                              {{"len", len}, {"level", level}, {"samples", samples}, {"seed", g.seed}}, res, certs));
}

int cmd_asymptotic(const Global& g, const std::string& id, std::size_t m, const std::string& side_text) {
  if (side_text != "left" && side_text != "right") throw CLI::ValidationError("--side", "left or right");
  const DirectiveSequence d = load_directive_sequence(id);
  const LanguageTable lx = level_language(d, 0, m + 1);
  const auto c = asymptotic_candidates(lx, m, side_text == "left" ? TailSide::left : TailSide::right);
  json pairs = json::array();
  for (const auto& [x, y] : c.pairs) pairs.push_back({format_word(lx.alphabet, x), format_word(lx.alphabet, y)});
  const std::size_t A = lx.alphabet.size();
  const std::size_t bound = 2 * c.specials * A * A;
  json res = {{"candidates", pairs}, {"count", c.pairs.size()}, {"specials", c.specials}};
  std::vector<Certificate> certs{
      {"table stabilized", lx.stabilized, "words of length " + std::to_string(m + 1)},
      {"count bound", c.pairs.size() <= bound,
       std::to_string(c.pairs.size()) + " <= 2 * " + std::to_string(c.specials) + " * " + std::to_string(A) + "^2"}};
  return emit(g, report::make("asymptotic", json::array({id}), {{"m", m}, {"side", side_text}}, res, certs));
}

int cmd_corpus_list(const Global& g) {
  json ids = json::array();
  for (const auto& id : corpus_ids()) {
    const DirectiveSequence d = load_directive_sequence(id);
    ids.push_back({{"id", id}, {"alphabet", d.alphabet(0).names()}, {"levels", d.explicit_levels()}});
  }
  return emit(g, report::make("corpus list", json::array(), json::object(), {{"corpus", ids}}, {}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tools for S-adic subshifts: words, morphisms, languages, recognizability, codings and factors"};
  app.require_subcommand(1);
  Global g;
  app.add_flag("--pretty", g.pretty, "Indented output");
  app.add_option("--seed", g.seed, "Seed of every sampler")->capture_default_str();

  std::string word, file, file2, id, u_text, v_text, w_text, side = "prefix", marker, out_dir, code, equal, prefix,
                                                                  interior, lang, tail_side;
  std::vector<std::string> files;
  std::size_t r = 0, level = 0, reco_level = 1, fiber_level = 2, len = 0, factor_levels = 2, m = 0, horizon = 0, samples = 10, cap = 64;
  std::optional<std::size_t> depth, at, split, ropt;
  bool relaxed = false;

  auto* period = app.add_subcommand("period", "Least period of a word");
  period->add_option("word", word)->required();
  auto* critical = app.add_subcommand("critical", "Local periods and critical positions");
  critical->add_option("word", word)->required();
  auto* compose_cmd = app.add_subcommand("compose", "Compose morphism files, outermost first");
  compose_cmd->add_option("morphisms", files)->required();
  auto* classify_cmd = app.add_subcommand("classify", "Properness and letter-onto flags");
  classify_cmd->add_option("morphism", file)->required();
  classify_cmd->add_option("--r", r, "Radius of properness")->capture_default_str();
  auto* peel = app.add_subcommand("peel", "Peel an elementary morphism");
  peel->add_option("morphism", file)->required();
  peel->add_option("--equal", equal, "a,b with equal images");
  peel->add_option("--prefix", prefix, "a,b with sigma(a) a strict prefix of sigma(b)");
  peel->add_option("--interior", interior, "Letter whose image is split");
  peel->add_option("--at", at, "Split position");
  auto* lower = app.add_subcommand("lower-rank", "Rank lowering of an aligned family");
  lower->add_option("morphisms", files)->required();
  lower->add_option("--u", u_text)->required();
  lower->add_option("--v", v_text)->required();
  lower->add_option("--side", side, "prefix or suffix")->capture_default_str();
  lower->add_option("--split", split, "Length of s in sigma(a) = st (single morphism)");
  auto* factorize = app.add_subcommand("factorize-through", "Factorize tau through phi");
  factorize->add_option("phi", file)->required();
  factorize->add_option("tau", file2)->required();
  factorize->add_option("--u", u_text)->required();
  factorize->add_option("--w", w_text)->required();
  factorize->add_flag("--relaxed", relaxed, "Skip the properness precondition");
  auto* language = app.add_subcommand("language", "Level language table");
  language->add_option("dseq", id)->required();
  language->add_option("--level", level)->capture_default_str();
  language->add_option("--len", len)->required();
  language->add_option("--depth", depth);
  auto* recognizable = app.add_subcommand("recognizable", "Recognizability check or constant search");
  recognizable->add_option("morphism", file)->required();
  recognizable->add_option("--lang", lang, "Directive sequence providing the language")->required();
  recognizable->add_option("--level", reco_level, "Level of the language")->capture_default_str();
  recognizable->add_option("--r", ropt, "Radius; searches the constant when omitted");
  recognizable->add_option("--cap", cap, "Search cap")->capture_default_str();
  auto* rw = app.add_subcommand("return-words", "Return words to a marker and their coding");
  rw->add_option("dseq", id)->required();
  rw->add_option("--marker", marker, "u.v[,u.v...]")->required();
  rw->add_option("--horizon", horizon, "Expansion depth; 0 picks it automatically")->capture_default_str();
  auto* tower = app.add_subcommand("reco-tower", "Recognizable tower");
  tower->add_option("dseq", id)->required();
  tower->add_option("--levels", m)->required();
  tower->add_option("--out", out_dir, "Directory for nu_n.mor, tau_n.mor, phi_n.mor, certificates.json");
  auto* prop = app.add_subcommand("properize", "Proper pair-alphabet representation");
  prop->add_option("dseq", id)->required();
  auto* factor = app.add_subcommand("factor", "Structure transported to a factor");
  factor->add_option("dseq", id)->required();
  factor->add_option("--code", code)->required();
  factor->add_option("--levels", factor_levels)->capture_default_str();
  auto* fibers = app.add_subcommand("fibers", "Covering-symbol profiles of sampled words");
  fibers->add_option("dseq", id)->required();
  fibers->add_option("--code", code, "Profile the factor given by this local code");
  fibers->add_option("--len", len)->required();
  fibers->add_option("--level", fiber_level)->capture_default_str();
  fibers->add_option("--samples", samples)->capture_default_str();
  auto* asym = app.add_subcommand("asymptotic", "Asymptotic-pair candidates");
  asym->add_option("dseq", id)->required();
  asym->add_option("--m", m)->required();
  asym->add_option("--side", tail_side)->required();
  auto* corpus = app.add_subcommand("corpus", "Built-in corpus");
  corpus->require_subcommand(1);
  auto* corpus_list = corpus->add_subcommand("list", "List corpus ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*period) return cmd_period(g, word);
    if (*critical) return cmd_critical(g, word);
    if (*compose_cmd) return cmd_compose(g, files);
    if (*classify_cmd) return cmd_classify(g, file, r);
    if (*peel) return cmd_peel(g, file, equal, prefix, interior, at);
    if (*lower) return cmd_lower_rank(g, files, u_text, v_text, side, split);
    if (*factorize) return cmd_factorize(g, file, file2, u_text, w_text, relaxed);
    if (*language) return cmd_language(g, id, level, len, depth);
    if (*recognizable) return cmd_recognizable(g, file, lang, reco_level, ropt, cap);
    if (*rw) return cmd_return_words(g, id, marker, horizon);
    if (*tower) return cmd_reco_tower(g, id, m, out_dir);
    if (*prop) return cmd_properize(g, id);
    if (*factor) return cmd_factor(g, id, code, factor_levels);
    if (*fibers) return cmd_fibers(g, id, code, len, fiber_level, samples);
    if (*asym) return cmd_asymptotic(g, id, m, tail_side);
    if (*corpus_list) return cmd_corpus_list(g);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
