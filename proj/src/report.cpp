#include "sadic/report.hpp"

namespace sadic::report {

json word(const Alphabet& alphabet, const Word& w) { return format_word(alphabet, w); }

json words(const Alphabet& alphabet, const std::vector<Word>& ws) {
  json out = json::array();
  for (const Word& w : ws) out.push_back(word(alphabet, w));
  return out;
}

json morphism(const Morphism& m) {
  json rules = json::array();
  for (std::size_t a = 0; a < m.source().size(); ++a)
    rules.push_back(m.source().name(static_cast<Letter>(a)) + " -> " + format_word(m.target(), m.images()[a]));
  return {{"source", m.source().names()}, {"target", m.target().names()}, {"rules", rules}};
}

json certificate(const Certificate& c) { return {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

json certificates(const std::vector<Certificate>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(certificate(c));
  return out;
}

json interpretation(const Morphism& sigma, const Interpretation& i) {
  return {{"window", format_word(sigma.target(), i.window)},
          {"offset", i.offset},
          {"letter", sigma.source().name(i.letter)},
          {"local_cuts", i.local_cuts}};
}

json make(const std::string& command, const json& inputs, const json& parameters, const json& results,
          const std::vector<Certificate>& certs) {
  return {{"schema", kSchema},      {"version", kVersion}, {"command", command},
          {"inputs", inputs},       {"parameters", parameters},
          {"results", results},     {"certificates", certificates(certs)}};
}

std::string dump(const json& report, bool pretty) { return report.dump(pretty ? 2 : -1) + "\n"; }

}  // namespace sadic::report
