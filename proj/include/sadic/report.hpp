#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sadic/coding.hpp"
#include "sadic/morphism.hpp"
#include "sadic/recognize.hpp"

namespace sadic::report {

using json = nlohmann::json;

inline constexpr const char* kSchema = "v1";
inline constexpr const char* kVersion = "sadic 1.0.0";

json word(const Alphabet& alphabet, const Word& w);
json words(const Alphabet& alphabet, const std::vector<Word>& ws);
/// {"source": [...], "target": [...], "rules": ["a -> x y", ...]}.
json morphism(const Morphism& m);
json certificate(const Certificate& c);
json certificates(const std::vector<Certificate>& cs);
/// Interpretation of a window: source letter names the symbol, target the window.
json interpretation(const Morphism& sigma, const Interpretation& i);

/// Keys are sorted by nlohmann::json's default object type.
json make(const std::string& command, const json& inputs, const json& parameters, const json& results,
          const std::vector<Certificate>& certs);

/// One line, or indented when `pretty`. Ends with a newline.
std::string dump(const json& report, bool pretty);

}  // namespace sadic::report
