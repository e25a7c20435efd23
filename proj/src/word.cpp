#include "sadic/word.hpp"

#include <algorithm>
#include <cctype>

#include "sadic/error.hpp"

namespace sadic {

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

bool valid_letter_name(std::string_view name) {
  if (name.empty() || name == "->") return false;
  return std::none_of(name.begin(), name.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == ':' || c == '.';
  });
}

Alphabet::Alphabet() : data_(std::make_shared<const Data>()) {}

Alphabet::Alphabet(std::vector<std::string> names) {
  auto data = std::make_shared<Data>();
  data->names = std::move(names);
  for (std::size_t i = 0; i < data->names.size(); ++i) {
    const auto& n = data->names[i];
    if (!valid_letter_name(n)) throw ParseError("invalid letter name '" + n + "'");
    if (!data->index.emplace(n, static_cast<Letter>(i)).second)
      throw ParseError("duplicate letter '" + n + "' in alphabet");
    if (n.size() != 1) data->single_char = false;
  }
  data_ = std::move(data);
}

Alphabet Alphabet::from_chars(std::string_view letters) {
  std::vector<std::string> names;
  for (char c : letters) names.emplace_back(1, c);
  return Alphabet(std::move(names));
}

const std::string& Alphabet::name(Letter a) const {
  if (a >= data_->names.size()) throw HypothesisError("letter index " + std::to_string(a) + " outside alphabet");
  return data_->names[a];
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::index(std::string_view name) const {
  if (auto a = find(name)) return *a;
  throw HypothesisError("letter '" + std::string(name) + "' is not in the alphabet");
}

Alphabet Alphabet::with_letter(std::string name) const {
  auto names = data_->names;
  names.push_back(std::move(name));
  return Alphabet(std::move(names));
}

Alphabet Alphabet::without_letter(Letter a) const {
  auto names = data_->names;
  names.erase(names.begin() + static_cast<std::ptrdiff_t>(a));
  return Alphabet(std::move(names));
}

Alphabet Alphabet::restricted(const std::vector<Letter>& keep) const {
  std::vector<std::string> names;
  names.reserve(keep.size());
  for (Letter a : keep) names.push_back(name(a));
  return Alphabet(std::move(names));
}

bool operator==(const Alphabet& x, const Alphabet& y) {
  return x.data_ == y.data_ || x.data_->names == y.data_->names;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w;
  bool has_space = std::any_of(text.begin(), text.end(),
                               [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (has_space) {
    for (const auto& tok : split_ws(text)) w.push_back(alphabet.index(tok));
  } else {
    for (char c : text) w.push_back(alphabet.index(std::string_view(&c, 1)));
  }
  return w;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  std::string out;
  const bool sep = !alphabet.single_char();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sep && i > 0) out += ' ';
    out += alphabet.name(w[i]);
  }
  return out;
}

Word translate(const Word& w, const std::vector<Letter>& map) {
  Word out;
  out.reserve(w.size());
  for (Letter a : w) out.push_back(map.at(a));
  return out;
}

std::vector<Letter> letters_of(const Word& w) {
  std::vector<Letter> out(w.begin(), w.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t common_prefix_length(const Word& x, const Word& y) {
  std::size_t n = std::min(x.size(), y.size()), i = 0;
  while (i < n && x[i] == y[i]) ++i;
  return i;
}

std::size_t common_suffix_length(const Word& x, const Word& y) {
  std::size_t n = std::min(x.size(), y.size()), i = 0;
  while (i < n && x[x.size() - 1 - i] == y[y.size() - 1 - i]) ++i;
  return i;
}

}  // namespace sadic
