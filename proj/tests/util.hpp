#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sadic/morphism.hpp"

namespace testutil {

inline sadic::Alphabet letters(std::size_t n, char first = 'a') {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>(first + i));
  return sadic::Alphabet::from_chars(s);
}

inline oracle::Images images_of(const sadic::Morphism& m) { return m.images(); }

inline sadic::Morphism from_images(const oracle::Images& images, const sadic::Alphabet& source,
                                   const sadic::Alphabet& target) {
  return sadic::Morphism(source, target, images);
}

inline sadic::Word random_word(std::mt19937_64& rng, std::size_t alphabet, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1);
  sadic::Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<sadic::Letter>(pick(rng)));
  return w;
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline sadic::Word reversed(sadic::Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace testutil
