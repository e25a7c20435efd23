#pragma once

#include <cstddef>
#include <vector>

#include "sadic/word.hpp"

namespace sadic {

/// Smallest p >= 1 with w[i] = w[i+p] for every valid i.
std::size_t least_period(const Word& w);

/// Local period of w at the cut `pos` (number of letters left of the cut):
/// the smallest |z| such that zz overlaps the cut in one of the four
/// standard ways (u = u'z or z = u'u on the left, v = zv' or z = vv' on
/// the right, u' and v' possibly empty).
std::size_t local_period(const Word& w, std::size_t pos);

/// All cuts pos in [1, |w|-1] whose local period equals the least period.
std::vector<std::size_t> critical_positions(const Word& w);

}  // namespace sadic
