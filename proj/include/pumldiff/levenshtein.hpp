#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string_view>
#include <vector>

#include "pumldiff/text.hpp"

namespace pumldiff {

/// Unit-cost edit distance over any random-access sequences, two rows of
/// memory.
template <class Seq>
std::size_t levenshtein_sequence(const Seq& a, const Seq& b) {
  const Seq& shorter = a.size() <= b.size() ? a : b;
  const Seq& longer = a.size() <= b.size() ? b : a;
  const std::size_t n = shorter.size();
  std::vector<std::size_t> row(n + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t j = 1; j <= longer.size(); ++j) {
    std::size_t diagonal = row[0];
    row[0] = j;
    for (std::size_t i = 1; i <= n; ++i) {
      std::size_t above = row[i];
      std::size_t cost = shorter[i - 1] == longer[j - 1] ? 0 : 1;
      row[i] = std::min({row[i - 1] + 1, above + 1, diagonal + cost});
      diagonal = above;
    }
  }
  return row[n];
}

/// Edit distance over Unicode scalar values of two UTF-8 strings.
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  return levenshtein_sequence(text::decode_utf8(a), text::decode_utf8(b));
}

/// distance / max(length) in code points; 0 for two empty strings.
inline double normalized_levenshtein(std::string_view a, std::string_view b, std::size_t distance) {
  std::size_t longest = std::max(text::utf8_length(a), text::utf8_length(b));
  return longest == 0 ? 0.0 : static_cast<double>(distance) / static_cast<double>(longest);
}

}  // namespace pumldiff
