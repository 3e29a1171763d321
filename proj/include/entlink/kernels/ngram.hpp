#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace entlink::kernels {

/// Sorted, duplicate-free character n-grams of one string.
using GramSet = std::vector<std::u32string>;

constexpr char32_t kGramPad = U'#';

// Grams of `s` padded with n-1 sentinels on both sides. Requires n >= 1.
GramSet padded_grams(std::u32string_view s, int n);

// Sørensen–Dice overlap 2|a∩b| / (|a|+|b|); 1.0 when both are empty.
double dice_overlap(const GramSet& a, const GramSet& b);

inline double dice_from_counts(std::size_t common, std::size_t a, std::size_t b) {
  if (a + b == 0) return 1.0;
  return 2.0 * static_cast<double>(common) / static_cast<double>(a + b);
}

// Exhaustive threshold scans: indices of every key whose overlap with the
// query is >= threshold, ascending. The parallel variant splits the key range
// across OpenMP threads and merges in index order.
std::vector<std::size_t> fuzzy_scan_serial(const GramSet& query, std::span<const GramSet> keys,
                                           double threshold);
std::vector<std::size_t> fuzzy_scan_parallel(const GramSet& query, std::span<const GramSet> keys,
                                             double threshold);

// Gram -> key posting lists; overlap counts accumulate per touched key.
// Returns the same key set as the exhaustive scans, visiting only keys that
// share at least one gram with the query.
class NgramKeyIndex {
 public:
  NgramKeyIndex() = default;
  NgramKeyIndex(std::span<const std::u32string> keys, int n);

  int gram_size() const noexcept { return n_; }
  std::size_t key_count() const noexcept { return key_sizes_.size(); }

  std::vector<std::size_t> search(std::u32string_view query, double threshold) const;

 private:
  int n_ = 3;
  std::unordered_map<std::u32string, std::uint32_t> gram_ids_;
  std::vector<std::vector<std::uint32_t>> postings_;
  std::vector<std::uint32_t> key_sizes_;
};

}  // namespace entlink::kernels
