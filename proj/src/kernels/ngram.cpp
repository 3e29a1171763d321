#include "entlink/kernels/ngram.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace entlink::kernels {

GramSet padded_grams(std::u32string_view s, int n) {
  if (n < 1) throw std::invalid_argument("n-gram size must be >= 1");
  const auto pad = static_cast<std::size_t>(n - 1);
  std::u32string padded(pad, kGramPad);
  padded.append(s);
  padded.append(pad, kGramPad);

  GramSet grams;
  const auto width = static_cast<std::size_t>(n);
  if (padded.size() >= width) {
    grams.reserve(padded.size() - width + 1);
    for (std::size_t i = 0; i + width <= padded.size(); ++i) grams.emplace_back(padded.substr(i, width));
  }
  std::sort(grams.begin(), grams.end());
  grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
  return grams;
}

double dice_overlap(const GramSet& a, const GramSet& b) {
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return dice_from_counts(common, a.size(), b.size());
}

std::vector<std::size_t> fuzzy_scan_serial(const GramSet& query, std::span<const GramSet> keys,
                                           double threshold) {
  std::vector<std::size_t> hits;
  for (std::size_t k = 0; k < keys.size(); ++k)
    if (dice_overlap(query, keys[k]) >= threshold) hits.push_back(k);
  return hits;
}

std::vector<std::size_t> fuzzy_scan_parallel(const GramSet& query, std::span<const GramSet> keys,
                                             double threshold) {
  const long count = static_cast<long>(keys.size());
  std::vector<std::vector<std::size_t>> per_thread(static_cast<std::size_t>(omp_get_max_threads()));

#pragma omp parallel
  {
    auto& local = per_thread[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (long k = 0; k < count; ++k)
      if (dice_overlap(query, keys[static_cast<std::size_t>(k)]) >= threshold)
        local.push_back(static_cast<std::size_t>(k));
  }

  // static schedule hands out contiguous ascending chunks in thread order
  std::vector<std::size_t> hits;
  for (const auto& local : per_thread) hits.insert(hits.end(), local.begin(), local.end());
  return hits;
}

NgramKeyIndex::NgramKeyIndex(std::span<const std::u32string> keys, int n) : n_(n) {
  key_sizes_.reserve(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const GramSet grams = padded_grams(keys[k], n);
    key_sizes_.push_back(static_cast<std::uint32_t>(grams.size()));
    for (const auto& gram : grams) {
      auto [it, inserted] = gram_ids_.try_emplace(gram, static_cast<std::uint32_t>(postings_.size()));
      if (inserted) postings_.emplace_back();
      postings_[it->second].push_back(static_cast<std::uint32_t>(k));
    }
  }
}

std::vector<std::size_t> NgramKeyIndex::search(std::u32string_view query, double threshold) const {
  std::vector<std::size_t> hits;
  if (threshold <= 0.0) {
    hits.resize(key_sizes_.size());
    for (std::size_t k = 0; k < hits.size(); ++k) hits[k] = k;
    return hits;
  }

  const GramSet grams = padded_grams(query, n_);
  const std::size_t query_size = grams.size();

  std::unordered_map<std::uint32_t, std::uint32_t> common;
  for (const auto& gram : grams) {
    const auto it = gram_ids_.find(gram);
    if (it == gram_ids_.end()) continue;
    for (std::uint32_t k : postings_[it->second]) ++common[k];
  }

  for (const auto& [k, shared] : common) {
    if (dice_from_counts(shared, query_size, key_sizes_[k]) >= threshold) hits.push_back(k);
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

}  // namespace entlink::kernels
