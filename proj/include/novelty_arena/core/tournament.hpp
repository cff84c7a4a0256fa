// Copyright 2026 The Novelty Arena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Round-robin driver shared by both game domains.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "novelty_arena/core/agent_matrix.hpp"
#include "novelty_arena/core/errors.hpp"
#include "novelty_arena/core/rng.hpp"

namespace novelty_arena {

// Converts a count of wins and ties into the pair of zero-sum scores.
// The second score is 1 - first, which makes the pair add to exactly 1.0 in
// binary floating point for every first score in [0, 1].
inline std::pair<double, double> complementary_scores(double first) {
  return {first, 1.0 - first};
}

struct MatchRecord {
  AgentId agent_a;
  AgentId agent_b;
  double score_a = 0.0;
  double score_b = 0.0;
  // Cumulative payoff (IPD) or net chips relative to the buy-in (poker).
  std::pair<double, double> raw_totals{0.0, 0.0};
  std::uint64_t seed = 0;
  std::optional<int> novelty_id;

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

// Seed for the pairing of two agents. The key is the UTF-8 string
// `<master_seed>\x1f<lesser name>\x1f<greater name>\x1f<stream tag>`, hashed
// with FNV-1a 64. Sorting the names makes the seed independent of
// registration order; the stream tag is empty unless the caller asks for
// novelty-specific streams.
inline std::uint64_t pairing_seed(std::uint64_t master_seed, const std::string& name_a,
                                  const std::string& name_b,
                                  const std::string& stream_tag = {}) {
  const auto& lo = std::min(name_a, name_b);
  const auto& hi = std::max(name_a, name_b);
  std::string key = std::to_string(master_seed);
  key += '\x1f';
  key += lo;
  key += '\x1f';
  key += hi;
  key += '\x1f';
  key += stream_tag;
  return fnv1a64(key);
}

// Runs `fn(i, j)` once for every i < j and assembles the matrix from the
// returned records. `fn` must be safe to call concurrently for distinct
// pairs; records are merged on the calling thread in pair order, so the
// result does not depend on `jobs`.
template <typename PairingFn>
AgentMatrix build_matrix_from_pairings(const std::vector<AgentId>& agents, PairingFn&& fn,
                                       unsigned jobs = 1,
                                       std::vector<MatchRecord>* records_out = nullptr) {
  if (agents.size() < 2) throw InvalidArgument("an agent matrix needs at least 2 agents");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < agents.size(); ++i)
    for (std::size_t j = i + 1; j < agents.size(); ++j) pairs.emplace_back(i, j);

  std::vector<std::optional<MatchRecord>> results(pairs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= pairs.size()) return;
      try {
        results[k] = fn(pairs[k].first, pairs[k].second);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(pairs.size());
        return;
      }
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(pairs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  AgentMatrix m(agents);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& rec = *results[k];
    m.set_pair(pairs[k].first, pairs[k].second, rec.score_a, rec.score_b);
    if (records_out) records_out->push_back(rec);
  }
  return m;
}

}  // namespace novelty_arena
