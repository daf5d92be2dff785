#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lcube/data.hpp"
#include "lcube/errors.hpp"
#include "lcube/mdl.hpp"
#include "lcube/metrics.hpp"
#include "lcube/version.hpp"

namespace lcube {

struct EvalConfig {
  int m_max = 10;
  bool even_only = false;
  int jobs = 1;  // worker threads; pairs are independent
};

struct PairReport {
  std::string id;
  DirectionResult result;
  std::optional<Direction> truth;
  double weight = 1.0;
};

struct RunReport {
  std::string dataset;
  std::string version = kVersion;
  EvalConfig config;
  std::vector<PairReport> pairs;      // evaluated, in input order
  std::vector<SkippedPair> skipped;
  EvalSummary summary;
  double wall_seconds = 0.0;
};

inline const char* direction_name(Direction d) {
  switch (d) {
    case Direction::XtoY: return "XtoY";
    case Direction::YtoX: return "YtoX";
    case Direction::Undecided: return "Undecided";
  }
  return "?";
}

// Scores every pair of the dataset and aggregates accuracy and AUDRC.
// Pairs are distributed over config.jobs threads; each pair is a pure
// computation and results are collected by input index, so the report is
// identical for any job count.
inline RunReport evaluate_dataset(const Dataset& dataset, const EvalConfig& config,
                                  std::vector<SkippedPair> already_skipped = {}) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.dataset = dataset.name;
  report.config = config;
  report.skipped = std::move(already_skipped);

  const std::size_t count = dataset.pairs.size();
  struct Slot {
    bool ok = false;
    DirectionResult result;
    std::string skip_reason;
  };
  std::vector<Slot> slots(count);

  const auto score_one = [&](std::size_t i) {
    const PairSample& pair = dataset.pairs[i];
    try {
      if (pair.x.size() < 8 || pair.x.size() != pair.y.size())
        throw TooFewSamplesError(static_cast<long>(pair.x.size()));
      slots[i].result = decide_direction(pair.x, pair.y, config.m_max, config.even_only);
      slots[i].ok = true;
    } catch (const std::exception& e) {
      slots[i].skip_reason = e.what();
    }
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) score_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int n_workers = std::min<int>(jobs, static_cast<int>(count));
    workers.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w)
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
          score_one(i);
      });
    for (auto& worker : workers) worker.join();
  }

  std::vector<EvalRecord> records;
  for (std::size_t i = 0; i < count; ++i) {
    const PairSample& pair = dataset.pairs[i];
    if (!slots[i].ok) {
      report.skipped.push_back({pair.id, slots[i].skip_reason});
      continue;
    }
    report.pairs.push_back({pair.id, slots[i].result, pair.truth, pair.weight});
    if (slots[i].result.decision == Direction::Undecided) ++report.summary.n_undecided;
    if (pair.truth)
      records.push_back({pair.id, slots[i].result.decision, slots[i].result.confidence,
                         *pair.truth, pair.weight});
  }

  report.summary.n_pairs = static_cast<int>(report.pairs.size());
  double weight_total = 0.0;
  for (const auto& r : records) weight_total += r.weight;
  report.summary.accuracy =
      weight_total > 0.0 ? forced_accuracy(records) : std::nan("");
  report.summary.audrc = records.empty() ? std::nan("") : audrc(records);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace lcube
