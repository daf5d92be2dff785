#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lcube/errors.hpp"
#include "lcube/mdl.hpp"

namespace lcube {

struct EvalRecord {
  std::string id;
  Direction decision = Direction::Undecided;
  double confidence = 0.0;
  Direction truth = Direction::XtoY;  // XtoY or YtoX
  double weight = 1.0;
};

struct EvalSummary {
  double accuracy = 0.0;
  double audrc = 0.0;
  int n_pairs = 0;
  int n_undecided = 0;
};

// Weighted forced-decision accuracy. Undecided never matches the truth, so
// it counts as a miss.
inline double forced_accuracy(std::span<const EvalRecord> records) {
  double hit = 0.0, total = 0.0;
  for (const auto& r : records) {
    total += r.weight;
    if (r.decision == r.truth) hit += r.weight;
  }
  if (!(total > 0.0)) throw AllZeroWeightsError();
  return hit / total;
}

// Area under the decision rate curve: average accuracy while adding pairs
// in descending order of confidence,
//   (1/Q) sum_q (1/q) sum_{i<=q} 1[decision_i == truth_i].
// Unweighted; confidence ties are broken by id so the ordering is total.
inline double audrc(std::span<const EvalRecord> records) {
  std::vector<const EvalRecord*> order(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) order[i] = &records[i];
  std::sort(order.begin(), order.end(),
            [](const EvalRecord* a, const EvalRecord* b) {
              if (a->confidence != b->confidence)
                return a->confidence > b->confidence;
              return a->id < b->id;
            });
  double area = 0.0;
  int correct = 0;
  for (std::size_t q = 0; q < order.size(); ++q) {
    if (order[q]->decision == order[q]->truth) ++correct;
    area += static_cast<double>(correct) / static_cast<double>(q + 1);
  }
  return order.empty() ? 0.0 : area / static_cast<double>(order.size());
}

}  // namespace lcube
