#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "lcube/harness.hpp"

namespace lcube {

// JSON form of a RunReport. The schema is documented in the README; NaN
// summary fields (no scorable pairs) serialize as null.
inline nlohmann::json report_to_json(const RunReport& report) {
  nlohmann::json doc;
  doc["tool"] = "lcube";
  doc["version"] = report.version;
  doc["dataset"] = report.dataset;
  doc["config"] = {{"m_max", report.config.m_max},
                   {"even_only", report.config.even_only},
                   {"jobs", report.config.jobs}};
  doc["pairs"] = nlohmann::json::array();
  for (const PairReport& p : report.pairs) {
    nlohmann::json row = {{"id", p.id},
                          {"score_xy", p.result.score_xy},
                          {"score_yx", p.result.score_yx},
                          {"best_m_xy", p.result.best_m_xy},
                          {"best_m_yx", p.result.best_m_yx},
                          {"decision", direction_name(p.result.decision)},
                          {"confidence", p.result.confidence},
                          {"weight", p.weight}};
    if (p.truth) row["truth"] = direction_name(*p.truth);
    doc["pairs"].push_back(std::move(row));
  }
  doc["skipped"] = nlohmann::json::array();
  for (const SkippedPair& s : report.skipped)
    doc["skipped"].push_back({{"id", s.id}, {"reason", s.reason}});
  auto number_or_null = [](double v) {
    return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
  };
  doc["summary"] = {{"n_pairs", report.summary.n_pairs},
                    {"n_undecided", report.summary.n_undecided},
                    {"accuracy", number_or_null(report.summary.accuracy)},
                    {"audrc", number_or_null(report.summary.audrc)},
                    {"wall_seconds", report.wall_seconds}};
  return doc;
}

}  // namespace lcube
