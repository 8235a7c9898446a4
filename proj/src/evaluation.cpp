#include "syscan/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "syscan/error.hpp"

namespace syscan {

namespace {

std::string join_indices(const std::vector<std::size_t>& v, std::size_t limit = 10) {
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  if (v.size() > limit) out += ",...";
  return out;
}

std::string coverage_message(const std::vector<std::size_t>& missing,
                             const std::vector<std::size_t>& duplicates,
                             const std::vector<std::size_t>& out_of_range) {
  std::string msg = "predictions do not cover the gold set:";
  if (!missing.empty()) {
    msg += " " + std::to_string(missing.size()) + " missing [" + join_indices(missing) + "]";
  }
  if (!duplicates.empty()) {
    msg += " " + std::to_string(duplicates.size()) + " duplicate [" + join_indices(duplicates) +
           "]";
  }
  if (!out_of_range.empty()) {
    msg += " " + std::to_string(out_of_range.size()) + " out of range [" +
           join_indices(out_of_range) + "]";
  }
  return msg;
}

}  // namespace

CoverageError::CoverageError(std::vector<std::size_t> missing,
                             std::vector<std::size_t> duplicates,
                             std::vector<std::size_t> out_of_range)
    : Error(coverage_message(missing, duplicates, out_of_range)),
      missing_(std::move(missing)),
      duplicates_(std::move(duplicates)),
      out_of_range_(std::move(out_of_range)) {}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  for (std::string_view token : split_tokens(text)) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

void check_coverage(std::size_t gold_size, const PredictionSet& pred) {
  std::vector<unsigned> seen(gold_size, 0);
  std::vector<std::size_t> duplicates;
  std::vector<std::size_t> out_of_range;
  for (const auto& p : pred.entries) {
    if (p.index >= gold_size) {
      out_of_range.push_back(p.index);
    } else if (seen[p.index]++ == 1) {
      duplicates.push_back(p.index);
    }
  }
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < gold_size; ++i) {
    if (seen[i] == 0) missing.push_back(i);
  }
  if (!missing.empty() || !duplicates.empty() || !out_of_range.empty()) {
    std::sort(duplicates.begin(), duplicates.end());
    std::sort(out_of_range.begin(), out_of_range.end());
    throw CoverageError(std::move(missing), std::move(duplicates), std::move(out_of_range));
  }
}

double score(std::span<const Sample> gold, const PredictionSet& pred) {
  check_coverage(gold.size(), pred);
  if (gold.empty()) return 1.0;
  std::size_t correct = 0;
  for (const auto& p : pred.entries) {
    if (normalize_whitespace(p.output) == normalize_whitespace(gold[p.index].output)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

double score(const Dataset& gold, const PredictionSet& pred) { return score(gold.samples, pred); }

EvalReport aggregate(std::span<const AccuracyGroup> groups) {
  std::map<double, std::vector<double>> by_level;
  for (const auto& g : groups) {
    if (g.accuracies.empty()) {
      throw InvalidArgument("aggregate: no accuracies at entropy " + std::to_string(g.entropy));
    }
    auto& bucket = by_level[g.entropy];
    bucket.insert(bucket.end(), g.accuracies.begin(), g.accuracies.end());
  }

  EvalReport report;
  for (const auto& [level, values] : by_level) {
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= n;
    const bool constant =
        std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
    report.rows.push_back({level, constant ? values.front() : mean,
                           constant ? 0.0 : std::sqrt(var), values.size()});
  }
  return report;
}

std::string emit_table(const EvalReport& report) {
  std::vector<ReportRow> rows = report.rows;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.entropy < b.entropy; });
  std::string out = "entropies accuracy std";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "\n%.6f %.6f %.6f", r.entropy, r.accuracy, r.std);
    out += buf;
  }
  return out;
}

}  // namespace syscan
