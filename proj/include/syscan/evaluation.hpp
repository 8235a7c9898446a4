#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syscan/datagen.hpp"

namespace syscan {

struct Prediction {
  std::size_t index = 0;
  std::string output;
};

struct PredictionSet {
  std::vector<Prediction> entries;
  std::string model;
  std::string seed;
  std::optional<double> entropy;
};

/// Collapses whitespace runs to single spaces and trims both ends.
std::string normalize_whitespace(std::string_view text);

/// Throws CoverageError unless every gold index appears exactly once.
void check_coverage(std::size_t gold_size, const PredictionSet& pred);

/// Exact-match accuracy after whitespace normalization.
double score(std::span<const Sample> gold, const PredictionSet& pred);
double score(const Dataset& gold, const PredictionSet& pred);

struct ReportRow {
  double entropy = 0.0;
  double accuracy = 0.0;
  /// Population standard deviation over seeds.
  double std = 0.0;
  std::size_t n_seeds = 0;
};

struct EvalReport {
  std::vector<ReportRow> rows;
};

/// Per-seed accuracies observed at one entropy level.
struct AccuracyGroup {
  double entropy = 0.0;
  std::vector<double> accuracies;
};

/// Mean and population std per level, sorted by entropy. Groups sharing an
/// entropy value are merged. Throws InvalidArgument on an empty group.
EvalReport aggregate(std::span<const AccuracyGroup> groups);

/// "entropies accuracy std" header plus one "%.6f %.6f %.6f" row per level,
/// sorted by entropy, newline separated, no trailing newline.
std::string emit_table(const EvalReport& report);

}  // namespace syscan
