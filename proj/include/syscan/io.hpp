#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "syscan/datagen.hpp"
#include "syscan/distributions.hpp"
#include "syscan/evaluation.hpp"

namespace syscan {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

/// {"look": p, "jump": p, ...} in verb declaration order.
nlohmann::ordered_json to_json(const VerbDistribution& d);
nlohmann::ordered_json to_json(const ExperimentConfig& c);
/// Throws FormatError on missing or invalid fields.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// One line: {"input", "output", "conj", "e1_verb", "e2_verb"} in that order.
std::string to_json_line(const Sample& s);
void write_jsonl(std::ostream& out, std::span<const Sample> samples);
std::string to_jsonl(std::span<const Sample> samples);

/// Throws FormatError naming the 1-based line of the first malformed record.
/// Inputs must be grammatical commands; fields must name known tokens.
std::vector<Sample> read_jsonl(std::istream& in);
std::vector<Sample> read_jsonl_file(const std::filesystem::path& path);

/// Sidecar metadata describing a generated train/test pair.
nlohmann::ordered_json metadata_json(const Dataset& train, const Dataset& test);

/// Tab-separated "index<TAB>output" lines. Lines starting with '#' are
/// comments; "# model=...", "# seed=..." and "# entropy=..." set labels.
PredictionSet read_predictions(std::istream& in);
PredictionSet read_predictions_file(const std::filesystem::path& path);
void write_predictions(std::ostream& out, const PredictionSet& pred);

/// Writes via a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace syscan
