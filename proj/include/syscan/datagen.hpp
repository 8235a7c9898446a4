#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syscan/distributions.hpp"
#include "syscan/grammar.hpp"

namespace syscan {

enum class Experiment { kVertical, kHorizontal, kSampleSizeControl };
enum class Split { kTrain, kTest };
enum class Slot { kE1, kE2 };

std::string_view experiment_name(Experiment e);
std::optional<Experiment> experiment_from_name(std::string_view name);
std::string_view split_name(Split s);
std::optional<Split> split_from_name(std::string_view name);
std::string_view slot_name(Slot s);

inline constexpr std::size_t kDefaultTrainSize = 6000;
/// Unique commands available to one schedule-slot verb under one conjunction:
/// 21 forms for that verb times 147 forms in the uniform slot.
inline constexpr std::size_t kCapacityPerVerb = kFormsPerVerb * (kNumVerbs - 1) * kFormsPerVerb;
/// 2 x 21 x 168
inline constexpr std::size_t kTestSize = 2 * kFormsPerVerb * kNumEmbedded;

struct ExperimentConfig {
  Experiment experiment = Experiment::kVertical;
  double entropy_target = kMaxEntropyBits;
  Verb restricted_verb = kDefaultRestrictedVerb;
  /// Ignored by the horizontal experiment, which is exhaustive.
  std::size_t train_size = kDefaultTrainSize;
  std::uint64_t seed = 0;

  /// Throws RangeError / InvalidArgument on an inconsistent configuration.
  void validate() const;

  /// Horizontal experiment only: the i with log2 i == entropy_target.
  std::size_t support_size() const;
};

/// Horizontal config for support size i (entropy log2 i).
ExperimentConfig horizontal_config(std::size_t support_size, Verb restricted_verb,
                                   std::uint64_t seed);

struct Sample {
  std::string input;
  std::string output;
  Conjunction conj = Conjunction::kAnd;
  Verb e1_verb = Verb::kLook;
  Verb e2_verb = Verb::kLook;

  bool operator==(const Sample&) const = default;
};

/// Builds the sample for `c`, with output = render(interpret(c)).
Sample make_sample(const Command& c);

struct Dataset {
  Split split = Split::kTrain;
  std::vector<Sample> samples;
  ExperimentConfig config;
  /// Entropy of the pooled schedule-slot verb counts over both conjunctions.
  double realized_entropy = 0.0;
};

/// The slot whose verb distribution follows the entropy schedule: e2 under
/// `and`, e1 under `after`. The other slot is the uniform slot.
Slot schedule_slot(Conjunction c);
Slot uniform_slot(Conjunction c);

/// Verb distribution the training schedule slot follows for `config`.
VerbDistribution schedule_distribution(const ExperimentConfig& config);

/// Apportions `total` over `weights` by largest remainder. Ties on the
/// remainder go to the lower index. The result sums to `total`.
std::vector<std::size_t> largest_remainder_quotas(std::span<const double> weights,
                                                  std::size_t total);

Dataset build_train(const ExperimentConfig& config);
/// Exhaustive 7 056-sample test split; depends only on the restricted verb.
Dataset build_test(const ExperimentConfig& config);

/// One train dataset per size, sharing the entropy target and seed streams.
std::vector<Dataset> build_sample_size_suite(const ExperimentConfig& config,
                                             std::span<const std::size_t> sizes);

Verb slot_verb(const Sample& s, Slot slot);

/// Verb counts in `slot` among samples with conjunction `conj`.
std::array<std::size_t, kNumVerbs> verb_counts(std::span<const Sample> samples, Slot slot,
                                               Conjunction conj);

/// Throws EmptySliceError when no sample uses `conj`.
double empirical_entropy(std::span<const Sample> samples, Slot slot, Conjunction conj);
double empirical_entropy(const Dataset& d, Slot slot, Conjunction conj);

/// Entropy of the schedule slot pooled over both conjunctions.
double schedule_slot_entropy(std::span<const Sample> samples);

struct AuditReport {
  std::size_t samples = 0;
  std::array<std::size_t, 2> per_conjunction{};
  /// [conj][slot]; empty when that conjunction has no samples.
  std::array<std::array<std::optional<double>, 2>, 2> entropies{};
  std::size_t duplicates = 0;
  /// Output does not equal interpret(input).
  std::size_t output_mismatches = 0;
  /// conj / e1_verb / e2_verb fields disagree with the input string.
  std::size_t field_mismatches = 0;
  /// Split constraint violations; empty when split or restricted verb are unknown.
  std::optional<std::size_t> constraint_violations;
};

/// Full scan of a materialized split. Inputs must be grammatical.
AuditReport audit(std::span<const Sample> samples, std::optional<Split> split,
                  std::optional<Verb> restricted_verb);

/// True when `s` breaks the train/test slot constraint for `split`.
bool violates_split_constraint(const Sample& s, Split split, Verb restricted_verb);

}  // namespace syscan
