#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "syscan/grammar.hpp"

namespace syscan {

inline constexpr double kMaxEntropyBits = 3.0;                  // log2 |V|
inline constexpr double kMaxLambda = 1.0 - 1.0 / kNumVerbs;     // 0.875
inline constexpr double kProbabilitySumTolerance = 1e-12;
inline constexpr double kLambdaSearchTolerance = 1e-9;
inline constexpr int kLambdaSearchMaxIterations = 200;
inline constexpr Verb kDefaultRestrictedVerb = Verb::kJump;

/// Probability vector over the eight verbs, indexed by declaration order.
class VerbDistribution {
 public:
  /// Throws InvariantError unless all entries are >= 0 and they sum to 1
  /// within kProbabilitySumTolerance.
  explicit VerbDistribution(const std::array<double, kNumVerbs>& probabilities);

  static VerbDistribution uniform();
  static VerbDistribution degenerate(Verb v);

  double operator[](Verb v) const { return probabilities_[index_of(v)]; }
  const std::array<double, kNumVerbs>& probabilities() const { return probabilities_; }
  std::size_t support_size() const;

 private:
  std::array<double, kNumVerbs> probabilities_;
};

/// Shannon entropy in bits, with 0 log 0 = 0.
double entropy(const VerbDistribution& d);

/// Entropy in bits of the empirical distribution given by `counts`.
/// Throws EmptySliceError when all counts are zero.
double entropy_of_counts(std::span<const std::size_t> counts);

/// lambda * Uniform(V \ {v1}) + (1 - lambda) * Degenerate(v1).
struct MixtureSchedule {
  double lambda = 0.0;
  Verb restricted_verb = kDefaultRestrictedVerb;
};

/// Uniform over a support that starts with the restricted verb.
struct SupportSchedule {
  std::vector<Verb> support;

  /// S_i: the restricted verb followed by the first size-1 remaining verbs in
  /// declaration order. Consecutive sizes form a chain S_1 < S_2 < ... < S_8.
  static SupportSchedule chain(Verb restricted_verb, std::size_t size);
};

/// Throws RangeError unless 0 <= lambda <= kMaxLambda.
VerbDistribution mixture_distribution(const MixtureSchedule& s);

/// Throws RangeError for an empty support, InvalidArgument for repeated verbs.
VerbDistribution support_distribution(const SupportSchedule& s);

/// Entropy of the mixture family at `lambda`; the map is strictly increasing
/// on [0, kMaxLambda].
double mixture_entropy(double lambda);

/// Inverts mixture_entropy by bisection. Throws RangeError unless
/// 0 <= target_bits <= 3.
double lambda_for_entropy(double target_bits);

/// {0, 0.5, ..., 3}
std::vector<double> default_vertical_grid();
/// {log2 i : i = 1..8}
std::vector<double> default_horizontal_grid();

}  // namespace syscan
