#include "syscan/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "syscan/error.hpp"

namespace syscan {

VerbDistribution::VerbDistribution(const std::array<double, kNumVerbs>& probabilities)
    : probabilities_(probabilities) {
  double sum = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw InvariantError("verb distribution has a negative or NaN entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    throw InvariantError("verb distribution sums to " + std::to_string(sum) + ", not 1");
  }
}

VerbDistribution VerbDistribution::uniform() {
  std::array<double, kNumVerbs> p;
  p.fill(1.0 / kNumVerbs);
  return VerbDistribution(p);
}

VerbDistribution VerbDistribution::degenerate(Verb v) {
  std::array<double, kNumVerbs> p{};
  p[index_of(v)] = 1.0;
  return VerbDistribution(p);
}

std::size_t VerbDistribution::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(probabilities_.begin(), probabilities_.end(), [](double p) { return p > 0; }));
}

double entropy(const VerbDistribution& d) {
  double h = 0.0;
  for (double p : d.probabilities()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::clamp(h, 0.0, kMaxEntropyBits);
}

double entropy_of_counts(std::span<const std::size_t> counts) {
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (total == 0) throw EmptySliceError("entropy of an empty sample");
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

SupportSchedule SupportSchedule::chain(Verb restricted_verb, std::size_t size) {
  if (size < 1 || size > kNumVerbs) {
    throw RangeError("support size must be in [1, 8], got " + std::to_string(size));
  }
  SupportSchedule s;
  s.support.push_back(restricted_verb);
  for (Verb v : kAllVerbs) {
    if (s.support.size() == size) break;
    if (v != restricted_verb) s.support.push_back(v);
  }
  return s;
}

VerbDistribution mixture_distribution(const MixtureSchedule& s) {
  if (!(s.lambda >= 0.0 && s.lambda <= kMaxLambda)) {
    throw RangeError("mixing weight must be in [0, 0.875], got " + std::to_string(s.lambda));
  }
  std::array<double, kNumVerbs> p;
  p.fill(s.lambda / (kNumVerbs - 1));
  p[index_of(s.restricted_verb)] = 1.0 - s.lambda;
  return VerbDistribution(p);
}

VerbDistribution support_distribution(const SupportSchedule& s) {
  if (s.support.empty() || s.support.size() > kNumVerbs) {
    throw RangeError("support size must be in [1, 8], got " + std::to_string(s.support.size()));
  }
  std::array<double, kNumVerbs> p{};
  const double mass = 1.0 / static_cast<double>(s.support.size());
  for (Verb v : s.support) {
    if (p[index_of(v)] != 0.0) throw InvalidArgument("support lists a verb twice");
    p[index_of(v)] = mass;
  }
  return VerbDistribution(p);
}

double mixture_entropy(double lambda) {
  return entropy(mixture_distribution({lambda, kDefaultRestrictedVerb}));
}

double lambda_for_entropy(double target_bits) {
  if (!(target_bits >= 0.0 && target_bits <= kMaxEntropyBits)) {
    throw RangeError("target entropy must be in [0, 3] bits, got " + std::to_string(target_bits));
  }
  if (target_bits == 0.0) return 0.0;
  if (target_bits == kMaxEntropyBits) return kMaxLambda;

  double lo = 0.0;
  double hi = kMaxLambda;
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < kLambdaSearchMaxIterations; ++i) {
    mid = 0.5 * (lo + hi);
    const double h = mixture_entropy(mid);
    if (std::abs(h - target_bits) <= kLambdaSearchTolerance) break;
    if (h < target_bits) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

std::vector<double> default_vertical_grid() { return {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}; }

std::vector<double> default_horizontal_grid() {
  std::vector<double> grid;
  for (std::size_t i = 1; i <= kNumVerbs; ++i) grid.push_back(std::log2(static_cast<double>(i)));
  return grid;
}

}  // namespace syscan
