#include "syscan/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_set>

#include "seeding.hpp"
#include "syscan/error.hpp"
#include "syscan/semantics.hpp"

namespace syscan {

namespace {

constexpr std::array<std::string_view, 3> kExperimentNames = {"vertical", "horizontal",
                                                              "sample-size-control"};

std::vector<Verb> verbs_except(Verb excluded) {
  std::vector<Verb> out;
  for (Verb v : kAllVerbs) {
    if (v != excluded) out.push_back(v);
  }
  return out;
}

std::vector<EmbeddedSentence> forms_of(Verb v) {
  const std::array<Verb, 1> one = {v};
  return enumerate_embedded(one);
}

// Places `schedule` in the schedule slot and `uniform` in the uniform slot of `conj`.
Command arrange(Conjunction conj, const EmbeddedSentence& schedule,
                const EmbeddedSentence& uniform) {
  if (conj == Conjunction::kAnd) return {uniform, conj, schedule};
  return {schedule, conj, uniform};
}

std::string entropy_label(double bits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", bits);
  return buf;
}

void shuffle_samples(std::vector<Sample>& samples, const ExperimentConfig& config) {
  std::mt19937_64 rng(detail::stream_seed(
      config.seed, {"train", "order", experiment_name(config.experiment),
                    entropy_label(config.entropy_target)}));
  detail::shuffle(samples, rng);
}

void build_vertical(const ExperimentConfig& config, std::vector<Sample>& out) {
  const VerbDistribution dist = schedule_distribution(config);
  const std::vector<Verb> uniform_verbs = verbs_except(config.restricted_verb);
  const std::string level = entropy_label(config.entropy_target);

  // Odd budgets give the extra sample to `and`.
  const std::array<std::size_t, 2> per_conj = {(config.train_size + 1) / 2,
                                               config.train_size / 2};
  std::array<std::vector<std::size_t>, 2> quotas;
  for (Conjunction conj : kAllConjunctions) {
    auto& q = quotas[index_of(conj)];
    q = largest_remainder_quotas(dist.probabilities(), per_conj[index_of(conj)]);
    for (Verb v : kAllVerbs) {
      if (q[index_of(v)] > kCapacityPerVerb) {
        const std::size_t requested = q[index_of(v)];
        throw CapacityError("verb '" + std::string(verb_token(v)) + "' under '" +
                                std::string(conjunction_token(conj)) + "' needs " +
                                std::to_string(requested) + " unique commands but only " +
                                std::to_string(kCapacityPerVerb) + " exist (deficit " +
                                std::to_string(requested - kCapacityPerVerb) + ")",
                            requested, kCapacityPerVerb);
      }
    }
  }

  // Rotating offset spreads the per-verb remainders evenly over the uniform slot.
  std::size_t offset = 0;
  for (Conjunction conj : kAllConjunctions) {
    for (Verb v : kAllVerbs) {
      const std::size_t quota = quotas[index_of(conj)][index_of(v)];
      if (quota == 0) continue;
      const std::size_t base = quota / uniform_verbs.size();
      const std::size_t extra = quota % uniform_verbs.size();
      const auto schedule_forms = forms_of(v);
      for (std::size_t k = 0; k < uniform_verbs.size(); ++k) {
        const std::size_t pos = (k + uniform_verbs.size() - offset) % uniform_verbs.size();
        const std::size_t take = base + (pos < extra ? 1 : 0);
        if (take == 0) continue;
        const Verb u = uniform_verbs[k];

        std::vector<Command> pool;
        pool.reserve(kFormsPerVerb * kFormsPerVerb);
        for (const auto& s : schedule_forms) {
          for (const auto& f : forms_of(u)) pool.push_back(arrange(conj, s, f));
        }
        std::mt19937_64 rng(detail::stream_seed(
            config.seed, {"train", conjunction_token(conj), verb_token(v), verb_token(u),
                          level}));
        detail::shuffle(pool, rng);
        for (std::size_t i = 0; i < take; ++i) out.push_back(make_sample(pool[i]));
      }
      offset = (offset + extra) % uniform_verbs.size();
    }
  }
}

void build_horizontal(const ExperimentConfig& config, std::vector<Sample>& out) {
  const auto support = SupportSchedule::chain(config.restricted_verb, config.support_size());
  const auto schedule_forms = enumerate_embedded(support.support);
  const auto uniform_forms = enumerate_embedded(verbs_except(config.restricted_verb));
  for (Conjunction conj : kAllConjunctions) {
    for (const auto& u : uniform_forms) {
      for (const auto& s : schedule_forms) out.push_back(make_sample(arrange(conj, s, u)));
    }
  }
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  return kExperimentNames[static_cast<std::size_t>(e)];
}

std::optional<Experiment> experiment_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kExperimentNames.size(); ++i) {
    if (kExperimentNames[i] == name) return static_cast<Experiment>(i);
  }
  return std::nullopt;
}

std::string_view split_name(Split s) { return s == Split::kTrain ? "train" : "test"; }

std::optional<Split> split_from_name(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

std::string_view slot_name(Slot s) { return s == Slot::kE1 ? "e1" : "e2"; }

void ExperimentConfig::validate() const {
  if (!(entropy_target >= 0.0 && entropy_target <= kMaxEntropyBits)) {
    throw RangeError("entropy target must be in [0, 3] bits, got " +
                     entropy_label(entropy_target));
  }
  if (experiment == Experiment::kHorizontal) {
    support_size();
  } else if (train_size < 1) {
    throw InvalidArgument("train size must be at least 1");
  }
}

std::size_t ExperimentConfig::support_size() const {
  const double i = std::round(std::exp2(entropy_target));
  if (i < 1 || i > kNumVerbs || std::abs(std::log2(i) - entropy_target) > 1e-9) {
    throw RangeError("horizontal entropy must equal log2 i for an integer i in [1, 8], got " +
                     entropy_label(entropy_target));
  }
  return static_cast<std::size_t>(i);
}

ExperimentConfig horizontal_config(std::size_t support_size, Verb restricted_verb,
                                   std::uint64_t seed) {
  if (support_size < 1 || support_size > kNumVerbs) {
    throw RangeError("support size must be in [1, 8], got " + std::to_string(support_size));
  }
  ExperimentConfig c;
  c.experiment = Experiment::kHorizontal;
  c.entropy_target = std::log2(static_cast<double>(support_size));
  c.restricted_verb = restricted_verb;
  c.seed = seed;
  return c;
}

Sample make_sample(const Command& c) {
  return {render(c), render(interpret(c)), c.conj, c.e1.verb, c.e2.verb};
}

Slot schedule_slot(Conjunction c) { return c == Conjunction::kAnd ? Slot::kE2 : Slot::kE1; }
Slot uniform_slot(Conjunction c) { return c == Conjunction::kAnd ? Slot::kE1 : Slot::kE2; }

VerbDistribution schedule_distribution(const ExperimentConfig& config) {
  config.validate();
  if (config.experiment == Experiment::kHorizontal) {
    return support_distribution(
        SupportSchedule::chain(config.restricted_verb, config.support_size()));
  }
  return mixture_distribution(
      {lambda_for_entropy(config.entropy_target), config.restricted_verb});
}

std::vector<std::size_t> largest_remainder_quotas(std::span<const double> weights,
                                                  std::size_t total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (weights.empty() || !(sum > 0.0)) {
    throw InvalidArgument("largest remainder: weights must have positive mass");
  }
  std::vector<std::size_t> quotas(weights.size());
  std::vector<double> remainders(weights.size());
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = static_cast<double>(total) * weights[i] / sum;
    quotas[i] = static_cast<std::size_t>(std::floor(exact));
    remainders[i] = exact - static_cast<double>(quotas[i]);
    assigned += quotas[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) {
    ++quotas[order[k % order.size()]];
  }
  return quotas;
}

Dataset build_train(const ExperimentConfig& config) {
  config.validate();
  Dataset d;
  d.split = Split::kTrain;
  d.config = config;
  if (config.experiment == Experiment::kHorizontal) {
    build_horizontal(config, d.samples);
  } else {
    build_vertical(config, d.samples);
  }
  shuffle_samples(d.samples, config);
  d.realized_entropy = schedule_slot_entropy(d.samples);
  return d;
}

Dataset build_test(const ExperimentConfig& config) {
  config.validate();
  Dataset d;
  d.split = Split::kTest;
  d.config = config;
  d.samples.reserve(kTestSize);
  const auto restricted = forms_of(config.restricted_verb);
  const auto all = enumerate_embedded();
  for (Conjunction conj : kAllConjunctions) {
    for (const auto& r : restricted) {
      for (const auto& e : all) {
        // The restricted verb occupies the slot that is uniform during training.
        d.samples.push_back(make_sample(arrange(conj, e, r)));
      }
    }
  }
  d.realized_entropy = schedule_slot_entropy(d.samples);
  return d;
}

std::vector<Dataset> build_sample_size_suite(const ExperimentConfig& config,
                                             std::span<const std::size_t> sizes) {
  std::vector<Dataset> out;
  out.reserve(sizes.size());
  for (std::size_t n : sizes) {
    ExperimentConfig c = config;
    c.train_size = n;
    out.push_back(build_train(c));
  }
  return out;
}

Verb slot_verb(const Sample& s, Slot slot) { return slot == Slot::kE1 ? s.e1_verb : s.e2_verb; }

std::array<std::size_t, kNumVerbs> verb_counts(std::span<const Sample> samples, Slot slot,
                                               Conjunction conj) {
  std::array<std::size_t, kNumVerbs> counts{};
  for (const auto& s : samples) {
    if (s.conj == conj) ++counts[index_of(slot_verb(s, slot))];
  }
  return counts;
}

double empirical_entropy(std::span<const Sample> samples, Slot slot, Conjunction conj) {
  const auto counts = verb_counts(samples, slot, conj);
  if (std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == 0) {
    throw EmptySliceError("no samples with conjunction '" +
                          std::string(conjunction_token(conj)) + "'");
  }
  return entropy_of_counts(counts);
}

double empirical_entropy(const Dataset& d, Slot slot, Conjunction conj) {
  return empirical_entropy(d.samples, slot, conj);
}

double schedule_slot_entropy(std::span<const Sample> samples) {
  std::array<std::size_t, kNumVerbs> counts{};
  for (const auto& s : samples) ++counts[index_of(slot_verb(s, schedule_slot(s.conj)))];
  return entropy_of_counts(counts);
}

bool violates_split_constraint(const Sample& s, Split split, Verb restricted_verb) {
  const bool restricted_in_uniform_slot = slot_verb(s, uniform_slot(s.conj)) == restricted_verb;
  return split == Split::kTrain ? restricted_in_uniform_slot : !restricted_in_uniform_slot;
}

AuditReport audit(std::span<const Sample> samples, std::optional<Split> split,
                  std::optional<Verb> restricted_verb) {
  AuditReport r;
  r.samples = samples.size();
  std::unordered_set<std::string_view> seen;
  seen.reserve(samples.size());
  const bool check_constraint = split && restricted_verb;
  std::size_t violations = 0;

  for (const auto& s : samples) {
    ++r.per_conjunction[index_of(s.conj)];
    if (!seen.insert(s.input).second) ++r.duplicates;
    const Command c = parse_command(s.input);
    if (render(interpret(c)) != s.output) ++r.output_mismatches;
    if (c.conj != s.conj || c.e1.verb != s.e1_verb || c.e2.verb != s.e2_verb) {
      ++r.field_mismatches;
    }
    if (check_constraint && violates_split_constraint(s, *split, *restricted_verb)) {
      ++violations;
    }
  }

  for (Conjunction conj : kAllConjunctions) {
    if (r.per_conjunction[index_of(conj)] == 0) continue;
    for (Slot slot : {Slot::kE1, Slot::kE2}) {
      r.entropies[index_of(conj)][static_cast<std::size_t>(slot)] =
          empirical_entropy(samples, slot, conj);
    }
  }
  if (check_constraint) r.constraint_violations = violations;
  return r;
}

}  // namespace syscan
