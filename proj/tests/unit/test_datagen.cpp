#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "syscan/datagen.hpp"
#include "syscan/error.hpp"
#include "syscan/io.hpp"
#include "syscan/semantics.hpp"

using namespace syscan;

namespace {

ExperimentConfig vertical(double h, std::size_t n = 6000, std::uint64_t seed = 0,
                          Verb v1 = Verb::kJump) {
  ExperimentConfig c;
  c.experiment = Experiment::kVertical;
  c.entropy_target = h;
  c.train_size = n;
  c.seed = seed;
  c.restricted_verb = v1;
  return c;
}

std::set<std::string> inputs(const Dataset& d) {
  std::set<std::string> out;
  for (const auto& s : d.samples) out.insert(s.input);
  return out;
}

// Brute-force horizontal train set: filter the full command space.
std::set<std::string> horizontal_by_filter(Verb v1, std::size_t support_size) {
  const auto support = SupportSchedule::chain(v1, support_size).support;
  auto in_support = [&](Verb v) {
    return std::find(support.begin(), support.end(), v) != support.end();
  };
  std::set<std::string> out;
  for (const auto& c : enumerate_commands()) {
    const Verb sched = c.conj == Conjunction::kAnd ? c.e2.verb : c.e1.verb;
    const Verb uni = c.conj == Conjunction::kAnd ? c.e1.verb : c.e2.verb;
    if (uni != v1 && in_support(sched)) out.insert(render(c));
  }
  return out;
}

}  // namespace

TEST_CASE("largest_remainder_quotas") {
  const std::array<double, 3> w = {0.5, 0.25, 0.25};
  CHECK(largest_remainder_quotas(w, 10) == std::vector<std::size_t>{5, 3, 2});
  const std::array<double, 4> even = {1, 1, 1, 1};
  CHECK(largest_remainder_quotas(even, 6) == std::vector<std::size_t>{2, 2, 1, 1});
  const std::array<double, 2> zero = {0, 0};
  CHECK_THROWS_AS(largest_remainder_quotas(zero, 3), InvalidArgument);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 8> p{};
    double sum = 0;
    for (auto& x : p) sum += (x = u(rng));
    const std::size_t total = rng() % 10000;
    const auto q = largest_remainder_quotas(p, total);
    std::size_t got = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      got += q[i];
      CHECK(std::abs(static_cast<double>(q[i]) - total * p[i] / sum) < 1.0);
    }
    CHECK(got == total);
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(vertical(3.5).validate(), RangeError);
  CHECK_THROWS_AS(vertical(-1).validate(), RangeError);
  CHECK_THROWS_AS(vertical(1, 0).validate(), InvalidArgument);
  ExperimentConfig h = horizontal_config(3, Verb::kJump, 0);
  CHECK(h.support_size() == 3);
  h.entropy_target = 1.5;
  CHECK_THROWS_AS(h.validate(), RangeError);
  CHECK_THROWS_AS(horizontal_config(0, Verb::kJump, 0), RangeError);
}

TEST_CASE("vertical H=0 puts the restricted verb in every schedule slot") {
  const Dataset d = build_train(vertical(0.0));
  REQUIRE(d.samples.size() == 6000);
  CHECK(inputs(d).size() == 6000);
  for (const auto& s : d.samples) {
    if (s.conj == Conjunction::kAnd) {
      CHECK(s.e2_verb == Verb::kJump);
    } else {
      CHECK(s.e1_verb == Verb::kJump);
    }
  }
  CHECK(empirical_entropy(d, Slot::kE2, Conjunction::kAnd) == 0.0);
  CHECK(empirical_entropy(d, Slot::kE1, Conjunction::kAfter) == 0.0);
  CHECK(d.realized_entropy == 0.0);
}

TEST_CASE("vertical H=3 realizes a uniform schedule slot") {
  const Dataset d = build_train(vertical(3.0));
  const auto counts = verb_counts(d.samples, Slot::kE2, Conjunction::kAnd);
  for (auto c : counts) CHECK(c == 375);
  CHECK(std::abs(empirical_entropy(d, Slot::kE2, Conjunction::kAnd) - 3.0) <= 0.01);
}

TEST_CASE("quota fidelity and realized entropy on the vertical grid") {
  for (double h : default_vertical_grid()) {
    const auto config = vertical(h);
    const Dataset d = build_train(config);
    const VerbDistribution p = schedule_distribution(config);
    for (Conjunction conj : kAllConjunctions) {
      const auto counts = verb_counts(d.samples, schedule_slot(conj), conj);
      for (Verb v : kAllVerbs) {
        CHECK(std::abs(static_cast<double>(counts[index_of(v)]) - 3000 * p[v]) <= 1.0);
      }
      // Uniform slot: the seven unrestricted verbs, balanced within one sample.
      const auto uni = verb_counts(d.samples, uniform_slot(conj), conj);
      CHECK(uni[index_of(Verb::kJump)] == 0);
      std::size_t lo = 6000, hi = 0;
      for (Verb v : kAllVerbs) {
        if (v == Verb::kJump) continue;
        lo = std::min(lo, uni[index_of(v)]);
        hi = std::max(hi, uni[index_of(v)]);
      }
      CHECK(hi - lo <= 1);
    }
    CHECK(std::abs(d.realized_entropy - h) <= 0.02);
  }
}

TEST_CASE("odd budgets give the extra sample to 'and'") {
  const Dataset d = build_train(vertical(1.0, 5));
  std::size_t n_and = 0;
  for (const auto& s : d.samples) n_and += s.conj == Conjunction::kAnd;
  CHECK(n_and == 3);
  CHECK(d.samples.size() == 5);
}

TEST_CASE("capacity arithmetic") {
  CHECK(kCapacityPerVerb == 3087);
  CHECK_NOTHROW(build_train(vertical(0.0, 6000)));
  CHECK_NOTHROW(build_train(vertical(0.0, 6174)));
  try {
    build_train(vertical(0.0, 7000));
    FAIL("expected a capacity error");
  } catch (const CapacityError& e) {
    CHECK(e.requested() == 3500);
    CHECK(e.available() == 3087);
    CHECK(e.deficit() == 413);
  }
  CHECK_THROWS_AS(build_train(vertical(0.0, 6175)), CapacityError);
}

TEST_CASE("horizontal train sets are the full permitted cross product") {
  for (std::size_t i = 1; i <= 8; ++i) {
    const Dataset d = build_train(horizontal_config(i, Verb::kJump, 0));
    CHECK(d.samples.size() == 2 * 147 * 21 * i);
    CHECK(std::abs(d.realized_entropy - std::log2(static_cast<double>(i))) <= 1e-12);
  }
  const Dataset d = build_train(horizontal_config(4, Verb::kJump, 0));
  CHECK(d.samples.size() == 24696);
  CHECK(inputs(d) == horizontal_by_filter(Verb::kJump, 4));
  CHECK(inputs(build_train(horizontal_config(2, Verb::kCrawl, 5))) ==
        horizontal_by_filter(Verb::kCrawl, 2));
}

TEST_CASE("test split is exhaustive and inverted") {
  const Dataset t = build_test(vertical(1.0));
  REQUIRE(t.samples.size() == 7056);
  CHECK(inputs(t).size() == 7056);
  for (const auto& s : t.samples) {
    if (s.conj == Conjunction::kAnd) {
      CHECK(s.e1_verb == Verb::kJump);
    } else {
      CHECK(s.e2_verb == Verb::kJump);
    }
  }
  CHECK(empirical_entropy(t, Slot::kE2, Conjunction::kAnd) == 3.0);
  CHECK(to_jsonl(t.samples) == to_jsonl(build_test(vertical(2.5, 100, 99)).samples));
  CHECK(to_jsonl(t.samples) == to_jsonl(build_test(horizontal_config(3, Verb::kJump, 1)).samples));
}

TEST_CASE("train and test are disjoint and every output is correct") {
  for (Verb v1 : {Verb::kJump, Verb::kLunge}) {
    const Dataset test = build_test(vertical(0.0, 6000, 0, v1));
    const auto test_inputs = inputs(test);
    for (double h : {0.0, 1.5, 3.0}) {
      const Dataset train = build_train(vertical(h, 6000, 11, v1));
      for (const auto& s : train.samples) CHECK(test_inputs.count(s.input) == 0);
      const auto r = audit(train.samples, Split::kTrain, v1);
      CHECK(r.duplicates == 0);
      CHECK(r.output_mismatches == 0);
      CHECK(r.field_mismatches == 0);
      CHECK(r.constraint_violations == std::optional<std::size_t>(0));
    }
    const auto r = audit(test.samples, Split::kTest, v1);
    CHECK(r.constraint_violations == std::optional<std::size_t>(0));
    CHECK(r.output_mismatches == 0);
  }
}

TEST_CASE("H=0 decouples the restricted verb from a single slot") {
  const Dataset d = build_train(vertical(0.0));
  for (const auto& s : d.samples) {
    if (s.conj == Conjunction::kAnd) CHECK(s.e1_verb != Verb::kJump);
    if (s.conj == Conjunction::kAfter) CHECK(s.e2_verb != Verb::kJump);
  }
  // Both slots see the restricted verb somewhere across the two conjunctions.
  CHECK(verb_counts(d.samples, Slot::kE1, Conjunction::kAfter)[index_of(Verb::kJump)] > 0);
  CHECK(verb_counts(d.samples, Slot::kE2, Conjunction::kAnd)[index_of(Verb::kJump)] > 0);
}

TEST_CASE("generation is deterministic per seed") {
  const auto a = to_jsonl(build_train(vertical(1.5, 6000, 42)).samples);
  const auto b = to_jsonl(build_train(vertical(1.5, 6000, 42)).samples);
  const auto c = to_jsonl(build_train(vertical(1.5, 6000, 43)).samples);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("sample size suite") {
  const std::array<std::size_t, 3> sizes = {3000, 4000, 6000};
  const auto suite = build_sample_size_suite(vertical(2.0), sizes);
  REQUIRE(suite.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(suite[i].samples.size() == sizes[i]);
    CHECK(std::abs(suite[i].realized_entropy - 2.0) <= 0.02);
  }
  const std::array<std::size_t, 1> small = {3000};
  const auto h0 = build_sample_size_suite(vertical(0.0), small);
  std::size_t n_and = 0;
  for (const auto& s : h0[0].samples) {
    CHECK(slot_verb(s, schedule_slot(s.conj)) == Verb::kJump);
    n_and += s.conj == Conjunction::kAnd;
  }
  CHECK(n_and == 1500);
  const std::array<std::size_t, 1> too_big = {7000};
  CHECK_THROWS_AS(build_sample_size_suite(vertical(0.0), too_big), CapacityError);
}

TEST_CASE("empirical_entropy on an empty conjunction slice") {
  std::vector<Sample> only_and = {make_sample(parse_command("run and jump"))};
  CHECK(empirical_entropy(only_and, Slot::kE1, Conjunction::kAnd) == 0.0);
  CHECK_THROWS_AS(empirical_entropy(only_and, Slot::kE1, Conjunction::kAfter), EmptySliceError);
}

TEST_CASE("audit counts seeded faults") {
  Dataset d = build_train(vertical(1.0, 200));
  d.samples[3].output = "JUMP";
  d.samples.push_back(d.samples[0]);
  d.samples.push_back(make_sample(parse_command("jump and run")));  // v1 in the uniform slot
  const auto r = audit(d.samples, Split::kTrain, Verb::kJump);
  CHECK(r.output_mismatches == 1);
  CHECK(r.duplicates == 1);
  CHECK(r.constraint_violations == std::optional<std::size_t>(1));
  CHECK_FALSE(audit(d.samples, std::nullopt, Verb::kJump).constraint_violations.has_value());
}
