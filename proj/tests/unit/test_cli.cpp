#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "syscan/cli.hpp"
#include "syscan/error.hpp"
#include "syscan/io.hpp"
#include "syscan/semantics.hpp"

using namespace syscan;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("syscan_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

void write_oracle_predictions(const fs::path& gold, const fs::path& out, double entropy,
                              std::size_t drop = 0) {
  const auto samples = read_jsonl_file(gold);
  PredictionSet p;
  p.entropy = entropy;
  for (std::size_t i = 0; i + drop < samples.size(); ++i) {
    p.entries.push_back({i, oracle_interpret(samples[i].input)});
  }
  std::ofstream f(out);
  write_predictions(f, p);
}

}  // namespace

TEST_CASE("generate vertical") {
  TempDir tmp("gen");
  const auto r = run({"generate", "--experiment", "vertical", "--entropy", "3", "--train-size",
                      "6000", "--out", tmp.path.string()});
  REQUIRE(r.code == 0);
  CHECK(line_count(tmp.path / "train.jsonl") == 6000);
  CHECK(line_count(tmp.path / "test.jsonl") == 7056);
  CHECK(fs::exists(tmp.path / "meta.json"));
}

TEST_CASE("generate horizontal with support 1") {
  TempDir tmp("gen_h");
  REQUIRE(run({"generate", "--experiment", "horizontal", "--support", "1", "--out",
               tmp.path.string()})
              .code == 0);
  const auto train = read_jsonl_file(tmp.path / "train.jsonl");
  CHECK(train.size() == 2 * 147 * 21);
  for (const auto& s : train) CHECK(slot_verb(s, schedule_slot(s.conj)) == Verb::kJump);
}

TEST_CASE("generate range and capacity errors leave nothing behind") {
  TempDir tmp("gen_err");
  const auto out = tmp.path / "cell";
  auto r = run({"generate", "--experiment", "vertical", "--entropy", "3.5", "--out", out.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("entropy") != std::string::npos);
  CHECK_FALSE(fs::exists(out));

  r = run({"generate", "--experiment", "vertical", "--entropy", "0", "--train-size", "7000",
           "--out", out.string()});
  CHECK(r.code != 0);
  CHECK(r.err.find("deficit 413") != std::string::npos);
  CHECK_FALSE(fs::exists(out));

  CHECK(run({"generate", "--experiment", "horizontal", "--entropy", "1.5", "--out", out.string()})
            .code != 0);
  CHECK(run({"generate", "--experiment", "vertical", "--out", out.string()}).code != 0);
  CHECK(run({"generate", "--experiment", "sideways", "--out", out.string()}).code == 2);
}

TEST_CASE("inspect reports entropies and violations") {
  TempDir tmp("inspect");
  REQUIRE(run({"generate", "--experiment", "vertical", "--entropy", "0", "--out",
               tmp.path.string()})
              .code == 0);
  auto r = run({"inspect", "--data", (tmp.path / "train.jsonl").string()});
  CHECK(r.code == 0);
  // Uniform slot splits 3000 as 429 x 4 + 428 x 3, a hair under log2 7.
  CHECK(r.out.find("conj and samples 3000 entropy_e1 2.807354 entropy_e2 0.000000") !=
        std::string::npos);
  CHECK(r.out.find("constraint_violations 0") != std::string::npos);

  r = run({"inspect", "--data", (tmp.path / "test.jsonl").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("samples 7056") != std::string::npos);
  CHECK(r.out.find("constraint_violations 0") != std::string::npos);

  // Seeded fault: one corrupted output field.
  auto samples = read_jsonl_file(tmp.path / "train.jsonl");
  samples[17].output += " JUMP";
  const auto bad = tmp.path / "corrupt.jsonl";
  write_file_atomic(bad, to_jsonl(samples));
  r = run({"inspect", "--data", bad.string(), "--split", "train"});
  CHECK(r.code == 1);
  CHECK(r.out.find("output_mismatches 1") != std::string::npos);
  CHECK(r.out.find("constraint_violations 0") != std::string::npos);

  write_file_atomic(bad, to_jsonl(samples) + "{not json\n");
  r = run({"inspect", "--data", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 6001") != std::string::npos);
}

TEST_CASE("schedule prints a round-tripping distribution") {
  auto r = run({"schedule", "--entropy", "0"});
  CHECK(r.out.find("lambda 0\n") != std::string::npos);
  r = run({"schedule", "--entropy", "3"});
  CHECK(r.out.find("lambda 0.875\n") != std::string::npos);

  r = run({"schedule", "--entropy", "1.5"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string key;
  double value;
  std::array<double, kNumVerbs> p{};
  while (in >> key >> value) {
    if (auto v = verb_from_token(key)) p[index_of(*v)] = value;
  }
  CHECK(std::abs(entropy(VerbDistribution(p)) - 1.5) <= 1e-9);

  CHECK(run({"schedule", "--entropy", "4"}).code == 1);
}

TEST_CASE("evaluate oracle and faulty prediction files") {
  TempDir tmp("evaluate");
  REQUIRE(run({"generate", "--experiment", "vertical", "--entropy", "1", "--train-size", "100",
               "--out", tmp.path.string()})
              .code == 0);
  const auto gold = tmp.path / "test.jsonl";
  std::vector<std::string> args = {"evaluate", "--gold", gold.string(), "--out",
                                   (tmp.path / "report.dat").string(), "--pred"};
  for (int seed = 0; seed < 5; ++seed) {
    const auto p = tmp.path / ("pred" + std::to_string(seed) + ".tsv");
    write_oracle_predictions(gold, p, 1.0);
    args.push_back(p.string());
  }
  auto r = run(args);
  REQUIRE(r.code == 0);
  CHECK(read_file(tmp.path / "report.dat") ==
        "entropies accuracy std\n1.000000 1.000000 0.000000\n");

  const auto short_file = tmp.path / "short.tsv";
  write_oracle_predictions(gold, short_file, 1.0, 10);
  r = run({"evaluate", "--gold", gold.string(), "--pred", short_file.string(), "--out",
           (tmp.path / "short.dat").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("10 missing") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.path / "short.dat"));
}

TEST_CASE("evaluate takes the entropy label from the suite layout") {
  TempDir tmp("evaluate_layout");
  const auto cell = cli::cell_dir(tmp.path, Experiment::kVertical, 2.5, 6000);
  fs::create_directories(cell);
  const Dataset test = build_test(ExperimentConfig{});
  write_file_atomic(cell / "test.jsonl", to_jsonl(test.samples));
  {
    std::ofstream f(cell / "pred.tsv");
    for (std::size_t i = 0; i < test.samples.size(); ++i) {
      f << i << '\t' << (i % 2 ? test.samples[i].output : "JUMP") << '\n';
    }
  }
  const auto r = run({"evaluate", "--gold", (cell / "test.jsonl").string(), "--pred",
                      (cell / "pred.tsv").string(), "--out", (tmp.path / "r.dat").string()});
  REQUIRE(r.code == 0);
  CHECK(read_file(tmp.path / "r.dat") == "entropies accuracy std\n2.500000 0.500000 0.000000\n");
}

TEST_CASE("suite layouts") {
  TempDir tmp("suite");
  REQUIRE(run({"suite", "--experiment", "vertical", "--grid", "0,3", "--sizes", "3000,6000",
               "--out", tmp.path.string()})
              .code == 0);
  for (const char* h : {"H0.0000", "H3.0000"}) {
    for (const char* n : {"N3000", "N6000"}) {
      const auto cell = tmp.path / "vertical" / h / n;
      CHECK(fs::exists(cell / "train.jsonl"));
      CHECK(fs::exists(cell / "test.jsonl"));
      CHECK(fs::exists(cell / "meta.json"));
    }
  }

  CHECK(run({"suite", "--experiment", "vertical", "--grid", "0", "--sizes", "7000", "--out",
             (tmp.path / "bad").string()})
            .code == 1);
  CHECK_FALSE(fs::exists(tmp.path / "bad"));
  CHECK(run({"suite", "--experiment", "horizontal", "--grid", "1.5", "--out",
             (tmp.path / "bad").string()})
            .code == 1);
}

TEST_CASE("cell naming") {
  CHECK(cli::entropy_dir_name(0.0) == "H0.0000");
  CHECK(cli::entropy_dir_name(std::log2(3.0)) == "H1.5850");
  CHECK(cli::cell_dir("/r", Experiment::kHorizontal, 1.0, 12348) ==
        fs::path("/r/horizontal/H1.0000/N12348"));
}
