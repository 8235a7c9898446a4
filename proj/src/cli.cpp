#include "syscan/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>

#include <CLI11.hpp>

#include "syscan/error.hpp"
#include "syscan/evaluation.hpp"
#include "syscan/io.hpp"

namespace syscan::cli {

namespace fs = std::filesystem;

namespace {

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string exact(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Verb parse_verb(const std::string& token) {
  auto v = verb_from_token(token);
  if (!v) throw InvalidArgument("unknown verb '" + token + "'");
  return *v;
}

struct GenerateFlags {
  std::string experiment = "vertical";
  std::optional<double> entropy;
  std::optional<std::size_t> support;
  std::string out;
  std::size_t train_size = kDefaultTrainSize;
  std::string v1 = "jump";
  std::uint64_t seed = 0;
};

struct InspectFlags {
  std::string data;
  std::string split;
  std::string v1;
};

struct ScheduleFlags {
  double entropy = 0.0;
  std::string v1 = "jump";
};

struct EvaluateFlags {
  std::string gold;
  std::vector<std::string> preds;
  std::string out;
  std::optional<double> entropy;
};

struct SuiteFlags {
  std::string experiment = "vertical";
  std::vector<double> grid;
  std::vector<std::size_t> sizes;
  std::string out;
  std::string v1 = "jump";
  std::uint64_t seed = 0;
};

ExperimentConfig config_for(const std::string& experiment, std::optional<double> entropy,
                            std::optional<std::size_t> support, std::size_t train_size,
                            Verb v1, std::uint64_t seed) {
  auto kind = experiment_from_name(experiment);
  if (!kind) throw InvalidArgument("unknown experiment '" + experiment + "'");
  if (*kind == Experiment::kHorizontal) {
    if (support) return horizontal_config(*support, v1, seed);
    if (!entropy) throw InvalidArgument("horizontal experiment needs --support or --entropy");
    ExperimentConfig c;
    c.experiment = *kind;
    c.entropy_target = *entropy;
    c.restricted_verb = v1;
    c.seed = seed;
    c.validate();
    return c;
  }
  if (support) throw InvalidArgument("--support applies to the horizontal experiment only");
  if (!entropy) throw InvalidArgument("--entropy is required");
  ExperimentConfig c;
  c.experiment = *kind;
  c.entropy_target = *entropy;
  c.restricted_verb = v1;
  c.train_size = train_size;
  c.seed = seed;
  c.validate();
  return c;
}

int do_generate(const GenerateFlags& f, std::ostream& out) {
  const ExperimentConfig config = config_for(f.experiment, f.entropy, f.support, f.train_size,
                                             parse_verb(f.v1), f.seed);
  const Dataset train = build_train(config);
  const Dataset test = build_test(config);
  write_cell(f.out, train, test);
  out << "wrote " << train.samples.size() << " train and " << test.samples.size()
      << " test samples to " << f.out << '\n';
  return 0;
}

std::optional<double> entropy_from_path(const fs::path& path) {
  static const std::regex pattern("^H([0-9]+(\\.[0-9]+)?)$");
  for (const auto& part : path.parent_path()) {
    std::smatch m;
    const std::string s = part.string();
    if (std::regex_match(s, m, pattern)) return std::stod(m[1].str());
  }
  return std::nullopt;
}

int do_inspect(const InspectFlags& f, std::ostream& out) {
  const fs::path path(f.data);
  const std::vector<Sample> samples = read_jsonl_file(path);

  std::optional<Split> split;
  std::optional<Verb> v1;
  if (!f.split.empty()) {
    split = split_from_name(f.split);
    if (!split) throw InvalidArgument("unknown split '" + f.split + "'");
  } else {
    split = split_from_name(path.stem().string());
  }
  if (!f.v1.empty()) {
    v1 = parse_verb(f.v1);
  } else {
    const fs::path meta = path.parent_path() / "meta.json";
    if (fs::exists(meta)) {
      const auto j = nlohmann::json::parse(read_file(meta), nullptr, false);
      if (!j.is_discarded() && j.contains("config")) {
        v1 = config_from_json(j["config"]).restricted_verb;
      }
    }
  }

  const AuditReport r = audit(samples, split, v1);
  out << "file " << path.string() << '\n';
  out << "samples " << r.samples << '\n';
  out << "split " << (split ? split_name(*split) : "unknown") << '\n';
  out << "restricted_verb " << (v1 ? verb_token(*v1) : "unknown") << '\n';
  for (Conjunction conj : kAllConjunctions) {
    out << "conj " << conjunction_token(conj) << " samples " << r.per_conjunction[index_of(conj)];
    for (Slot slot : {Slot::kE1, Slot::kE2}) {
      const auto& h = r.entropies[index_of(conj)][static_cast<std::size_t>(slot)];
      out << " entropy_" << slot_name(slot) << ' ' << (h ? fixed(*h, 6) : "n/a");
    }
    out << '\n';
  }
  out << "duplicates " << r.duplicates << '\n';
  out << "output_mismatches " << r.output_mismatches << '\n';
  out << "field_mismatches " << r.field_mismatches << '\n';
  out << "constraint_violations "
      << (r.constraint_violations ? std::to_string(*r.constraint_violations) : "skipped") << '\n';

  const bool clean = r.duplicates == 0 && r.output_mismatches == 0 && r.field_mismatches == 0 &&
                     r.constraint_violations.value_or(0) == 0;
  return clean ? 0 : 1;
}

int do_schedule(const ScheduleFlags& f, std::ostream& out) {
  const Verb v1 = parse_verb(f.v1);
  const double lambda = lambda_for_entropy(f.entropy);
  const VerbDistribution d = mixture_distribution({lambda, v1});
  out << "entropy " << exact(f.entropy) << '\n';
  out << "lambda " << exact(lambda) << '\n';
  for (Verb v : kAllVerbs) out << verb_token(v) << ' ' << exact(d[v]) << '\n';
  return 0;
}

int do_evaluate(const EvaluateFlags& f, std::ostream& out, std::ostream& err) {
  const std::vector<Sample> gold = read_jsonl_file(f.gold);
  std::vector<AccuracyGroup> groups;
  bool failed = false;
  for (const auto& file : f.preds) {
    try {
      const PredictionSet pred = read_predictions_file(file);
      std::optional<double> level = pred.entropy;
      if (!level) level = entropy_from_path(file);
      if (!level) level = f.entropy;
      if (!level) {
        throw InvalidArgument("no entropy label (add '# entropy=<bits>' or pass --entropy)");
      }
      const double accuracy = score(gold, pred);
      out << file << " entropy " << fixed(*level, 6) << " accuracy " << fixed(accuracy, 6)
          << '\n';
      groups.push_back({*level, {accuracy}});
    } catch (const Error& e) {
      err << file << ": " << e.what() << '\n';
      failed = true;
    }
  }
  if (failed) return 1;
  write_file_atomic(f.out, emit_table(aggregate(groups)) + "\n");
  return 0;
}

int do_suite(const SuiteFlags& f, std::ostream& out) {
  auto kind = experiment_from_name(f.experiment);
  if (!kind) throw InvalidArgument("unknown experiment '" + f.experiment + "'");
  const Verb v1 = parse_verb(f.v1);
  const bool horizontal = *kind == Experiment::kHorizontal;
  const std::vector<double> grid =
      !f.grid.empty() ? f.grid : (horizontal ? default_horizontal_grid() : default_vertical_grid());
  std::vector<std::size_t> sizes = f.sizes;
  if (sizes.empty()) sizes = {kDefaultTrainSize};
  if (horizontal && !f.sizes.empty()) {
    throw InvalidArgument("--sizes does not apply to the exhaustive horizontal experiment");
  }

  struct Cell {
    fs::path dir;
    Dataset train;
  };
  std::vector<Cell> cells;
  std::optional<Dataset> test;
  for (double h : grid) {
    ExperimentConfig base = config_for(f.experiment, h, std::nullopt, sizes.front(), v1, f.seed);
    if (!test) test = build_test(base);
    if (horizontal) {
      Dataset train = build_train(base);
      const std::size_t n = train.samples.size();
      cells.push_back({cell_dir(f.out, *kind, h, n), std::move(train)});
      continue;
    }
    for (Dataset& train : build_sample_size_suite(base, sizes)) {
      const std::size_t n = train.config.train_size;
      cells.push_back({cell_dir(f.out, *kind, h, n), std::move(train)});
    }
  }

  for (const auto& cell : cells) write_cell(cell.dir, cell.train, *test);
  out << "wrote " << cells.size() << " cells under " << (fs::path(f.out) / f.experiment).string()
      << '\n';
  return 0;
}

}  // namespace

std::string entropy_dir_name(double bits) { return "H" + fixed(bits, 4); }

fs::path cell_dir(const fs::path& root, Experiment experiment, double bits,
                  std::size_t train_size) {
  return root / std::string(experiment_name(experiment)) / entropy_dir_name(bits) /
         ("N" + std::to_string(train_size));
}

void write_cell(const fs::path& dir, const Dataset& train, const Dataset& test) {
  fs::create_directories(dir);
  write_file_atomic(dir / "train.jsonl", to_jsonl(train.samples));
  write_file_atomic(dir / "test.jsonl", to_jsonl(test.samples));
  write_file_atomic(dir / "meta.json", metadata_json(train, test).dump(2) + "\n");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy-controlled systematic generalization benchmarks on modified SCAN",
               "syscan"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolkitVersion));

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Generate one train/test pair");
  generate->add_option("--experiment", gen.experiment, "vertical | horizontal")
      ->check(CLI::IsMember({"vertical", "horizontal", "sample-size-control"}));
  generate->add_option("--entropy", gen.entropy, "Target entropy in bits");
  generate->add_option("--support", gen.support, "Support size i (horizontal)");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--train-size", gen.train_size, "Unique training samples")
      ->capture_default_str();
  generate->add_option("--v1", gen.v1, "Restricted verb")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Master seed")->capture_default_str();

  InspectFlags ins;
  auto* inspect = app.add_subcommand("inspect", "Audit a JSON-lines dataset");
  inspect->add_option("--data", ins.data, "Dataset file")->required();
  inspect->add_option("--split", ins.split, "train | test (default: file name)");
  inspect->add_option("--v1", ins.v1, "Restricted verb (default: sibling meta.json)");

  ScheduleFlags sch;
  auto* schedule = app.add_subcommand("schedule", "Print the mixing weight for an entropy");
  schedule->add_option("--entropy", sch.entropy, "Target entropy in bits")->required();
  schedule->add_option("--v1", sch.v1, "Restricted verb")->capture_default_str();

  EvaluateFlags ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score prediction files and tabulate");
  evaluate->add_option("--gold", ev.gold, "Gold JSON-lines dataset")->required();
  evaluate->add_option("--pred", ev.preds, "Prediction files")->required()->expected(1, -1);
  evaluate->add_option("--out", ev.out, "Report file")->required();
  evaluate->add_option("--entropy", ev.entropy, "Entropy label for unlabelled files");

  SuiteFlags su;
  auto* suite = app.add_subcommand("suite", "Generate every cell of an experiment grid");
  suite->add_option("--experiment", su.experiment, "vertical | horizontal")
      ->check(CLI::IsMember({"vertical", "horizontal", "sample-size-control"}));
  suite->add_option("--grid", su.grid, "Comma-separated entropy levels")->delimiter(',');
  suite->add_option("--sizes", su.sizes, "Comma-separated train sizes")->delimiter(',');
  suite->add_option("--out", su.out, "Output root")->required();
  suite->add_option("--v1", su.v1, "Restricted verb")->capture_default_str();
  suite->add_option("--seed", su.seed, "Master seed")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*generate) return do_generate(gen, out);
    if (*inspect) return do_inspect(ins, out);
    if (*schedule) return do_schedule(sch, out);
    if (*evaluate) return do_evaluate(ev, out, err);
    if (*suite) return do_suite(su, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace syscan::cli
