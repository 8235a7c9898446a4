#include "syscan/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "syscan/error.hpp"
#include "syscan/semantics.hpp"

namespace syscan {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

Verb verb_field(const nlohmann::json& j, const char* key, std::size_t line) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw FormatError(std::string("missing string field '") + key + "'", line);
  }
  auto v = verb_from_token(j[key].get<std::string>());
  if (!v) throw FormatError(std::string("unknown verb in field '") + key + "'", line);
  return *v;
}

std::string string_field(const nlohmann::json& j, const char* key, std::size_t line) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw FormatError(std::string("missing string field '") + key + "'", line);
  }
  return j[key].get<std::string>();
}

}  // namespace

nlohmann::ordered_json to_json(const VerbDistribution& d) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (Verb v : kAllVerbs) j[std::string(verb_token(v))] = d[v];
  return j;
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["experiment"] = experiment_name(c.experiment);
  j["entropy_target"] = c.entropy_target;
  j["restricted_verb"] = verb_token(c.restricted_verb);
  if (c.experiment == Experiment::kHorizontal) {
    j["support_size"] = c.support_size();
  } else {
    j["train_size"] = c.train_size;
  }
  j["seed"] = c.seed;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig c;
    auto experiment = experiment_from_name(j.at("experiment").get<std::string>());
    if (!experiment) throw FormatError("unknown experiment in config", 0);
    c.experiment = *experiment;
    c.entropy_target = j.at("entropy_target").get<double>();
    auto v = verb_from_token(j.at("restricted_verb").get<std::string>());
    if (!v) throw FormatError("unknown restricted verb in config", 0);
    c.restricted_verb = *v;
    if (j.contains("train_size")) c.train_size = j["train_size"].get<std::size_t>();
    c.seed = j.value("seed", std::uint64_t{0});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad config: ") + e.what(), 0);
  }
}

std::string to_json_line(const Sample& s) {
  nlohmann::ordered_json j;
  j["input"] = s.input;
  j["output"] = s.output;
  j["conj"] = conjunction_token(s.conj);
  j["e1_verb"] = verb_token(s.e1_verb);
  j["e2_verb"] = verb_token(s.e2_verb);
  return j.dump();
}

void write_jsonl(std::ostream& out, std::span<const Sample> samples) {
  for (const auto& s : samples) out << to_json_line(s) << '\n';
}

std::string to_jsonl(std::span<const Sample> samples) {
  std::ostringstream out;
  write_jsonl(out, samples);
  return out.str();
}

std::vector<Sample> read_jsonl(std::istream& in) {
  std::vector<Sample> out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (trim(text).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(std::string("invalid JSON: ") + e.what(), line);
    }
    if (!j.is_object()) throw FormatError("record is not a JSON object", line);

    Sample s;
    s.input = string_field(j, "input", line);
    s.output = string_field(j, "output", line);
    auto conj = conjunction_from_token(string_field(j, "conj", line));
    if (!conj) throw FormatError("unknown conjunction in field 'conj'", line);
    s.conj = *conj;
    s.e1_verb = verb_field(j, "e1_verb", line);
    s.e2_verb = verb_field(j, "e2_verb", line);
    try {
      parse_command(s.input);
    } catch (const ParseError& e) {
      throw FormatError(std::string("ungrammatical input: ") + e.what(), line);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sample> read_jsonl_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string(), 0);
  return read_jsonl(in);
}

nlohmann::ordered_json metadata_json(const Dataset& train, const Dataset& test) {
  const ExperimentConfig& c = train.config;
  nlohmann::ordered_json j;
  j["toolkit"] = "syscan";
  j["version"] = kToolkitVersion;
  j["config"] = to_json(c);

  nlohmann::ordered_json schedule;
  if (c.experiment == Experiment::kHorizontal) {
    nlohmann::ordered_json support = nlohmann::ordered_json::array();
    for (Verb v : SupportSchedule::chain(c.restricted_verb, c.support_size()).support) {
      support.push_back(verb_token(v));
    }
    schedule["family"] = "support";
    schedule["support"] = support;
  } else {
    schedule["family"] = "mixture";
    schedule["lambda"] = lambda_for_entropy(c.entropy_target);
  }
  schedule["distribution"] = to_json(schedule_distribution(c));
  j["schedule"] = schedule;

  for (const Dataset* d : {&train, &test}) {
    nlohmann::ordered_json split;
    split["samples"] = d->samples.size();
    split["realized_entropy"] = d->realized_entropy;
    nlohmann::ordered_json per_conj;
    for (Conjunction conj : kAllConjunctions) {
      const auto n = verb_counts(d->samples, Slot::kE1, conj);
      std::size_t total = 0;
      for (auto k : n) total += k;
      nlohmann::ordered_json cj;
      cj["samples"] = total;
      if (total > 0) {
        cj["entropy_e1"] = empirical_entropy(d->samples, Slot::kE1, conj);
        cj["entropy_e2"] = empirical_entropy(d->samples, Slot::kE2, conj);
      }
      per_conj[std::string(conjunction_token(conj))] = cj;
    }
    split["conjunctions"] = per_conj;
    j[std::string(split_name(d->split))] = split;
  }
  return j;
}

PredictionSet read_predictions(std::istream& in) {
  PredictionSet pred;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::string_view view = text;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty()) continue;
    if (trim(view).front() == '#') {
      std::string_view body = trim(trim(view).substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = trim(body.substr(0, eq));
      const std::string value(trim(body.substr(eq + 1)));
      if (key == "model") {
        pred.model = value;
      } else if (key == "seed") {
        pred.seed = value;
      } else if (key == "entropy") {
        try {
          std::size_t used = 0;
          pred.entropy = std::stod(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
          throw FormatError("bad entropy label '" + value + "'", line);
        }
      }
      continue;
    }
    const auto tab = view.find('\t');
    if (tab == std::string_view::npos) throw FormatError("expected index<TAB>output", line);
    const std::string index_text(trim(view.substr(0, tab)));
    std::size_t used = 0;
    unsigned long long index = 0;
    try {
      if (index_text.empty() || index_text.front() == '-') throw std::invalid_argument("");
      index = std::stoull(index_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != index_text.size()) {
      throw FormatError("bad index '" + index_text + "'", line);
    }
    pred.entries.push_back({static_cast<std::size_t>(index), std::string(view.substr(tab + 1))});
  }
  return pred;
}

PredictionSet read_predictions_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string(), 0);
  return read_predictions(in);
}

void write_predictions(std::ostream& out, const PredictionSet& pred) {
  if (!pred.model.empty()) out << "# model=" << pred.model << '\n';
  if (!pred.seed.empty()) out << "# seed=" << pred.seed << '\n';
  if (pred.entropy) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", *pred.entropy);
    out << "# entropy=" << buf << '\n';
  }
  for (const auto& p : pred.entries) out << p.index << '\t' << p.output << '\n';
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string(), 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace syscan
