#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "syscan/datagen.hpp"
#include "syscan/distributions.hpp"
#include "syscan/error.hpp"
#include "syscan/evaluation.hpp"
#include "syscan/grammar.hpp"
#include "syscan/io.hpp"
#include "syscan/semantics.hpp"

namespace py = pybind11;
using namespace syscan;

namespace {

Verb verb_arg(const std::string& token) {
  auto v = verb_from_token(token);
  if (!v) throw InvalidArgument("unknown verb '" + token + "'");
  return *v;
}

std::vector<Verb> verbs_arg(const std::vector<std::string>& tokens) {
  std::vector<Verb> out;
  for (const auto& t : tokens) out.push_back(verb_arg(t));
  return out;
}

std::map<std::string, double> as_dict(const VerbDistribution& d) {
  std::map<std::string, double> out;
  for (Verb v : kAllVerbs) out[std::string(verb_token(v))] = d[v];
  return out;
}

VerbDistribution from_dict(const std::map<std::string, double>& probs) {
  std::array<double, kNumVerbs> p{};
  for (const auto& [verb, prob] : probs) p[index_of(verb_arg(verb))] = prob;
  return VerbDistribution(p);
}

PredictionSet prediction_set(const std::vector<std::pair<std::size_t, std::string>>& entries) {
  PredictionSet pred;
  for (const auto& [index, output] : entries) pred.entries.push_back({index, output});
  return pred;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropy-controlled systematic generalization benchmarks on modified SCAN.";
  m.attr("__version__") = std::string(kToolkitVersion);

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<EmptySliceError>(m, "EmptySliceError", base.ptr());
  py::register_exception<CoverageError>(m, "CoverageError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());

  m.def("verbs", [] {
    std::vector<std::string> out;
    for (Verb v : kAllVerbs) out.emplace_back(verb_token(v));
    return out;
  });

  m.def(
      "enumerate_embedded",
      [](std::optional<std::vector<std::string>> verb_filter) {
        const auto forms = verb_filter ? enumerate_embedded(verbs_arg(*verb_filter))
                                       : enumerate_embedded();
        std::vector<std::string> out;
        for (const auto& e : forms) out.push_back(render(e));
        return out;
      },
      py::arg("verb_filter") = py::none(),
      "Surface forms of the embedded sentences, in canonical order.");

  m.def(
      "parse_command",
      [](const std::string& surface) {
        const Command c = parse_command(surface);
        py::dict d;
        d["e1"] = render(c.e1);
        d["conj"] = std::string(conjunction_token(c.conj));
        d["e2"] = render(c.e2);
        d["e1_verb"] = std::string(verb_token(c.e1.verb));
        d["e2_verb"] = std::string(verb_token(c.e2.verb));
        return d;
      },
      py::arg("surface"));

  m.def(
      "interpret", [](const std::string& surface) { return render(interpret(parse_command(surface))); },
      py::arg("surface"), "Action sequence for a command surface string.");
  m.def("oracle_interpret", py::overload_cast<std::string_view>(&oracle_interpret),
        py::arg("surface"));

  m.def(
      "entropy", [](const std::map<std::string, double>& probs) { return entropy(from_dict(probs)); },
      py::arg("distribution"), "Shannon entropy in bits of a {verb: probability} mapping.");
  m.def(
      "mixture_distribution",
      [](double lambda, const std::string& v1) {
        return as_dict(mixture_distribution({lambda, verb_arg(v1)}));
      },
      py::arg("mixing_weight"), py::arg("restricted_verb") = "jump");
  m.def(
      "support_distribution",
      [](const std::vector<std::string>& support) {
        return as_dict(support_distribution({verbs_arg(support)}));
      },
      py::arg("support"));
  m.def("lambda_for_entropy", &lambda_for_entropy, py::arg("target_bits"));
  m.def("default_vertical_grid", &default_vertical_grid);
  m.def("default_horizontal_grid", &default_horizontal_grid);

  py::class_<Sample>(m, "Sample")
      .def_readonly("input", &Sample::input)
      .def_readonly("output", &Sample::output)
      .def_property_readonly("conj",
                             [](const Sample& s) { return std::string(conjunction_token(s.conj)); })
      .def_property_readonly("e1_verb",
                             [](const Sample& s) { return std::string(verb_token(s.e1_verb)); })
      .def_property_readonly("e2_verb",
                             [](const Sample& s) { return std::string(verb_token(s.e2_verb)); })
      .def("__repr__", [](const Sample& s) { return to_json_line(s); });

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("split",
                             [](const Dataset& d) { return std::string(split_name(d.split)); })
      .def_readonly("samples", &Dataset::samples)
      .def_readonly("realized_entropy", &Dataset::realized_entropy)
      .def("__len__", [](const Dataset& d) { return d.samples.size(); })
      .def(
          "empirical_entropy",
          [](const Dataset& d, const std::string& slot, const std::string& conj) {
            auto c = conjunction_from_token(conj);
            if (!c) throw InvalidArgument("unknown conjunction '" + conj + "'");
            if (slot != "e1" && slot != "e2") throw InvalidArgument("slot must be e1 or e2");
            return empirical_entropy(d, slot == "e1" ? Slot::kE1 : Slot::kE2, *c);
          },
          py::arg("slot"), py::arg("conj"))
      .def("to_jsonl", [](const Dataset& d) { return to_jsonl(d.samples); });

  auto make_config = [](const std::string& experiment, double entropy,
                        const std::string& restricted_verb, std::size_t train_size,
                        std::uint64_t seed) {
    auto kind = experiment_from_name(experiment);
    if (!kind) throw InvalidArgument("unknown experiment '" + experiment + "'");
    ExperimentConfig c;
    c.experiment = *kind;
    c.entropy_target = entropy;
    c.restricted_verb = verb_arg(restricted_verb);
    c.train_size = train_size;
    c.seed = seed;
    return c;
  };

  m.def(
      "build_train",
      [make_config](const std::string& experiment, double entropy, const std::string& v1,
                    std::size_t train_size, std::uint64_t seed) {
        return build_train(make_config(experiment, entropy, v1, train_size, seed));
      },
      py::arg("experiment"), py::arg("entropy"), py::arg("restricted_verb") = "jump",
      py::arg("train_size") = kDefaultTrainSize, py::arg("seed") = 0);
  m.def(
      "build_test",
      [make_config](const std::string& v1) {
        return build_test(make_config("vertical", kMaxEntropyBits, v1, 1, 0));
      },
      py::arg("restricted_verb") = "jump");
  m.def(
      "build_sample_size_suite",
      [make_config](double entropy, const std::vector<std::size_t>& sizes, const std::string& v1,
                    std::uint64_t seed) {
        return build_sample_size_suite(
            make_config("sample-size-control", entropy, v1, kDefaultTrainSize, seed), sizes);
      },
      py::arg("entropy"), py::arg("sizes"), py::arg("restricted_verb") = "jump",
      py::arg("seed") = 0);

  m.def(
      "score",
      [](const Dataset& gold, const std::vector<std::pair<std::size_t, std::string>>& entries) {
        return score(gold, prediction_set(entries));
      },
      py::arg("gold"), py::arg("predictions"),
      "Exact-match accuracy of (index, output) predictions against a dataset.");
  m.def(
      "aggregate",
      [](const std::map<double, std::vector<double>>& by_entropy) {
        std::vector<AccuracyGroup> groups;
        for (const auto& [h, acc] : by_entropy) groups.push_back({h, acc});
        std::vector<py::dict> rows;
        for (const auto& r : aggregate(groups).rows) {
          py::dict d;
          d["entropy"] = r.entropy;
          d["accuracy"] = r.accuracy;
          d["std"] = r.std;
          d["n_seeds"] = r.n_seeds;
          rows.push_back(d);
        }
        return rows;
      },
      py::arg("accuracies_by_entropy"));
  m.def(
      "emit_table",
      [](const std::map<double, std::vector<double>>& by_entropy) {
        std::vector<AccuracyGroup> groups;
        for (const auto& [h, acc] : by_entropy) groups.push_back({h, acc});
        return emit_table(aggregate(groups));
      },
      py::arg("accuracies_by_entropy"));
}
