#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "syscan/datagen.hpp"

namespace syscan::cli {

/// Runs one invocation. `args` excludes the program name.
/// Returns 0 on success, 1 on a toolkit error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "H1.5000"
std::string entropy_dir_name(double bits);

/// <root>/<experiment>/H<value>/N<size>
std::filesystem::path cell_dir(const std::filesystem::path& root, Experiment experiment,
                               double bits, std::size_t train_size);

/// Writes train.jsonl, test.jsonl and meta.json into `dir`.
void write_cell(const std::filesystem::path& dir, const Dataset& train, const Dataset& test);

}  // namespace syscan::cli
