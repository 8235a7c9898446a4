#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "syscan/semantics.hpp"

namespace syscan {

namespace {

struct Rule {
  std::regex pattern;
  std::string replacement;
};

// Literal SCAN rewrite table, applied top to bottom once per embedded sentence.
const std::vector<Rule>& rules() {
  static const std::vector<Rule> table = [] {
    const std::vector<std::pair<const char*, const char*>> literal = {
        {"^look\\b", "LOOK"},
        {"^jump\\b", "JUMP"},
        {"^run\\b", "RUN"},
        {"^walk\\b", "WALK"},
        {"^sprint\\b", "SPRINT"},
        {"^crawl\\b", "CRAWL"},
        {"^squat\\b", "SQUAT"},
        {"^lunge\\b", "LUNGE"},
        {"^([A-Z]+) around left", "LTURN $1 LTURN $1 LTURN $1 LTURN $1"},
        {"^([A-Z]+) around right", "RTURN $1 RTURN $1 RTURN $1 RTURN $1"},
        {"^([A-Z]+) opposite left", "LTURN LTURN $1"},
        {"^([A-Z]+) opposite right", "RTURN RTURN $1"},
        {"^([A-Z]+) left", "LTURN $1"},
        {"^([A-Z]+) right", "RTURN $1"},
        {"^(.+) twice$", "$1 $1"},
        {"^(.+) thrice$", "$1 $1 $1"},
    };
    std::vector<Rule> out;
    for (const auto& [pattern, replacement] : literal) {
      out.push_back({std::regex(pattern, std::regex::optimize), replacement});
    }
    return out;
  }();
  return table;
}

std::string rewrite_embedded(std::string text) {
  for (const auto& rule : rules()) {
    text = std::regex_replace(text, rule.pattern, rule.replacement,
                              std::regex_constants::format_first_only);
  }
  return text;
}

}  // namespace

std::string oracle_interpret(std::string_view surface) {
  static const std::regex conjunction("^(.+) (and|after) (.+)$", std::regex::optimize);
  const std::string text(surface);
  std::smatch m;
  if (!std::regex_match(text, m, conjunction)) return {};
  const std::string left = rewrite_embedded(m[1].str());
  const std::string right = rewrite_embedded(m[3].str());
  return m[2].str() == "and" ? left + " " + right : right + " " + left;
}

}  // namespace syscan
