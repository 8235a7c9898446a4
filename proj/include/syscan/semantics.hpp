#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "syscan/grammar.hpp"

namespace syscan {

enum class Action : std::uint8_t {
  kLturn,
  kRturn,
  kLook,
  kJump,
  kRun,
  kWalk,
  kSprint,
  kCrawl,
  kSquat,
  kLunge,
};

using ActionSequence = std::vector<Action>;

Action action_for(Verb v);
std::string_view action_token(Action a);

/// Number of actions one execution of a direction phrase emits
/// (none 1, left/right 2, opposite 3, around 8).
std::size_t direction_cost(Direction d);

/// Expected length of interpret_embedded(e): repetitions times direction cost.
std::size_t action_length(const EmbeddedSentence& e);

ActionSequence interpret_embedded(const EmbeddedSentence& e);

/// `and` executes e1 then e2; `after` executes e2 then e1.
ActionSequence interpret(const Command& c);

/// Single-space separated uppercase tokens.
std::string render(const ActionSequence& actions);

/// Inverse of render(const ActionSequence&). Throws ParseError on unknown tokens.
ActionSequence parse_actions(std::string_view text);

/// Reference interpreter used to cross-check interpret(). Works purely on
/// surface strings by rewriting with a literal rule table; it shares no code
/// with the structured interpreter.
std::string oracle_interpret(std::string_view surface);
ActionSequence oracle_interpret(const Command& c);

}  // namespace syscan
