#include "syscan/semantics.hpp"

#include <array>

#include "syscan/error.hpp"

namespace syscan {

namespace {

constexpr std::array<std::string_view, 10> kActionTokens = {
    "LTURN", "RTURN", "LOOK", "JUMP", "RUN", "WALK", "SPRINT", "CRAWL", "SQUAT", "LUNGE"};

}  // namespace

Action action_for(Verb v) { return static_cast<Action>(index_of(v) + 2); }

std::string_view action_token(Action a) { return kActionTokens[static_cast<std::size_t>(a)]; }

std::size_t direction_cost(Direction d) {
  switch (d) {
    case Direction::kNone:
      return 1;
    case Direction::kLeft:
    case Direction::kRight:
      return 2;
    case Direction::kOppositeLeft:
    case Direction::kOppositeRight:
      return 3;
    case Direction::kAroundLeft:
    case Direction::kAroundRight:
      return 8;
  }
  return 0;
}

std::size_t action_length(const EmbeddedSentence& e) {
  return static_cast<std::size_t>(repetition_count(e.repetition)) * direction_cost(e.direction);
}

ActionSequence interpret_embedded(const EmbeddedSentence& e) {
  const Action base = action_for(e.verb);
  ActionSequence unit;
  switch (e.direction) {
    case Direction::kNone:
      unit = {base};
      break;
    case Direction::kLeft:
      unit = {Action::kLturn, base};
      break;
    case Direction::kRight:
      unit = {Action::kRturn, base};
      break;
    case Direction::kOppositeLeft:
      unit = {Action::kLturn, Action::kLturn, base};
      break;
    case Direction::kOppositeRight:
      unit = {Action::kRturn, Action::kRturn, base};
      break;
    case Direction::kAroundLeft:
    case Direction::kAroundRight: {
      const Action turn = e.direction == Direction::kAroundLeft ? Action::kLturn : Action::kRturn;
      for (int i = 0; i < 4; ++i) {
        unit.push_back(turn);
        unit.push_back(base);
      }
      break;
    }
  }

  ActionSequence out;
  out.reserve(unit.size() * 3);
  for (int i = 0; i < repetition_count(e.repetition); ++i) {
    out.insert(out.end(), unit.begin(), unit.end());
  }
  return out;
}

ActionSequence interpret(const Command& c) {
  const auto& first = c.conj == Conjunction::kAnd ? c.e1 : c.e2;
  const auto& second = c.conj == Conjunction::kAnd ? c.e2 : c.e1;
  ActionSequence out = interpret_embedded(first);
  const ActionSequence tail = interpret_embedded(second);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::string render(const ActionSequence& actions) {
  std::string out;
  for (Action a : actions) {
    if (!out.empty()) out += ' ';
    out += action_token(a);
  }
  return out;
}

ActionSequence parse_actions(std::string_view text) {
  ActionSequence out;
  const auto tokens = split_tokens(text);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    bool found = false;
    for (std::size_t k = 0; k < kActionTokens.size(); ++k) {
      if (kActionTokens[k] == tokens[i]) {
        out.push_back(static_cast<Action>(k));
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("unknown action token '" + std::string(tokens[i]) + "'", i);
  }
  return out;
}

ActionSequence oracle_interpret(const Command& c) {
  return parse_actions(oracle_interpret(render(c)));
}

}  // namespace syscan
