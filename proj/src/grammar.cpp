#include "syscan/grammar.hpp"

#include <algorithm>
#include <cctype>

#include "syscan/error.hpp"

namespace syscan {

namespace {

constexpr std::array<std::string_view, kNumVerbs> kVerbTokens = {
    "look", "jump", "run", "walk", "sprint", "crawl", "squat", "lunge"};

constexpr std::array<std::string_view, kNumVerbs> kVerbActions = {
    "LOOK", "JUMP", "RUN", "WALK", "SPRINT", "CRAWL", "SQUAT", "LUNGE"};

constexpr std::array<std::string_view, kNumDirections> kDirectionPhrases = {
    "", "left", "right", "opposite left", "opposite right", "around left", "around right"};

constexpr std::array<std::string_view, kNumRepetitions> kRepetitionTokens = {"", "twice",
                                                                             "thrice"};

constexpr std::array<std::string_view, 2> kConjunctionTokens = {"and", "after"};

bool is_side(std::string_view t) { return t == "left" || t == "right"; }
bool is_modifier(std::string_view t) { return t == "opposite" || t == "around"; }
bool is_repetition(std::string_view t) { return t == "twice" || t == "thrice"; }

bool is_known(std::string_view t) {
  return verb_from_token(t) || conjunction_from_token(t) || is_side(t) || is_modifier(t) ||
         is_repetition(t);
}

// Parses tokens[begin, end) as one embedded sentence.
EmbeddedSentence parse_embedded(std::span<const std::string_view> tokens, std::size_t begin,
                                std::size_t end) {
  if (begin == end) {
    throw ParseError("expected a verb", begin);
  }
  std::size_t pos = begin;
  auto fail = [&](std::string_view what) {
    if (!is_known(tokens[pos])) {
      throw ParseError("unknown token '" + std::string(tokens[pos]) + "'", pos);
    }
    throw ParseError(std::string(what) + ", got '" + std::string(tokens[pos]) + "'", pos);
  };

  EmbeddedSentence e;
  auto verb = verb_from_token(tokens[pos]);
  if (!verb) fail("expected a verb");
  e.verb = *verb;
  ++pos;

  if (pos < end && (is_side(tokens[pos]) || is_modifier(tokens[pos]))) {
    std::string phrase(tokens[pos]);
    if (is_modifier(tokens[pos])) {
      ++pos;
      if (pos == end) throw ParseError("expected 'left' or 'right'", pos);
      if (!is_side(tokens[pos])) fail("expected 'left' or 'right'");
      phrase += ' ';
      phrase += tokens[pos];
    }
    e.direction = *direction_from_phrase(phrase);
    ++pos;
  }

  if (pos < end && is_repetition(tokens[pos])) {
    e.repetition = tokens[pos] == "twice" ? Repetition::kTwice : Repetition::kThrice;
    ++pos;
  }

  if (pos != end) fail("unexpected token");
  return e;
}

}  // namespace

std::string_view verb_token(Verb v) { return kVerbTokens[index_of(v)]; }
std::string_view verb_action_token(Verb v) { return kVerbActions[index_of(v)]; }

std::optional<Verb> verb_from_token(std::string_view token) {
  for (Verb v : kAllVerbs) {
    if (kVerbTokens[index_of(v)] == token) return v;
  }
  return std::nullopt;
}

std::string_view direction_phrase(Direction d) {
  return kDirectionPhrases[static_cast<std::size_t>(d)];
}

std::optional<Direction> direction_from_phrase(std::string_view phrase) {
  for (Direction d : kAllDirections) {
    if (direction_phrase(d) == phrase) return d;
  }
  return std::nullopt;
}

std::string_view repetition_token(Repetition r) {
  return kRepetitionTokens[static_cast<std::size_t>(r)];
}

int repetition_count(Repetition r) { return static_cast<int>(r) + 1; }

std::string_view conjunction_token(Conjunction c) { return kConjunctionTokens[index_of(c)]; }

std::optional<Conjunction> conjunction_from_token(std::string_view token) {
  for (Conjunction c : kAllConjunctions) {
    if (conjunction_token(c) == token) return c;
  }
  return std::nullopt;
}

std::string render(const EmbeddedSentence& e) {
  std::string out(verb_token(e.verb));
  if (e.direction != Direction::kNone) {
    out += ' ';
    out += direction_phrase(e.direction);
  }
  if (e.repetition != Repetition::kOnce) {
    out += ' ';
    out += repetition_token(e.repetition);
  }
  return out;
}

std::string render(const Command& c) {
  std::string out = render(c.e1);
  out += ' ';
  out += conjunction_token(c.conj);
  out += ' ';
  out += render(c.e2);
  return out;
}

std::vector<EmbeddedSentence> enumerate_embedded() { return enumerate_embedded(kAllVerbs); }

std::vector<EmbeddedSentence> enumerate_embedded(std::span<const Verb> verb_filter) {
  if (verb_filter.empty()) {
    throw InvalidArgument("enumerate_embedded: verb filter must not be empty");
  }
  std::vector<EmbeddedSentence> out;
  out.reserve(kFormsPerVerb * kNumVerbs);
  for (Verb v : kAllVerbs) {
    if (std::find(verb_filter.begin(), verb_filter.end(), v) == verb_filter.end()) continue;
    for (Direction d : kAllDirections) {
      for (Repetition r : kAllRepetitions) {
        out.push_back({v, d, r});
      }
    }
  }
  return out;
}

std::vector<Command> enumerate_commands() {
  const auto embedded = enumerate_embedded();
  std::vector<Command> out;
  out.reserve(kNumCommands);
  for (const auto& e1 : embedded) {
    for (Conjunction c : kAllConjunctions) {
      for (const auto& e2 : embedded) {
        out.push_back({e1, c, e2});
      }
    }
  }
  return out;
}

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

Command parse_command(std::string_view surface) {
  const auto tokens = split_tokens(surface);

  std::optional<std::size_t> conj_pos;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!conjunction_from_token(tokens[i])) continue;
    if (conj_pos) throw ParseError("second conjunction '" + std::string(tokens[i]) + "'", i);
    conj_pos = i;
  }
  if (!conj_pos) {
    // Report an unknown token in preference to the missing conjunction.
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!is_known(tokens[i])) {
        throw ParseError("unknown token '" + std::string(tokens[i]) + "'", i);
      }
    }
    throw ParseError("missing conjunction", tokens.size());
  }

  Command c;
  c.e1 = parse_embedded(tokens, 0, *conj_pos);
  c.conj = *conjunction_from_token(tokens[*conj_pos]);
  c.e2 = parse_embedded(tokens, *conj_pos + 1, tokens.size());
  return c;
}

}  // namespace syscan
