#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace syscan {

// Modified SCAN vocabulary. Declaration order is the canonical enumeration order.

enum class Verb : std::uint8_t { kLook, kJump, kRun, kWalk, kSprint, kCrawl, kSquat, kLunge };

enum class Direction : std::uint8_t {
  kNone,
  kLeft,
  kRight,
  kOppositeLeft,
  kOppositeRight,
  kAroundLeft,
  kAroundRight,
};

enum class Repetition : std::uint8_t { kOnce, kTwice, kThrice };

enum class Conjunction : std::uint8_t { kAnd, kAfter };

inline constexpr std::size_t kNumVerbs = 8;
inline constexpr std::size_t kNumDirections = 7;
inline constexpr std::size_t kNumRepetitions = 3;
inline constexpr std::size_t kFormsPerVerb = kNumDirections * kNumRepetitions;  // 21
inline constexpr std::size_t kNumEmbedded = kNumVerbs * kFormsPerVerb;          // 168
inline constexpr std::size_t kNumCommands = kNumEmbedded * 2 * kNumEmbedded;    // 56 448

inline constexpr std::array<Verb, kNumVerbs> kAllVerbs = {
    Verb::kLook,   Verb::kJump,  Verb::kRun,   Verb::kWalk,
    Verb::kSprint, Verb::kCrawl, Verb::kSquat, Verb::kLunge,
};

inline constexpr std::array<Direction, kNumDirections> kAllDirections = {
    Direction::kNone,          Direction::kLeft,       Direction::kRight,
    Direction::kOppositeLeft,  Direction::kOppositeRight,
    Direction::kAroundLeft,    Direction::kAroundRight,
};

inline constexpr std::array<Repetition, kNumRepetitions> kAllRepetitions = {
    Repetition::kOnce, Repetition::kTwice, Repetition::kThrice};

inline constexpr std::array<Conjunction, 2> kAllConjunctions = {Conjunction::kAnd,
                                                               Conjunction::kAfter};

constexpr std::size_t index_of(Verb v) { return static_cast<std::size_t>(v); }
constexpr std::size_t index_of(Conjunction c) { return static_cast<std::size_t>(c); }

std::string_view verb_token(Verb v);
/// Uppercase action token, e.g. "JUMP".
std::string_view verb_action_token(Verb v);
std::optional<Verb> verb_from_token(std::string_view token);

/// Surface phrase; empty for Direction::kNone.
std::string_view direction_phrase(Direction d);
std::optional<Direction> direction_from_phrase(std::string_view phrase);

/// Surface token; empty for Repetition::kOnce.
std::string_view repetition_token(Repetition r);
int repetition_count(Repetition r);

std::string_view conjunction_token(Conjunction c);
std::optional<Conjunction> conjunction_from_token(std::string_view token);

struct EmbeddedSentence {
  Verb verb = Verb::kLook;
  Direction direction = Direction::kNone;
  Repetition repetition = Repetition::kOnce;

  auto operator<=>(const EmbeddedSentence&) const = default;
};

struct Command {
  EmbeddedSentence e1;
  Conjunction conj = Conjunction::kAnd;
  EmbeddedSentence e2;

  auto operator<=>(const Command&) const = default;
};

std::string render(const EmbeddedSentence& e);
std::string render(const Command& c);

/// All 168 embedded sentences in canonical order (verb, direction, repetition).
std::vector<EmbeddedSentence> enumerate_embedded();

/// Embedded sentences whose verb is in `verb_filter`, canonical order.
/// Throws InvalidArgument when the filter is empty.
std::vector<EmbeddedSentence> enumerate_embedded(std::span<const Verb> verb_filter);

/// All 56 448 commands: e1 outermost, then conjunction, then e2.
std::vector<Command> enumerate_commands();

/// Inverse of render(const Command&). Throws ParseError carrying the 0-based
/// index of the first offending token.
Command parse_command(std::string_view surface);

/// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_tokens(std::string_view text);

}  // namespace syscan
