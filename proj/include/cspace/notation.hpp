#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cspace/chess/position.hpp"

namespace cspace::notation {

using chess::Move;
using chess::Position;

class SanError : public std::runtime_error {
public:
    enum class Kind { NoMatch, Ambiguous, Malformed };
    SanError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Lexical problem in a PGN document, with 1-based line and column.
class PgnSyntaxError : public std::runtime_error {
public:
    PgnSyntaxError(const std::string& what, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A move that could not be resolved, located by 1-based game index and move number.
class PgnMoveError : public std::runtime_error {
public:
    PgnMoveError(const std::string& what, int game_index, int move_number)
        : std::runtime_error("game " + std::to_string(game_index) + ", move " + std::to_string(move_number) + ": " +
                             what),
          game_index_(game_index),
          move_number_(move_number) {}
    int game_index() const noexcept { return game_index_; }
    int move_number() const noexcept { return move_number_; }

private:
    int game_index_;
    int move_number_;
};

Move parse_san(const Position& p, std::string_view token);

/// Standard algebraic rendering of a legal move (with +/# suffix).
std::string to_san(const Position& p, const Move& m);

struct GameRecord {
    std::vector<std::pair<std::string, std::string>> headers;
    Position initial;
    std::vector<Move> moves;
    std::string result_token;  // "1-0", "0-1", "1/2-1/2", "*" or empty
    std::vector<std::string> warnings;

    /// First header value with this key, or empty.
    std::string header(std::string_view key) const;
    /// Positions after every move, starting with the initial one.
    std::vector<Position> replay() const;
};

/// One game of a document: either a record or the error that stopped it.
struct ParsedGame {
    int index = 0;  // 1-based
    std::unique_ptr<GameRecord> record;
    std::string error;

    bool ok() const noexcept { return record != nullptr; }
};

/// Strict parse: throws PgnSyntaxError or PgnMoveError on the first problem.
std::vector<GameRecord> parse_pgn(std::string_view text);

/// Per-game isolation: a game with an unresolvable move yields an error entry
/// and parsing resumes with the next game. Lexical errors still throw.
std::vector<ParsedGame> parse_pgn_games(std::string_view text);

}  // namespace cspace::notation
