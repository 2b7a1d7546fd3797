#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cspace/chess/types.hpp"

namespace cspace::chess {

class FenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IllegalMoveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CastlingRights {
    bool white_kingside = false;
    bool white_queenside = false;
    bool black_kingside = false;
    bool black_queenside = false;

    bool kingside(Color c) const noexcept { return c == Color::White ? white_kingside : black_kingside; }
    bool queenside(Color c) const noexcept { return c == Color::White ? white_queenside : black_queenside; }
    bool any() const noexcept { return white_kingside || white_queenside || black_kingside || black_queenside; }

    friend bool operator==(const CastlingRights&, const CastlingRights&) = default;
};

/// Complete game state. A default-constructed Position is an empty board
/// with White to move; parse_fen() and start() produce validated positions.
class Position {
public:
    Position();
    static Position start();

    std::optional<Piece> piece_at(Square s) const noexcept;

    std::uint64_t pieces(Color c) const noexcept { return by_color_[index_of(c)]; }
    std::uint64_t pieces(Color c, PieceKind k) const noexcept {
        return by_color_[index_of(c)] & by_kind_[index_of(k)];
    }
    std::uint64_t occupied() const noexcept { return by_color_[0] | by_color_[1]; }
    Square king_square(Color c) const;

    Color side_to_move() const noexcept { return side_; }
    const CastlingRights& castling() const noexcept { return castling_; }
    std::optional<Square> ep_square() const noexcept { return ep_; }
    int halfmove_clock() const noexcept { return halfmove_; }
    int fullmove_number() const noexcept { return fullmove_; }

    friend bool operator==(const Position&, const Position&) = default;

    // Builders used by FEN parsing and synthetic positions. They do not
    // re-validate; call validate() after a batch of edits.
    void put(Square s, Piece p) noexcept;
    void remove(Square s) noexcept;
    void set_side_to_move(Color c) noexcept { side_ = c; }
    void set_castling(CastlingRights r) noexcept { castling_ = r; }
    void set_ep_square(std::optional<Square> s) noexcept { ep_ = s; }
    void set_clocks(int halfmove, int fullmove) noexcept {
        halfmove_ = halfmove;
        fullmove_ = fullmove;
    }

    /// Throws FenError naming the first violated invariant.
    void validate() const;

private:
    std::array<std::uint64_t, 2> by_color_{};
    std::array<std::uint64_t, 6> by_kind_{};
    std::array<std::int8_t, 64> board_{};  // -1 empty, else color * 6 + kind
    Color side_ = Color::White;
    CastlingRights castling_;
    std::optional<Square> ep_;
    int halfmove_ = 0;
    int fullmove_ = 1;
};

inline constexpr std::string_view kStartFen = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

Position parse_fen(std::string_view text);
std::string to_fen(const Position& p);

/// Attacks of a single piece standing on `from` given an occupancy mask.
std::uint64_t piece_attacks(Piece piece, Square from, std::uint64_t occupied) noexcept;

/// Pieces of color `by` attacking `sq` (pseudo-legal: pins ignored).
SquareSet attackers(const Position& p, Square sq, Color by) noexcept;

/// Union of squares attacked by color `by`.
std::uint64_t attack_map(const Position& p, Color by) noexcept;

bool is_check(const Position& p, Color c) noexcept;

/// Moves obeying piece movement rules for the side to move, without the
/// own-king-safety filter. Castling still requires an unattacked path.
std::vector<Move> pseudo_legal_moves(const Position& p);

/// Fully legal moves in (from, to, promotion) order.
std::vector<Move> legal_moves(const Position& p);

/// Checked move application; throws IllegalMoveError if m is not legal in p.
Position apply_move(const Position& p, const Move& m);

/// Applies a move known to be pseudo-legal in p (no legality check).
Position make_move_unchecked(const Position& p, const Move& m);

std::uint64_t perft(const Position& p, int depth);

enum class GameResult { Ongoing, Checkmate, Stalemate, DrawByRule };
std::string_view to_string(GameResult r) noexcept;

/// 50-move rule and insufficient material count as draws; repetition is not tracked.
GameResult game_result(const Position& p);

bool insufficient_material(const Position& p) noexcept;

/// Vertical mirror with colors, castling rights, side and ep square swapped.
Position color_flip(const Position& p);
Move color_flip(const Move& m);

}  // namespace cspace::chess
