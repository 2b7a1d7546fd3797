#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cspace::chess {

enum class Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color opposite(Color c) noexcept {
    return c == Color::White ? Color::Black : Color::White;
}

constexpr int index_of(Color c) noexcept { return static_cast<int>(c); }

std::string_view to_string(Color c) noexcept;

enum class PieceKind : std::uint8_t { Pawn = 0, Knight, Bishop, Rook, Queen, King };

constexpr int index_of(PieceKind k) noexcept { return static_cast<int>(k); }

/// Exchange value in pawn units. Kings carry no material value.
constexpr int piece_value(PieceKind k) noexcept {
    constexpr std::array<int, 6> values{1, 3, 3, 5, 9, 0};
    return values[static_cast<int>(k)];
}

struct Piece {
    Color color = Color::White;
    PieceKind kind = PieceKind::Pawn;

    constexpr int value() const noexcept { return piece_value(kind); }
    friend constexpr bool operator==(Piece, Piece) = default;
};

/// FEN letter: uppercase for White.
char to_fen_char(Piece p) noexcept;
std::optional<Piece> piece_from_fen_char(char c) noexcept;

/// Board coordinate. Index order is rank-major (a1 = 0, b1 = 1, ..., h8 = 63),
/// which is also the total order used for deterministic iteration.
class Square {
public:
    constexpr Square() = default;
    constexpr Square(int file, int rank) : index_(static_cast<std::uint8_t>(rank * 8 + file)) {
        if (file < 0 || file > 7 || rank < 0 || rank > 7) throw std::out_of_range("square coordinate out of range");
    }
    static constexpr Square from_index(int index) {
        if (index < 0 || index > 63) throw std::out_of_range("square index out of range");
        Square s;
        s.index_ = static_cast<std::uint8_t>(index);
        return s;
    }
    /// Parses "e4"-style names.
    static std::optional<Square> parse(std::string_view name) noexcept;

    constexpr int file() const noexcept { return index_ & 7; }
    constexpr int rank() const noexcept { return index_ >> 3; }
    constexpr int index() const noexcept { return index_; }
    constexpr std::uint64_t bit() const noexcept { return std::uint64_t{1} << index_; }
    constexpr Square mirrored() const noexcept { return from_index(index_ ^ 56); }

    std::string name() const;

    friend constexpr auto operator<=>(Square, Square) = default;

private:
    std::uint8_t index_ = 0;
};

namespace squares {
inline constexpr Square a1{0, 0}, b1{1, 0}, c1{2, 0}, d1{3, 0}, e1{4, 0}, f1{5, 0}, g1{6, 0}, h1{7, 0};
inline constexpr Square a8{0, 7}, b8{1, 7}, c8{2, 7}, d8{3, 7}, e8{4, 7}, f8{5, 7}, g8{6, 7}, h8{7, 7};
inline constexpr Square d4{3, 3}, e4{4, 3}, d5{3, 4}, e5{4, 4};
}  // namespace squares

/// A set of squares backed by a 64-bit occupancy mask. Iterates in square order.
class SquareSet {
public:
    constexpr SquareSet() = default;
    constexpr explicit SquareSet(std::uint64_t bits) : bits_(bits) {}

    constexpr std::uint64_t bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr bool contains(Square s) const noexcept { return (bits_ & s.bit()) != 0; }
    constexpr void insert(Square s) noexcept { bits_ |= s.bit(); }

    class iterator {
    public:
        constexpr explicit iterator(std::uint64_t bits) : bits_(bits) {}
        constexpr Square operator*() const { return Square::from_index(std::countr_zero(bits_)); }
        constexpr iterator& operator++() noexcept {
            bits_ &= bits_ - 1;
            return *this;
        }
        friend constexpr bool operator==(iterator, iterator) = default;

    private:
        std::uint64_t bits_;
    };
    constexpr iterator begin() const noexcept { return iterator(bits_); }
    constexpr iterator end() const noexcept { return iterator(0); }

    friend constexpr bool operator==(SquareSet, SquareSet) = default;
    friend constexpr SquareSet operator|(SquareSet a, SquareSet b) { return SquareSet(a.bits_ | b.bits_); }
    friend constexpr SquareSet operator&(SquareSet a, SquareSet b) { return SquareSet(a.bits_ & b.bits_); }

private:
    std::uint64_t bits_ = 0;
};

enum class MoveFlag : std::uint8_t {
    None = 0,
    Capture = 1 << 0,
    EnPassant = 1 << 1,
    CastleKingside = 1 << 2,
    CastleQueenside = 1 << 3,
    DoublePush = 1 << 4,
};

constexpr MoveFlag operator|(MoveFlag a, MoveFlag b) noexcept {
    return static_cast<MoveFlag>(static_cast<std::uint8_t>(a) | static_cast<std::uint8_t>(b));
}
constexpr bool has_flag(MoveFlag set, MoveFlag f) noexcept {
    return (static_cast<std::uint8_t>(set) & static_cast<std::uint8_t>(f)) != 0;
}

struct Move {
    Square from;
    Square to;
    std::optional<PieceKind> promotion;
    MoveFlag flags = MoveFlag::None;

    bool is_capture() const noexcept { return has_flag(flags, MoveFlag::Capture); }
    bool is_castle() const noexcept {
        return has_flag(flags, MoveFlag::CastleKingside) || has_flag(flags, MoveFlag::CastleQueenside);
    }

    friend bool operator==(const Move&, const Move&) = default;
};

/// Long algebraic form, e.g. "e2e4", "e7e8q".
std::string to_uci(const Move& m);

/// Sort key for the fixed (from, to, promotion) move order.
constexpr int move_order_key(const Move& m) noexcept {
    int promo = m.promotion ? static_cast<int>(*m.promotion) : 0;
    return (m.from.index() << 9) | (m.to.index() << 3) | promo;
}

}  // namespace cspace::chess
