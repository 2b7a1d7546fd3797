#pragma once

// Precomputed attack tables shared by move generation and attack queries.

#include <array>
#include <cstdint>

namespace cspace::chess::detail {

using Bitboard = std::uint64_t;

inline constexpr Bitboard kFileA = 0x0101010101010101ULL;
inline constexpr Bitboard kFileH = kFileA << 7;
inline constexpr Bitboard kRank1 = 0xFFULL;
inline constexpr Bitboard kRank8 = kRank1 << 56;

struct AttackTables {
    std::array<Bitboard, 64> knight{};
    std::array<Bitboard, 64> king{};
    std::array<std::array<Bitboard, 64>, 2> pawn{};  // squares a pawn of color attacks
    // Rays indexed by direction: N, NE, E, SE, S, SW, W, NW.
    std::array<std::array<Bitboard, 64>, 8> ray{};
};

const AttackTables& tables() noexcept;

Bitboard rook_attacks(int sq, Bitboard occupied) noexcept;
Bitboard bishop_attacks(int sq, Bitboard occupied) noexcept;

}  // namespace cspace::chess::detail
