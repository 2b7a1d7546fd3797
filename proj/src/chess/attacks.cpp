#include "attacks.hpp"

#include <bit>

namespace cspace::chess::detail {

namespace {

constexpr std::array<int, 8> kDirFile{0, 1, 1, 1, 0, -1, -1, -1};
constexpr std::array<int, 8> kDirRank{1, 1, 0, -1, -1, -1, 0, 1};

constexpr Bitboard offsets(int sq, const int (&df)[8], const int (&dr)[8]) {
    Bitboard out = 0;
    int f = sq & 7, r = sq >> 3;
    for (int i = 0; i < 8; ++i) {
        int nf = f + df[i], nr = r + dr[i];
        if (nf >= 0 && nf < 8 && nr >= 0 && nr < 8) out |= Bitboard{1} << (nr * 8 + nf);
    }
    return out;
}

AttackTables build() {
    AttackTables t;
    constexpr int knight_df[8] = {1, 2, 2, 1, -1, -2, -2, -1};
    constexpr int knight_dr[8] = {2, 1, -1, -2, -2, -1, 1, 2};
    constexpr int king_df[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    constexpr int king_dr[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    for (int sq = 0; sq < 64; ++sq) {
        t.knight[sq] = offsets(sq, knight_df, knight_dr);
        t.king[sq] = offsets(sq, king_df, king_dr);
        int f = sq & 7, r = sq >> 3;
        Bitboard wp = 0, bp = 0;
        for (int df : {-1, 1}) {
            int nf = f + df;
            if (nf < 0 || nf > 7) continue;
            if (r < 7) wp |= Bitboard{1} << ((r + 1) * 8 + nf);
            if (r > 0) bp |= Bitboard{1} << ((r - 1) * 8 + nf);
        }
        t.pawn[0][sq] = wp;
        t.pawn[1][sq] = bp;
        for (int d = 0; d < 8; ++d) {
            Bitboard ray = 0;
            int nf = f + kDirFile[d], nr = r + kDirRank[d];
            while (nf >= 0 && nf < 8 && nr >= 0 && nr < 8) {
                ray |= Bitboard{1} << (nr * 8 + nf);
                nf += kDirFile[d];
                nr += kDirRank[d];
            }
            t.ray[d][sq] = ray;
        }
    }
    return t;
}

// Directions N, NE, E, NW increase the square index; the rest decrease it.
constexpr bool positive_direction(int d) { return d == 0 || d == 1 || d == 2 || d == 7; }

Bitboard slide(int d, int sq, Bitboard occupied) noexcept {
    const auto& t = tables();
    Bitboard ray = t.ray[d][sq];
    Bitboard blockers = ray & occupied;
    if (blockers == 0) return ray;
    int first = positive_direction(d) ? std::countr_zero(blockers) : 63 - std::countl_zero(blockers);
    return ray ^ t.ray[d][first];
}

}  // namespace

const AttackTables& tables() noexcept {
    static const AttackTables t = build();
    return t;
}

Bitboard rook_attacks(int sq, Bitboard occupied) noexcept {
    return slide(0, sq, occupied) | slide(2, sq, occupied) | slide(4, sq, occupied) | slide(6, sq, occupied);
}

Bitboard bishop_attacks(int sq, Bitboard occupied) noexcept {
    return slide(1, sq, occupied) | slide(3, sq, occupied) | slide(5, sq, occupied) | slide(7, sq, occupied);
}

}  // namespace cspace::chess::detail
