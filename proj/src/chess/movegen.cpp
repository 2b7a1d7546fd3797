#include <algorithm>
#include <bit>
#include <cstdlib>

#include "attacks.hpp"
#include "cspace/chess/position.hpp"

namespace cspace::chess {

using detail::Bitboard;

namespace {

constexpr std::array<PieceKind, 4> kPromotions{PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen};

void add_pawn_move(std::vector<Move>& out, Square from, Square to, MoveFlag flags) {
    if (to.rank() == 0 || to.rank() == 7) {
        for (PieceKind k : kPromotions) out.push_back(Move{from, to, k, flags});
    } else {
        out.push_back(Move{from, to, std::nullopt, flags});
    }
}

bool attacked(const Position& p, Square s, Color by) { return !attackers(p, s, by).empty(); }

void generate_castling(const Position& p, std::vector<Move>& out) {
    Color us = p.side_to_move();
    Color them = opposite(us);
    int rank = us == Color::White ? 0 : 7;
    Square king(4, rank);
    if (!(p.pieces(us, PieceKind::King) & king.bit())) return;
    Bitboard occ = p.occupied();
    auto rook_home = [&](int file) { return (p.pieces(us, PieceKind::Rook) & Square(file, rank).bit()) != 0; };
    if (p.castling().kingside(us) && rook_home(7)) {
        Bitboard between = Square(5, rank).bit() | Square(6, rank).bit();
        if (!(occ & between) && !attacked(p, king, them) && !attacked(p, Square(5, rank), them) &&
            !attacked(p, Square(6, rank), them)) {
            out.push_back(Move{king, Square(6, rank), std::nullopt, MoveFlag::CastleKingside});
        }
    }
    if (p.castling().queenside(us) && rook_home(0)) {
        Bitboard between = Square(1, rank).bit() | Square(2, rank).bit() | Square(3, rank).bit();
        if (!(occ & between) && !attacked(p, king, them) && !attacked(p, Square(3, rank), them) &&
            !attacked(p, Square(2, rank), them)) {
            out.push_back(Move{king, Square(2, rank), std::nullopt, MoveFlag::CastleQueenside});
        }
    }
}

}  // namespace

std::vector<Move> pseudo_legal_moves(const Position& p) {
    std::vector<Move> out;
    out.reserve(64);
    const Color us = p.side_to_move();
    const Bitboard own = p.pieces(us);
    const Bitboard enemy = p.pieces(opposite(us));
    const Bitboard occ = own | enemy;
    const auto& t = detail::tables();

    const int forward = us == Color::White ? 8 : -8;
    const int start_rank = us == Color::White ? 1 : 6;
    for (Square from : SquareSet(p.pieces(us, PieceKind::Pawn))) {
        int one = from.index() + forward;
        if (!(occ & (Bitboard{1} << one))) {
            add_pawn_move(out, from, Square::from_index(one), MoveFlag::None);
            int two = one + forward;
            if (from.rank() == start_rank && !(occ & (Bitboard{1} << two))) {
                out.push_back(Move{from, Square::from_index(two), std::nullopt, MoveFlag::DoublePush});
            }
        }
        Bitboard caps = t.pawn[index_of(us)][from.index()];
        for (Square to : SquareSet(caps & enemy)) add_pawn_move(out, from, to, MoveFlag::Capture);
        if (p.ep_square() && (caps & p.ep_square()->bit())) {
            out.push_back(Move{from, *p.ep_square(), std::nullopt, MoveFlag::Capture | MoveFlag::EnPassant});
        }
    }

    for (PieceKind kind : {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen, PieceKind::King}) {
        for (Square from : SquareSet(p.pieces(us, kind))) {
            Bitboard targets = piece_attacks(Piece{us, kind}, from, occ) & ~own;
            for (Square to : SquareSet(targets)) {
                out.push_back(Move{from, to, std::nullopt, (enemy & to.bit()) ? MoveFlag::Capture : MoveFlag::None});
            }
        }
    }
    generate_castling(p, out);
    return out;
}

Position make_move_unchecked(const Position& p, const Move& m) {
    Position next = p;
    const Color us = p.side_to_move();
    const Piece mover = *p.piece_at(m.from);
    const bool capture = p.piece_at(m.to).has_value() || has_flag(m.flags, MoveFlag::EnPassant);

    next.remove(m.from);
    if (has_flag(m.flags, MoveFlag::EnPassant)) {
        next.remove(Square(m.to.file(), m.from.rank()));
    }
    next.put(m.to, m.promotion ? Piece{us, *m.promotion} : mover);

    if (has_flag(m.flags, MoveFlag::CastleKingside) || has_flag(m.flags, MoveFlag::CastleQueenside)) {
        int rank = m.from.rank();
        bool kingside = has_flag(m.flags, MoveFlag::CastleKingside);
        Square rook_from(kingside ? 7 : 0, rank);
        Square rook_to(kingside ? 5 : 3, rank);
        next.remove(rook_from);
        next.put(rook_to, Piece{us, PieceKind::Rook});
    }

    CastlingRights rights = p.castling();
    auto touch = [&rights](Square s) {
        using namespace squares;
        if (s == e1) rights.white_kingside = rights.white_queenside = false;
        if (s == h1) rights.white_kingside = false;
        if (s == a1) rights.white_queenside = false;
        if (s == e8) rights.black_kingside = rights.black_queenside = false;
        if (s == h8) rights.black_kingside = false;
        if (s == a8) rights.black_queenside = false;
    };
    touch(m.from);
    touch(m.to);
    next.set_castling(rights);

    if (mover.kind == PieceKind::Pawn && std::abs(m.to.rank() - m.from.rank()) == 2) {
        next.set_ep_square(Square(m.from.file(), (m.from.rank() + m.to.rank()) / 2));
    } else {
        next.set_ep_square(std::nullopt);
    }

    int halfmove = (mover.kind == PieceKind::Pawn || capture) ? 0 : p.halfmove_clock() + 1;
    int fullmove = p.fullmove_number() + (us == Color::Black ? 1 : 0);
    next.set_clocks(halfmove, fullmove);
    next.set_side_to_move(opposite(us));
    return next;
}

std::vector<Move> legal_moves(const Position& p) {
    std::vector<Move> moves = pseudo_legal_moves(p);
    const Color us = p.side_to_move();
    std::erase_if(moves, [&](const Move& m) { return is_check(make_move_unchecked(p, m), us); });
    std::sort(moves.begin(), moves.end(),
              [](const Move& a, const Move& b) { return move_order_key(a) < move_order_key(b); });
    return moves;
}

Position apply_move(const Position& p, const Move& m) {
    auto moves = legal_moves(p);
    auto it = std::find_if(moves.begin(), moves.end(), [&](const Move& legal) {
        return legal.from == m.from && legal.to == m.to && legal.promotion == m.promotion;
    });
    if (it == moves.end()) throw IllegalMoveError("illegal move " + to_uci(m) + " in " + to_fen(p));
    return make_move_unchecked(p, *it);
}

std::uint64_t perft(const Position& p, int depth) {
    if (depth <= 0) return 1;
    std::vector<Move> moves = pseudo_legal_moves(p);
    const Color us = p.side_to_move();
    std::uint64_t nodes = 0;
    for (const Move& m : moves) {
        Position next = make_move_unchecked(p, m);
        if (is_check(next, us)) continue;
        nodes += depth == 1 ? 1 : perft(next, depth - 1);
    }
    return nodes;
}

}  // namespace cspace::chess
