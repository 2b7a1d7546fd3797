#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "../oracle/naive_chess.hpp"
#include "../support.hpp"
#include "cspace/chess/position.hpp"

using namespace cspace::chess;

namespace {

Square sq(const char* name) { return *Square::parse(name); }

Move find_move(const Position& p, const char* uci) {
    for (const auto& m : legal_moves(p)) {
        if (to_uci(m) == uci) return m;
    }
    FAIL("no legal move " << uci);
    return {};
}

Position play(Position p, std::initializer_list<const char*> ucis) {
    for (const char* u : ucis) p = apply_move(p, find_move(p, u));
    return p;
}

std::set<std::string> names(SquareSet s) {
    std::set<std::string> out;
    for (Square x : s) out.insert(x.name());
    return out;
}

}  // namespace

TEST_CASE("start position parses") {
    Position p = parse_fen(kStartFen);
    CHECK(p == Position::start());
    CHECK(std::popcount(p.occupied()) == 32);
    CHECK(p.side_to_move() == Color::White);
    CHECK(to_fen(p) == kStartFen);
}

TEST_CASE("fen errors") {
    CHECK_THROWS_AS(parse_fen("8/8/8"), FenError);
    CHECK_THROWS_AS(parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBN1 w KQkq - 0 1"), FenError);
    CHECK_THROWS_AS(parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQ1BNR w KQkq - 0 1"), FenError);
    CHECK_THROWS_AS(parse_fen("rnbqkbnP/pppppppp/8/8/8/8/PPPPPPP1/RNBQKBNR w KQq - 0 1"), FenError);
    CHECK_THROWS_AS(parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkx - 0 1"), FenError);
    CHECK_THROWS_AS(parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq e4 0 1"), FenError);
    CHECK_THROWS_AS(parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR x KQkq - 0 1"), FenError);
    CHECK_THROWS_AS(parse_fen("rnbqkbnr/pppppppp/9/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"), FenError);
    CHECK_THROWS_AS(parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 0"), FenError);
    // Side not to move in check.
    CHECK_THROWS_AS(parse_fen("4k3/8/8/8/8/8/4Q3/4K3 w - - 0 1"), FenError);
}

TEST_CASE("e4 updates fen with ep square") {
    Position p = play(Position::start(), {"e2e4"});
    CHECK(to_fen(p) == "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3 0 1");
    CHECK(legal_moves(p).size() == 20);
    CHECK(Position::start() == parse_fen(kStartFen));  // value semantics
}

TEST_CASE("fen round trip over the master corpus") {
    for (const auto& p : testsupport::master_positions()) {
        std::string f = to_fen(p);
        REQUIRE(parse_fen(f) == p);
        int groups = 1;
        for (char c : f.substr(0, f.find(' '))) groups += c == '/';
        CHECK(groups == 8);
    }
}

TEST_CASE("attackers examples") {
    Position s = Position::start();
    CHECK(names(attackers(s, sq("f3"), Color::White)) == std::set<std::string>{"e2", "g2", "g1"});
    CHECK(attackers(s, sq("e4"), Color::White).empty());
    Position q = play(s, {"e2e4", "e7e5", "d1h5"});
    CHECK(names(attackers(q, sq("e5"), Color::White)) == std::set<std::string>{"h5"});
}

TEST_CASE("stalemate and checkmate") {
    Position st = parse_fen("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1");
    CHECK(legal_moves(st).empty());
    CHECK_FALSE(is_check(st, Color::Black));
    CHECK(game_result(st) == GameResult::Stalemate);

    Position fool = play(Position::start(), {"f2f3", "e7e5", "g2g4", "d8h4"});
    CHECK(legal_moves(fool).empty());
    CHECK(is_check(fool, Color::White));
    CHECK(game_result(fool) == GameResult::Checkmate);

    CHECK(game_result(Position::start()) == GameResult::Ongoing);
    CHECK_FALSE(is_check(Position::start(), Color::White));
}

TEST_CASE("draw by rule") {
    CHECK(game_result(parse_fen("8/8/4k3/8/8/3K4/8/8 w - - 0 1")) == GameResult::DrawByRule);
    CHECK(game_result(parse_fen("8/8/4k3/8/8/3KN3/8/8 w - - 0 1")) == GameResult::DrawByRule);
    CHECK(game_result(parse_fen("8/8/4k3/8/8/R2K4/8/8 w - - 0 1")) == GameResult::Ongoing);
    CHECK(game_result(parse_fen("8/8/4k3/8/8/R2K4/8/8 w - - 100 80")) == GameResult::DrawByRule);
}

TEST_CASE("castling moves king and rook and clears rights") {
    Position p = parse_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1");
    Position k = apply_move(p, find_move(p, "e1g1"));
    CHECK(k.piece_at(sq("g1")) == Piece{Color::White, PieceKind::King});
    CHECK(k.piece_at(sq("f1")) == Piece{Color::White, PieceKind::Rook});
    CHECK_FALSE(k.piece_at(sq("h1")));
    CHECK_FALSE(k.castling().white_kingside);
    CHECK_FALSE(k.castling().white_queenside);
    CHECK(k.castling().black_kingside);
    Position q = apply_move(k, find_move(k, "e8c8"));
    CHECK(q.piece_at(sq("d8")) == Piece{Color::Black, PieceKind::Rook});
    CHECK(to_fen(q) == "2kr3r/8/8/8/8/8/8/R4RK1 w - - 2 2");
    // Through an attacked square.
    Position blocked = parse_fen("r3k2r/8/8/8/8/8/5r2/R3K2R w KQkq - 0 1");
    for (const auto& m : legal_moves(blocked)) CHECK(to_uci(m) != "e1g1");
}

TEST_CASE("en passant removes the bypassed pawn") {
    Position p = play(Position::start(), {"e2e4", "a7a6", "e4e5", "d7d5"});
    Move ep = find_move(p, "e5d6");
    CHECK(has_flag(ep.flags, MoveFlag::EnPassant));
    Position after = apply_move(p, ep);
    CHECK_FALSE(after.piece_at(sq("d5")));
    CHECK(after.piece_at(sq("d6")) == Piece{Color::White, PieceKind::Pawn});
}

TEST_CASE("illegal move rejected") {
    Move m{sq("e2"), sq("e5")};
    CHECK_THROWS_AS(apply_move(Position::start(), m), IllegalMoveError);
}

TEST_CASE("promotion generates four kinds") {
    Position p = parse_fen("8/P6k/8/8/8/8/8/K7 w - - 0 1");
    int promos = 0;
    for (const auto& m : legal_moves(p)) promos += m.promotion.has_value();
    CHECK(promos == 4);
}

TEST_CASE("perft from the start") {
    Position s = Position::start();
    CHECK(perft(s, 0) == 1);
    CHECK(perft(s, 1) == 20);
    CHECK(perft(s, 2) == 400);
    CHECK(perft(s, 3) == 8902);
    CHECK(perft(s, 4) == 197281);
}

TEST_CASE("perft on tricky positions matches the naive engine") {
    // Castling, pins, ep and promotion heavy positions.
    const char* fens[] = {
        "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
        "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
        "r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1",
        "rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8",
    };
    for (const char* f : fens) {
        Position p = parse_fen(f);
        auto b = oracle::from_fen(f);
        for (int d = 1; d <= 3; ++d) CHECK(perft(p, d) == oracle::perft(b, d));
    }
    CHECK(perft(parse_fen(fens[0]), 3) == 97862);
    CHECK(perft(parse_fen(fens[1]), 4) == 43238);
}

TEST_CASE("legal move count matches naive engine on corpus positions") {
    for (const auto& p : testsupport::sample_positions(250)) {
        auto b = oracle::from_fen(to_fen(p));
        CHECK(legal_moves(p).size() == oracle::legal_moves(b).size());
    }
}

TEST_CASE("legal moves never leave the king attacked and are ordered") {
    for (const auto& p : testsupport::sample_positions(200, 3)) {
        auto moves = legal_moves(p);
        for (std::size_t i = 0; i < moves.size(); ++i) {
            CHECK_FALSE(is_check(make_move_unchecked(p, moves[i]), p.side_to_move()));
            if (i) CHECK(move_order_key(moves[i - 1]) < move_order_key(moves[i]));
        }
        CHECK(legal_moves(p) == moves);
    }
}

TEST_CASE("attackers match naive scan") {
    for (const auto& p : testsupport::sample_positions(60, 11)) {
        auto b = oracle::from_fen(to_fen(p));
        for (int i = 0; i < 64; ++i) {
            Square s = Square::from_index(i);
            for (Color c : {Color::White, Color::Black}) {
                std::set<std::string> want;
                for (auto q : oracle::attackers(b, {s.file(), s.rank()}, c == Color::White)) want.insert(q.name());
                CHECK(names(attackers(p, s, c)) == want);
            }
        }
    }
}

TEST_CASE("color flip maps legal moves bijectively") {
    for (const auto& p : testsupport::sample_positions(200, 5)) {
        Position f = color_flip(p);
        CHECK(color_flip(f) == p);
        std::set<std::string> flipped, direct;
        for (const auto& m : legal_moves(p)) flipped.insert(to_uci(color_flip(m)));
        for (const auto& m : legal_moves(f)) direct.insert(to_uci(m));
        CHECK(flipped == direct);
    }
}
