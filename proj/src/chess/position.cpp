#include "cspace/chess/position.hpp"

#include <bit>
#include <charconv>
#include <sstream>

#include "attacks.hpp"

namespace cspace::chess {

using detail::Bitboard;

Position::Position() { board_.fill(-1); }

Position Position::start() { return parse_fen(kStartFen); }

std::optional<Piece> Position::piece_at(Square s) const noexcept {
    int code = board_[s.index()];
    if (code < 0) return std::nullopt;
    return Piece{static_cast<Color>(code / 6), static_cast<PieceKind>(code % 6)};
}

Square Position::king_square(Color c) const {
    Bitboard k = pieces(c, PieceKind::King);
    if (k == 0) throw std::logic_error("position has no king");
    return Square::from_index(std::countr_zero(k));
}

void Position::put(Square s, Piece p) noexcept {
    remove(s);
    by_color_[index_of(p.color)] |= s.bit();
    by_kind_[index_of(p.kind)] |= s.bit();
    board_[s.index()] = static_cast<std::int8_t>(index_of(p.color) * 6 + index_of(p.kind));
}

void Position::remove(Square s) noexcept {
    int code = board_[s.index()];
    if (code < 0) return;
    by_color_[code / 6] &= ~s.bit();
    by_kind_[code % 6] &= ~s.bit();
    board_[s.index()] = -1;
}

void Position::validate() const {
    for (Color c : {Color::White, Color::Black}) {
        int kings = std::popcount(pieces(c, PieceKind::King));
        if (kings != 1) {
            throw FenError("illegal placement: " + std::string(to_string(c)) + " has " + std::to_string(kings) +
                           " kings");
        }
    }
    if (by_kind_[index_of(PieceKind::Pawn)] & (detail::kRank1 | detail::kRank8)) {
        throw FenError("illegal placement: pawn on first or last rank");
    }
    auto require = [&](bool right, Color c, PieceKind k, Square s, const char* token) {
        if (!right) return;
        auto piece = piece_at(s);
        if (!piece || piece->color != c || piece->kind != k) {
            throw FenError(std::string("invalid castling token '") + token + "': pieces not on home squares");
        }
    };
    using namespace squares;
    require(castling_.white_kingside, Color::White, PieceKind::King, e1, "K");
    require(castling_.white_kingside, Color::White, PieceKind::Rook, h1, "K");
    require(castling_.white_queenside, Color::White, PieceKind::King, e1, "Q");
    require(castling_.white_queenside, Color::White, PieceKind::Rook, a1, "Q");
    require(castling_.black_kingside, Color::Black, PieceKind::King, e8, "k");
    require(castling_.black_kingside, Color::Black, PieceKind::Rook, h8, "k");
    require(castling_.black_queenside, Color::Black, PieceKind::King, e8, "q");
    require(castling_.black_queenside, Color::Black, PieceKind::Rook, a8, "q");
    if (ep_) {
        int expected_rank = side_ == Color::White ? 5 : 2;
        if (ep_->rank() != expected_rank) throw FenError("invalid en-passant square " + ep_->name());
        int dir = side_ == Color::White ? -1 : 1;
        Square pawn_sq(ep_->file(), ep_->rank() + dir);
        auto pawn = piece_at(pawn_sq);
        if (!pawn || pawn->kind != PieceKind::Pawn || pawn->color == side_ || piece_at(*ep_)) {
            throw FenError("invalid en-passant square " + ep_->name() + ": no pawn just double-pushed");
        }
    }
    if (halfmove_ < 0 || fullmove_ < 1) throw FenError("invalid move clocks");
    if (is_check(*this, opposite(side_))) throw FenError("illegal position: side not to move is in check");
}

namespace {

std::vector<std::string_view> split_fields(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < text.size() && !(text[j] == ' ' || text[j] == '\t' || text[j] == '\n' || text[j] == '\r')) ++j;
        if (j > i) out.push_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

int parse_count(std::string_view field, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw FenError(std::string("invalid ") + what + " '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

Position parse_fen(std::string_view text) {
    auto fields = split_fields(text);
    if (fields.size() != 6) {
        throw FenError("malformed FEN: expected 6 fields, got " + std::to_string(fields.size()));
    }
    Position p;

    int rank = 7, file = 0;
    for (char ch : fields[0]) {
        if (ch == '/') {
            if (file != 8) throw FenError("malformed placement: rank " + std::to_string(rank + 1) + " incomplete");
            if (--rank < 0) throw FenError("malformed placement: too many ranks");
            file = 0;
        } else if (ch >= '1' && ch <= '8') {
            file += ch - '0';
            if (file > 8) throw FenError("malformed placement: rank overflow");
        } else if (auto piece = piece_from_fen_char(ch)) {
            if (file > 7) throw FenError("malformed placement: rank overflow");
            p.put(Square(file, rank), *piece);
            ++file;
        } else {
            throw FenError(std::string("malformed placement: unexpected character '") + ch + "'");
        }
    }
    if (rank != 0 || file != 8) throw FenError("malformed placement: expected 8 ranks of 8 squares");

    if (fields[1] == "w") {
        p.set_side_to_move(Color::White);
    } else if (fields[1] == "b") {
        p.set_side_to_move(Color::Black);
    } else {
        throw FenError("invalid side to move '" + std::string(fields[1]) + "'");
    }

    CastlingRights rights;
    if (fields[2] != "-") {
        constexpr std::string_view order = "KQkq";
        std::size_t last = 0;
        bool first = true;
        for (char ch : fields[2]) {
            auto pos = order.find(ch);
            if (pos == std::string_view::npos || (!first && pos <= last)) {
                throw FenError("invalid castling token '" + std::string(fields[2]) + "'");
            }
            first = false;
            last = pos;
            switch (ch) {
                case 'K': rights.white_kingside = true; break;
                case 'Q': rights.white_queenside = true; break;
                case 'k': rights.black_kingside = true; break;
                case 'q': rights.black_queenside = true; break;
            }
        }
    }
    p.set_castling(rights);

    if (fields[3] != "-") {
        auto ep = Square::parse(fields[3]);
        if (!ep) throw FenError("invalid en-passant token '" + std::string(fields[3]) + "'");
        p.set_ep_square(ep);
    }

    p.set_clocks(parse_count(fields[4], "halfmove clock"), parse_count(fields[5], "fullmove number"));
    p.validate();
    return p;
}

std::string to_fen(const Position& p) {
    std::string out;
    for (int rank = 7; rank >= 0; --rank) {
        int empty = 0;
        for (int file = 0; file < 8; ++file) {
            auto piece = p.piece_at(Square(file, rank));
            if (!piece) {
                ++empty;
                continue;
            }
            if (empty) out += static_cast<char>('0' + empty);
            empty = 0;
            out += to_fen_char(*piece);
        }
        if (empty) out += static_cast<char>('0' + empty);
        if (rank) out += '/';
    }
    out += p.side_to_move() == Color::White ? " w " : " b ";
    const auto& c = p.castling();
    if (!c.any()) {
        out += '-';
    } else {
        if (c.white_kingside) out += 'K';
        if (c.white_queenside) out += 'Q';
        if (c.black_kingside) out += 'k';
        if (c.black_queenside) out += 'q';
    }
    out += ' ';
    out += p.ep_square() ? p.ep_square()->name() : "-";
    out += ' ' + std::to_string(p.halfmove_clock()) + ' ' + std::to_string(p.fullmove_number());
    return out;
}

std::uint64_t piece_attacks(Piece piece, Square from, std::uint64_t occupied) noexcept {
    const auto& t = detail::tables();
    int sq = from.index();
    switch (piece.kind) {
        case PieceKind::Pawn: return t.pawn[index_of(piece.color)][sq];
        case PieceKind::Knight: return t.knight[sq];
        case PieceKind::Bishop: return detail::bishop_attacks(sq, occupied);
        case PieceKind::Rook: return detail::rook_attacks(sq, occupied);
        case PieceKind::Queen: return detail::bishop_attacks(sq, occupied) | detail::rook_attacks(sq, occupied);
        case PieceKind::King: return t.king[sq];
    }
    return 0;
}

SquareSet attackers(const Position& p, Square sq, Color by) noexcept {
    const auto& t = detail::tables();
    int s = sq.index();
    Bitboard occ = p.occupied();
    Bitboard bishops_queens = p.pieces(by, PieceKind::Bishop) | p.pieces(by, PieceKind::Queen);
    Bitboard rooks_queens = p.pieces(by, PieceKind::Rook) | p.pieces(by, PieceKind::Queen);
    // A pawn of `by` attacks s iff a pawn of the other color on s would attack it back.
    Bitboard result = (t.pawn[index_of(opposite(by))][s] & p.pieces(by, PieceKind::Pawn)) |
                      (t.knight[s] & p.pieces(by, PieceKind::Knight)) | (t.king[s] & p.pieces(by, PieceKind::King)) |
                      (detail::bishop_attacks(s, occ) & bishops_queens) |
                      (detail::rook_attacks(s, occ) & rooks_queens);
    return SquareSet(result);
}

std::uint64_t attack_map(const Position& p, Color by) noexcept {
    Bitboard out = 0;
    Bitboard occ = p.occupied();
    for (Square s : SquareSet(p.pieces(by))) out |= piece_attacks(*p.piece_at(s), s, occ);
    return out;
}

bool is_check(const Position& p, Color c) noexcept {
    Bitboard k = p.pieces(c, PieceKind::King);
    if (k == 0) return false;
    return !attackers(p, Square::from_index(std::countr_zero(k)), opposite(c)).empty();
}

std::string_view to_string(GameResult r) noexcept {
    switch (r) {
        case GameResult::Ongoing: return "ongoing";
        case GameResult::Checkmate: return "checkmate";
        case GameResult::Stalemate: return "stalemate";
        case GameResult::DrawByRule: return "draw-by-rule";
    }
    return "ongoing";
}

bool insufficient_material(const Position& p) noexcept {
    Bitboard heavy = 0;
    for (Color c : {Color::White, Color::Black}) {
        heavy |= p.pieces(c, PieceKind::Pawn) | p.pieces(c, PieceKind::Rook) | p.pieces(c, PieceKind::Queen);
    }
    if (heavy) return false;
    Bitboard knights = p.pieces(Color::White, PieceKind::Knight) | p.pieces(Color::Black, PieceKind::Knight);
    Bitboard bishops = p.pieces(Color::White, PieceKind::Bishop) | p.pieces(Color::Black, PieceKind::Bishop);
    int minors = std::popcount(knights) + std::popcount(bishops);
    if (minors <= 1) return true;
    if (knights) return false;
    // Only bishops remain: a mate is impossible when they all share one square color.
    constexpr Bitboard kDark = 0xAA55AA55AA55AA55ULL;
    return (bishops & kDark) == 0 || (bishops & ~kDark) == 0;
}

GameResult game_result(const Position& p) {
    if (legal_moves(p).empty()) {
        return is_check(p, p.side_to_move()) ? GameResult::Checkmate : GameResult::Stalemate;
    }
    if (p.halfmove_clock() >= 100 || insufficient_material(p)) return GameResult::DrawByRule;
    return GameResult::Ongoing;
}

Position color_flip(const Position& p) {
    Position out;
    for (Square s : SquareSet(p.occupied())) {
        Piece piece = *p.piece_at(s);
        out.put(s.mirrored(), Piece{opposite(piece.color), piece.kind});
    }
    out.set_side_to_move(opposite(p.side_to_move()));
    const auto& c = p.castling();
    out.set_castling(CastlingRights{c.black_kingside, c.black_queenside, c.white_kingside, c.white_queenside});
    if (p.ep_square()) out.set_ep_square(p.ep_square()->mirrored());
    out.set_clocks(p.halfmove_clock(), p.fullmove_number());
    return out;
}

Move color_flip(const Move& m) {
    Move out = m;
    out.from = m.from.mirrored();
    out.to = m.to.mirrored();
    return out;
}

}  // namespace cspace::chess
