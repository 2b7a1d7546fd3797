#include "cspace/chess/types.hpp"

namespace cspace::chess {

std::string_view to_string(Color c) noexcept { return c == Color::White ? "white" : "black"; }

char to_fen_char(Piece p) noexcept {
    constexpr std::string_view letters = "PNBRQK";
    char ch = letters[index_of(p.kind)];
    return p.color == Color::White ? ch : static_cast<char>(ch - 'A' + 'a');
}

std::optional<Piece> piece_from_fen_char(char c) noexcept {
    Color color = (c >= 'a' && c <= 'z') ? Color::Black : Color::White;
    char upper = color == Color::Black ? static_cast<char>(c - 'a' + 'A') : c;
    switch (upper) {
        case 'P': return Piece{color, PieceKind::Pawn};
        case 'N': return Piece{color, PieceKind::Knight};
        case 'B': return Piece{color, PieceKind::Bishop};
        case 'R': return Piece{color, PieceKind::Rook};
        case 'Q': return Piece{color, PieceKind::Queen};
        case 'K': return Piece{color, PieceKind::King};
        default: return std::nullopt;
    }
}

std::optional<Square> Square::parse(std::string_view name) noexcept {
    if (name.size() != 2) return std::nullopt;
    int file = name[0] - 'a';
    int rank = name[1] - '1';
    if (file < 0 || file > 7 || rank < 0 || rank > 7) return std::nullopt;
    return Square(file, rank);
}

std::string Square::name() const {
    return {static_cast<char>('a' + file()), static_cast<char>('1' + rank())};
}

std::string to_uci(const Move& m) {
    std::string s = m.from.name() + m.to.name();
    if (m.promotion) s += static_cast<char>(to_fen_char(Piece{Color::Black, *m.promotion}));
    return s;
}

}  // namespace cspace::chess
