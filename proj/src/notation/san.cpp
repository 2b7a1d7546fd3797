#include <algorithm>
#include <optional>

#include "cspace/notation.hpp"

namespace cspace::notation {

using chess::Color;
using chess::MoveFlag;
using chess::Piece;
using chess::PieceKind;
using chess::Square;

namespace {

std::optional<PieceKind> piece_letter(char ch) {
    switch (ch) {
        case 'N': return PieceKind::Knight;
        case 'B': return PieceKind::Bishop;
        case 'R': return PieceKind::Rook;
        case 'Q': return PieceKind::Queen;
        case 'K': return PieceKind::King;
        default: return std::nullopt;
    }
}

char letter_of(PieceKind k) {
    constexpr std::string_view letters = "PNBRQK";
    return letters[chess::index_of(k)];
}

struct SanParts {
    PieceKind piece = PieceKind::Pawn;
    std::optional<int> from_file;
    std::optional<int> from_rank;
    bool capture = false;
    Square to;
    std::optional<PieceKind> promotion;
};

[[noreturn]] void malformed(std::string_view token) {
    throw SanError(SanError::Kind::Malformed, "malformed SAN token '" + std::string(token) + "'");
}

SanParts split(std::string_view token, std::string_view original) {
    SanParts parts;
    // Promotion suffix: "=Q" or a bare trailing piece letter after a last-rank square.
    if (auto eq = token.find('='); eq != std::string_view::npos) {
        if (eq + 2 != token.size()) malformed(original);
        auto kind = piece_letter(token[eq + 1]);
        if (!kind || *kind == PieceKind::King) malformed(original);
        parts.promotion = kind;
        token = token.substr(0, eq);
    } else if (token.size() >= 3 && piece_letter(token.back()) && (token[token.size() - 2] == '8' || token[token.size() - 2] == '1')) {
        auto kind = piece_letter(token.back());
        if (*kind == PieceKind::King) malformed(original);
        parts.promotion = kind;
        token.remove_suffix(1);
    }
    if (token.size() < 2) malformed(original);
    auto to = Square::parse(token.substr(token.size() - 2));
    if (!to) malformed(original);
    parts.to = *to;
    std::string_view prefix = token.substr(0, token.size() - 2);
    if (!prefix.empty()) {
        if (auto kind = piece_letter(prefix.front())) {
            parts.piece = *kind;
            prefix.remove_prefix(1);
        }
    }
    if (!prefix.empty() && prefix.back() == 'x') {
        parts.capture = true;
        prefix.remove_suffix(1);
    }
    for (char ch : prefix) {
        if (ch >= 'a' && ch <= 'h' && !parts.from_file && !parts.from_rank) {
            parts.from_file = ch - 'a';
        } else if (ch >= '1' && ch <= '8' && !parts.from_rank) {
            parts.from_rank = ch - '1';
        } else {
            malformed(original);
        }
    }
    if (parts.promotion && parts.piece != PieceKind::Pawn) malformed(original);
    return parts;
}

}  // namespace

Move parse_san(const Position& p, std::string_view original) {
    std::string_view token = original;
    while (!token.empty() && (token.back() == '+' || token.back() == '#' || token.back() == '!' || token.back() == '?')) {
        token.remove_suffix(1);
    }
    if (token.empty()) malformed(original);

    const auto moves = chess::legal_moves(p);
    std::vector<Move> matches;

    if (token == "O-O" || token == "0-0" || token == "O-O-O" || token == "0-0-0") {
        MoveFlag wanted = token.size() == 3 ? MoveFlag::CastleKingside : MoveFlag::CastleQueenside;
        for (const Move& m : moves) {
            if (chess::has_flag(m.flags, wanted)) matches.push_back(m);
        }
    } else {
        const SanParts parts = split(token, original);
        for (const Move& m : moves) {
            if (m.to != parts.to || m.is_castle()) continue;
            if (p.piece_at(m.from)->kind != parts.piece) continue;
            if (parts.from_file && m.from.file() != *parts.from_file) continue;
            if (parts.from_rank && m.from.rank() != *parts.from_rank) continue;
            if (parts.capture && !m.is_capture()) continue;
            if (m.promotion != parts.promotion) continue;
            matches.push_back(m);
        }
    }

    if (matches.empty()) {
        throw SanError(SanError::Kind::NoMatch, "no legal move matches '" + std::string(original) + "'");
    }
    if (matches.size() > 1) {
        throw SanError(SanError::Kind::Ambiguous, "ambiguous move '" + std::string(original) + "' (" +
                                                      std::to_string(matches.size()) + " candidates)");
    }
    return matches.front();
}

std::string to_san(const Position& p, const Move& m) {
    std::string out;
    if (chess::has_flag(m.flags, MoveFlag::CastleKingside)) {
        out = "O-O";
    } else if (chess::has_flag(m.flags, MoveFlag::CastleQueenside)) {
        out = "O-O-O";
    } else {
        const Piece mover = *p.piece_at(m.from);
        if (mover.kind == PieceKind::Pawn) {
            if (m.is_capture()) out += static_cast<char>('a' + m.from.file());
        } else {
            out += letter_of(mover.kind);
            bool clash = false, same_file = false, same_rank = false;
            for (const Move& other : chess::legal_moves(p)) {
                if (other.to != m.to || other.from == m.from) continue;
                if (p.piece_at(other.from)->kind != mover.kind) continue;
                clash = true;
                same_file |= other.from.file() == m.from.file();
                same_rank |= other.from.rank() == m.from.rank();
            }
            if (clash) {
                if (!same_file) {
                    out += static_cast<char>('a' + m.from.file());
                } else if (!same_rank) {
                    out += static_cast<char>('1' + m.from.rank());
                } else {
                    out += m.from.name();
                }
            }
        }
        if (m.is_capture()) out += 'x';
        out += m.to.name();
        if (m.promotion) {
            out += '=';
            out += letter_of(*m.promotion);
        }
    }
    Position next = chess::make_move_unchecked(p, m);
    if (chess::is_check(next, next.side_to_move())) out += chess::legal_moves(next).empty() ? '#' : '+';
    return out;
}

}  // namespace cspace::notation
