#include <algorithm>
#include <cctype>

#include "cspace/notation.hpp"

namespace cspace::notation {

namespace {

struct SanToken {
    std::string text;
    int line = 0;
    int column = 0;
};

struct RawGame {
    std::vector<std::pair<std::string, std::string>> headers;
    std::vector<SanToken> moves;
    std::string result;
    bool has_content() const { return !headers.empty() || !moves.empty() || !result.empty(); }
};

bool is_result(std::string_view s) { return s == "1-0" || s == "0-1" || s == "1/2-1/2" || s == "*"; }

bool symbol_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '+' || ch == '#' || ch == '=' ||
           ch == ':' || ch == '-' || ch == '/';
}

// Splits a document into games: header pairs plus mainline SAN tokens.
class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {
        if (text_.substr(0, 3) == "\xEF\xBB\xBF") advance(3);
    }

    std::vector<RawGame> run() {
        std::vector<RawGame> games;
        RawGame current;
        int depth = 0;
        auto finish = [&] {
            if (current.has_content()) games.push_back(std::move(current));
            current = RawGame{};
            depth = 0;
        };
        while (skip_space(), pos_ < text_.size()) {
            char ch = text_[pos_];
            if (ch == '%' && column_ == 1) {
                skip_line();
            } else if (ch == ';') {
                skip_line();
            } else if (ch == '{') {
                skip_comment();
            } else if (ch == '[') {
                if (depth > 0) error("header inside a variation");
                if (!current.moves.empty() || !current.result.empty()) finish();
                current.headers.push_back(read_header());
            } else if (ch == '(') {
                ++depth;
                advance(1);
            } else if (ch == ')') {
                if (depth == 0) error("unbalanced ')'");
                --depth;
                advance(1);
            } else if (ch == '$') {
                advance(1);
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) error("bad NAG");
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance(1);
            } else if (ch == '.' || ch == '!' || ch == '?') {
                advance(1);
            } else if (ch == '*') {
                advance(1);
                if (depth == 0) {
                    current.result = "*";
                    finish();
                }
            } else if (symbol_char(ch)) {
                int line = line_, column = column_;
                std::size_t start = pos_;
                while (pos_ < text_.size() && symbol_char(text_[pos_])) advance(1);
                std::string symbol(text_.substr(start, pos_ - start));
                // "exd6 e.p." style suffix.
                if (symbol == "e" && text_.substr(pos_, 3) == ".p.") {
                    advance(3);
                    continue;
                }
                if (depth > 0) continue;
                if (is_result(symbol)) {
                    current.result = symbol;
                    finish();
                } else if (std::all_of(symbol.begin(), symbol.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                    continue;  // move number
                } else {
                    current.moves.push_back({symbol, line, column});
                }
            } else {
                error(std::string("unexpected character '") + ch + "'");
            }
        }
        if (depth > 0) error("unterminated variation");
        finish();
        return games;
    }

private:
    [[noreturn]] void error(const std::string& what) const { throw PgnSyntaxError(what, line_, column_); }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
    }

    void skip_line() {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
    }

    void skip_comment() {
        int line = line_, column = column_;
        while (pos_ < text_.size() && text_[pos_] != '}') advance(1);
        if (pos_ >= text_.size()) throw PgnSyntaxError("unterminated comment", line, column);
        advance(1);
    }

    std::pair<std::string, std::string> read_header() {
        int line = line_, column = column_;
        advance(1);  // '['
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            advance(1);
        }
        std::string key(text_.substr(start, pos_ - start));
        if (key.empty()) error("missing header name");
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != '"') error("expected quoted header value");
        advance(1);
        std::string value;
        while (true) {
            if (pos_ >= text_.size() || text_[pos_] == '\n') {
                throw PgnSyntaxError("unterminated header value", line, column);
            }
            char ch = text_[pos_];
            if (ch == '"') break;
            if (ch == '\\' && pos_ + 1 < text_.size()) {
                advance(1);
                ch = text_[pos_];
            }
            value += ch;
            advance(1);
        }
        advance(1);  // closing quote
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) advance(1);
        if (pos_ >= text_.size() || text_[pos_] != ']') error("expected ']' after header");
        advance(1);
        return {key, value};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

std::string expected_result(const Position& final_position) {
    switch (chess::game_result(final_position)) {
        case chess::GameResult::Checkmate: return final_position.side_to_move() == chess::Color::White ? "0-1" : "1-0";
        case chess::GameResult::Stalemate: return "1/2-1/2";
        default: return "";
    }
}

GameRecord resolve(RawGame raw, int game_index) {
    GameRecord record;
    record.headers = std::move(raw.headers);
    record.result_token = raw.result;
    std::string fen = record.header("FEN");
    Position p = Position::start();
    if (!fen.empty()) {
        try {
            p = chess::parse_fen(fen);
        } catch (const chess::FenError& e) {
            throw PgnMoveError(std::string("invalid FEN header: ") + e.what(), game_index, 0);
        }
    }
    record.initial = p;
    for (const SanToken& tok : raw.moves) {
        Move m;
        try {
            m = parse_san(p, tok.text);
        } catch (const SanError& e) {
            throw PgnMoveError(std::string(e.what()) + " at line " + std::to_string(tok.line) + ", column " +
                                   std::to_string(tok.column),
                               game_index, p.fullmove_number());
        }
        record.moves.push_back(m);
        p = chess::make_move_unchecked(p, m);
    }
    std::string expected = expected_result(p);
    if (!expected.empty() && !record.result_token.empty() && record.result_token != "*" &&
        record.result_token != expected) {
        record.warnings.push_back("result token " + record.result_token + " disagrees with final position (" +
                                  expected + ")");
    }
    return record;
}

}  // namespace

std::string GameRecord::header(std::string_view key) const {
    for (const auto& [k, v] : headers) {
        if (k == key) return v;
    }
    return {};
}

std::vector<Position> GameRecord::replay() const {
    std::vector<Position> out{initial};
    out.reserve(moves.size() + 1);
    for (const Move& m : moves) out.push_back(chess::apply_move(out.back(), m));
    return out;
}

std::vector<GameRecord> parse_pgn(std::string_view text) {
    std::vector<GameRecord> out;
    auto raw = Lexer(text).run();
    for (std::size_t i = 0; i < raw.size(); ++i) out.push_back(resolve(std::move(raw[i]), static_cast<int>(i) + 1));
    return out;
}

std::vector<ParsedGame> parse_pgn_games(std::string_view text) {
    std::vector<ParsedGame> out;
    auto raw = Lexer(text).run();
    for (std::size_t i = 0; i < raw.size(); ++i) {
        ParsedGame g;
        g.index = static_cast<int>(i) + 1;
        try {
            g.record = std::make_unique<GameRecord>(resolve(std::move(raw[i]), g.index));
        } catch (const PgnMoveError& e) {
            g.error = e.what();
        }
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace cspace::notation
