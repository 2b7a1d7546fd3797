#include "cspace/encoder.hpp"

#include <bit>

namespace cspace {

using chess::Piece;
using chess::PieceKind;
using chess::Square;
using chess::SquareSet;

namespace {

constexpr std::array<std::string_view, kDimensionCount> kDimensionNames{"MAT", "MOB", "VUL", "CTR",
                                                                        "FLO", "PRS", "SPA"};
constexpr std::array<std::string_view, 3> kDomainNames{"Territory", "Force", "Conflict"};

constexpr std::array<Square, 4> kCentre{chess::squares::d4, chess::squares::e4, chess::squares::d5,
                                        chess::squares::e5};

std::uint64_t non_king(const Position& p, Color c) { return p.pieces(c) & ~p.pieces(c, PieceKind::King); }

int value_sum(const Position& p, std::uint64_t mask) {
    int total = 0;
    for (Square s : SquareSet(mask)) total += p.piece_at(s)->value();
    return total;
}

std::uint64_t king_neighbourhood(const Position& p, Color owner) {
    return chess::piece_attacks(Piece{owner, PieceKind::King}, p.king_square(owner), 0);
}

}  // namespace

std::string_view to_string(DimensionId d) noexcept { return kDimensionNames[index_of(d)]; }
std::string_view to_string(DomainId d) noexcept { return kDomainNames[static_cast<int>(d)]; }

std::optional<DimensionId> parse_dimension(std::string_view name) noexcept {
    for (int i = 0; i < kDimensionCount; ++i) {
        if (kDimensionNames[i] == name) return static_cast<DimensionId>(i);
    }
    return std::nullopt;
}

std::optional<DomainId> parse_domain(std::string_view name) noexcept {
    for (int i = 0; i < 3; ++i) {
        if (kDomainNames[i] == name) return static_cast<DomainId>(i);
    }
    return std::nullopt;
}

int raw_material(const Position& p, Color c) {
    return value_sum(p, non_king(p, c)) - value_sum(p, non_king(p, chess::opposite(c)));
}

int raw_mobility(const Position& p, Color c) {
    Position synthetic = p;
    synthetic.set_side_to_move(c);
    synthetic.set_ep_square(std::nullopt);
    // With the opponent's king capturable the synthetic position is illegal.
    if (chess::is_check(synthetic, chess::opposite(c))) {
        return static_cast<int>(chess::pseudo_legal_moves(synthetic).size());
    }
    return static_cast<int>(chess::legal_moves(synthetic).size());
}

int raw_control(const Position& p, Color c) {
    int total = 0;
    for (Square sq : kCentre) {
        total += chess::attackers(p, sq, c).size();
        if (p.pieces(c) & sq.bit()) total += 1;
    }
    return total;
}

int raw_pressure(const Position& p, Color c) {
    const Color them = chess::opposite(c);
    const std::uint64_t attacked = chess::attack_map(p, c);
    int total = value_sum(p, attacked & non_king(p, them));

    // King zone: neighbours of the enemy king not occupied by the enemy.
    const std::uint64_t zone = king_neighbourhood(p, them) & ~p.pieces(them);
    const std::uint64_t occ = p.occupied();
    for (Square s : SquareSet(p.pieces(c))) {
        if (chess::piece_attacks(*p.piece_at(s), s, occ) & zone) total += 2;
    }
    return total;
}

int raw_space(const Position& p, Color c) {
    constexpr std::uint64_t kWhiteHalf = 0x00000000FFFFFFFFULL;
    const std::uint64_t far_half = c == Color::White ? ~kWhiteHalf : kWhiteHalf;
    return std::popcount(non_king(p, c) & far_half);
}

int raw_vulnerability(const Position& p, Color c) {
    const Color them = chess::opposite(c);
    int total = 0;
    for (Square s : SquareSet(non_king(p, c))) {
        if (!chess::attackers(p, s, them).empty() && chess::attackers(p, s, c).empty()) {
            total += p.piece_at(s)->value();
        }
    }
    const std::uint64_t zone = king_neighbourhood(p, c) & ~p.pieces(c);
    total += std::popcount(zone & chess::attack_map(p, them));
    return total;
}

double raw_flow(const Position& p, Color c) {
    const std::uint64_t pieces = non_king(p, c) & ~p.pieces(c, PieceKind::Pawn);
    int count = 0, defended = 0;
    for (Square s : SquareSet(pieces)) {
        ++count;
        if (!chess::attackers(p, s, c).empty()) ++defended;
    }
    return count == 0 ? 0.0 : static_cast<double>(defended) / static_cast<double>(count);
}

RawFeatures raw_features(const Position& p, Color c) {
    RawFeatures r;
    r.material = raw_material(p, c);
    r.mobility = raw_mobility(p, c);
    r.vulnerability = raw_vulnerability(p, c);
    r.control = raw_control(p, c);
    r.flow = raw_flow(p, c);
    r.pressure = raw_pressure(p, c);
    r.space = raw_space(p, c);
    return r;
}

const kernels::Normalisation& default_normalisation() noexcept {
    //                                                  MAT    MOB   VUL   CTR   FLO  PRS   SPA
    static const kernels::Normalisation norm{{20.0, 60.0, 16.0, 12.0, 1.0, 20.0, 8.0},
                                             {0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}};
    return norm;
}

namespace {

void store_raw(kernels::Columns& cols, std::size_t row, const RawFeatures& r) {
    cols.at(index_of(DimensionId::MAT), row) = r.material;
    cols.at(index_of(DimensionId::MOB), row) = r.mobility;
    cols.at(index_of(DimensionId::VUL), row) = r.vulnerability;
    cols.at(index_of(DimensionId::CTR), row) = r.control;
    cols.at(index_of(DimensionId::FLO), row) = r.flow;
    cols.at(index_of(DimensionId::PRS), row) = r.pressure;
    cols.at(index_of(DimensionId::SPA), row) = r.space;
}

}  // namespace

std::vector<PerspectiveVector> normalise_all(const std::vector<RawFeatures>& raw, Color perspective,
                                             const kernels::KernelTable& table) {
    kernels::Columns in(raw.size()), out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) store_raw(in, i, raw[i]);
    table.normalise(in.view(), default_normalisation(), out.mutable_view());
    std::vector<PerspectiveVector> vectors(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        vectors[i].perspective = perspective;
        for (int d = 0; d < kDimensionCount; ++d) vectors[i].values[d] = out.at(d, i);
    }
    return vectors;
}

PerspectiveVector normalise(const RawFeatures& raw, Color perspective) {
    return normalise_all({raw}, perspective).front();
}

PerspectiveVector encode_position(const Position& p, Color c) { return normalise(raw_features(p, c), c); }

DualVector encode_both(const Position& p) {
    return {encode_position(p, Color::White), encode_position(p, Color::Black)};
}

}  // namespace cspace
