#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../oracle/naive_chess.hpp"
#include "../support.hpp"
#include "cspace/encoder.hpp"
#include "cspace/notation.hpp"

using namespace cspace;
using cspace::chess::parse_fen;
using cspace::chess::to_fen;

namespace {

Position after(std::initializer_list<const char*> sans) {
    Position p = Position::start();
    for (const char* s : sans) p = chess::apply_move(p, notation::parse_san(p, s));
    return p;
}

}  // namespace

TEST_CASE("raw examples") {
    Position s = Position::start();
    CHECK(raw_material(s, Color::White) == 0);
    CHECK(raw_mobility(s, Color::White) == 20);
    CHECK(raw_mobility(s, Color::Black) == 20);
    Position e4 = after({"e4"});
    CHECK(raw_control(e4, Color::White) == 2);
    CHECK(raw_space(e4, Color::White) == 0);
    Position qh5 = after({"e4", "e5", "Qh5"});
    CHECK(raw_pressure(qh5, Color::White) == 3);
}

TEST_CASE("start encoding") {
    DualVector v = encode_both(Position::start());
    CHECK(v.white.values == v.black.values);
    CHECK(v.white[DimensionId::MAT] == 0.5);
    CHECK(v.white[DimensionId::MOB] == doctest::Approx(20.0 / 60.0).epsilon(1e-15));
    CHECK(v.white.perspective == Color::White);
    CHECK(v.black.perspective == Color::Black);
}

TEST_CASE("domains") {
    CHECK(domain_of(DimensionId::CTR) == DomainId::Territory);
    CHECK(domain_of(DimensionId::FLO) == DomainId::Territory);
    CHECK(domain_of(DimensionId::MAT) == DomainId::Force);
    CHECK(domain_of(DimensionId::MOB) == DomainId::Force);
    CHECK(domain_of(DimensionId::SPA) == DomainId::Force);
    CHECK(domain_of(DimensionId::PRS) == DomainId::Conflict);
    CHECK(domain_of(DimensionId::VUL) == DomainId::Conflict);
    for (DimensionId d : kAllDimensions) CHECK(parse_dimension(to_string(d)) == d);
    CHECK_FALSE(parse_dimension("XYZ"));
}

TEST_CASE("normalisation clamps") {
    RawFeatures r;
    r.material = 15;
    r.mobility = 90;
    r.vulnerability = 4;
    r.control = 6;
    r.flow = 0.25;
    r.pressure = 30;
    r.space = 2;
    PerspectiveVector v = normalise(r, Color::White);
    CHECK(v[DimensionId::MAT] == 1.0);
    CHECK(v[DimensionId::MOB] == 1.0);
    CHECK(v[DimensionId::VUL] == 0.25);
    CHECK(v[DimensionId::CTR] == 0.5);
    CHECK(v[DimensionId::FLO] == 0.25);
    CHECK(v[DimensionId::PRS] == 1.0);
    CHECK(v[DimensionId::SPA] == 0.25);
    r.material = -12;
    CHECK(normalise(r, Color::White)[DimensionId::MAT] == 0.0);
}

TEST_CASE("raw features equal brute-force oracles") {
    for (const auto& p : testsupport::sample_positions(300, 99)) {
        auto b = oracle::from_fen(to_fen(p));
        for (Color c : {Color::White, Color::Black}) {
            const bool w = c == Color::White;
            RawFeatures r = raw_features(p, c);
            CHECK(r.mobility == oracle::mobility(b, w));
            CHECK(r.control == oracle::control(b, w));
            CHECK(r.pressure == oracle::pressure(b, w));
            CHECK(r.material == oracle::material(b, w));
            CHECK(r.space == oracle::space(b, w));
            CHECK(r.vulnerability == oracle::vulnerability(b, w));
            CHECK(r.flow == oracle::flow(b, w));
        }
    }
}

TEST_CASE("range, flip equivariance and MAT antisymmetry") {
    for (const auto& p : testsupport::sample_positions(300, 1234)) {
        DualVector v = encode_both(p);
        for (double x : v.white.values) CHECK((x >= 0.0 && x <= 1.0));
        for (double x : v.black.values) CHECK((x >= 0.0 && x <= 1.0));
        DualVector f = encode_both(chess::color_flip(p));
        CHECK(f.white.values == v.black.values);
        CHECK(f.black.values == v.white.values);
        if (std::abs(raw_material(p, Color::White)) <= 10) {
            CHECK(v.white[DimensionId::MAT] + v.black[DimensionId::MAT] == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("encoding is pure") {
    for (const auto& p : testsupport::sample_positions(50, 8)) {
        CHECK(encode_position(p, Color::White) == encode_position(p, Color::White));
        CHECK(encode_position(p, Color::Black) == encode_both(p).black);
    }
}

TEST_CASE("batch normalisation matches per-position") {
    std::vector<RawFeatures> raws;
    std::vector<PerspectiveVector> single;
    for (const auto& p : testsupport::sample_positions(101, 77)) {
        raws.push_back(raw_features(p, Color::Black));
        single.push_back(encode_position(p, Color::Black));
    }
    for (const auto* table : kernels::available()) {
        auto batch = normalise_all(raws, Color::Black, *table);
        REQUIRE(batch.size() == single.size());
        for (std::size_t i = 0; i < batch.size(); ++i) CHECK(batch[i] == single[i]);
    }
}
