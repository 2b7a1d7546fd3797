#pragma once

#include <algorithm>
#include <bit>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cspace/chess/position.hpp"
#include "cspace/notation.hpp"
#include "cspace/trajectory.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) { return std::string(CSPACE_FIXTURE_DIR) + "/" + name; }

inline std::string data_path(const std::string& name) { return std::string(CSPACE_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_fixture(const std::string& name) { return read_file(fixture_path(name)); }

/// Every position of every replayed game in the master corpus.
inline const std::vector<cspace::chess::Position>& master_positions() {
    static const std::vector<cspace::chess::Position> all = [] {
        std::vector<cspace::chess::Position> out;
        for (const auto& g : cspace::notation::parse_pgn(read_fixture("masters.pgn"))) {
            auto ps = g.replay();
            out.insert(out.end(), ps.begin(), ps.end());
        }
        return out;
    }();
    return all;
}

/// Deterministic sample without replacement (fixed seed).
inline std::vector<cspace::chess::Position> sample_positions(std::size_t n, unsigned seed = 20240601u) {
    std::vector<cspace::chess::Position> pool = master_positions();
    std::mt19937 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    if (pool.size() > n) pool.resize(n);
    return pool;
}

/// Positions past the opening with at least a few legal moves.
inline std::vector<cspace::chess::Position> sample_midgame(std::size_t n, unsigned seed = 7u) {
    std::vector<cspace::chess::Position> pool;
    for (const auto& p : master_positions()) {
        if (p.fullmove_number() >= 10 && std::popcount(p.occupied()) >= 12) pool.push_back(p);
    }
    std::mt19937 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    if (pool.size() > n) pool.resize(n);
    return pool;
}

/// Trajectories of every game in a fixture file, ids "<stem>-<n>".
inline std::vector<cspace::DualTrajectory> fixture_trajectories(const std::string& name) {
    std::vector<cspace::DualTrajectory> out;
    const std::string stem = name.substr(0, name.rfind('.'));
    int n = 0;
    for (const auto& g : cspace::notation::parse_pgn(read_fixture(name))) {
        out.push_back(cspace::build_trajectories(g, stem + "-" + std::to_string(++n)));
    }
    return out;
}

}  // namespace testsupport
