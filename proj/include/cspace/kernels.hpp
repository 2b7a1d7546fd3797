#pragma once

// Data-parallel inner loops over trajectories stored column-major (one
// contiguous column per quality dimension, one row per ply).
//
// Each kernel has a portable scalar reference and, on x86-64, an AVX2
// variant that vectorises across plies. Variants accumulate every row in
// the same order and avoid fused multiply-add, so their outputs are
// bit-identical to the scalar reference.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace cspace::kernels {

inline constexpr int kDims = 7;

struct ColumnsView {
    std::array<const double*, kDims> column{};
    std::size_t rows = 0;
};

struct MutableColumnsView {
    std::array<double*, kDims> column{};
    std::size_t rows = 0;
};

/// Owning column-major block.
class Columns {
public:
    Columns() = default;
    explicit Columns(std::size_t rows) : rows_(rows) {
        for (auto& c : data_) c.assign(rows, 0.0);
    }
    std::size_t rows() const noexcept { return rows_; }
    double& at(int dim, std::size_t row) { return data_[dim][row]; }
    double at(int dim, std::size_t row) const { return data_[dim][row]; }
    ColumnsView view() const noexcept {
        ColumnsView v;
        for (int d = 0; d < kDims; ++d) v.column[d] = data_[d].data();
        v.rows = rows_;
        return v;
    }
    MutableColumnsView mutable_view() noexcept {
        MutableColumnsView v;
        for (int d = 0; d < kDims; ++d) v.column[d] = data_[d].data();
        v.rows = rows_;
        return v;
    }

private:
    std::size_t rows_ = 0;
    std::array<std::vector<double>, kDims> data_;
};

/// out = clamp(raw / scale + offset, 0, 1) per dimension.
struct Normalisation {
    std::array<double, kDims> scale{};
    std::array<double, kDims> offset{};
};

/// Axis-aligned box restricted to the dimensions set in `mask`.
struct BoxQuery {
    std::array<double, kDims> lo{};
    std::array<double, kDims> hi{};
    std::array<double, kDims> centre{};
    std::array<double, kDims> halfwidth{};
    std::uint8_t mask = 0;

    bool declared(int dim) const noexcept { return (mask >> dim) & 1U; }
    int declared_count() const noexcept;
};

BoxQuery make_box(const std::array<double, kDims>& lo, const std::array<double, kDims>& hi, std::uint8_t mask);

struct KernelTable {
    std::string_view name;
    void (*normalise)(ColumnsView raw, const Normalisation& norm, MutableColumnsView out);
    /// Centred moving average; edge rows average over the rows available.
    void (*moving_average)(ColumnsView in, int window, MutableColumnsView out);
    /// Interval-scaled distance to the box centre, one value per row.
    void (*scaled_distance)(ColumnsView in, const BoxQuery& box, double* out);
    /// 1 where every declared dimension lies in its closed interval.
    void (*membership)(ColumnsView in, const BoxQuery& box, std::uint8_t* out);
};

const KernelTable& scalar_kernels() noexcept;

/// AVX2 table, or nullptr when not compiled in or not supported by the CPU.
const KernelTable* avx2_kernels() noexcept;

/// Selected once: CONCEPT_SPACE_KERNELS=scalar forces the reference path,
/// otherwise the widest supported variant is used.
const KernelTable& active() noexcept;

/// Every variant usable on this machine, scalar first.
std::vector<const KernelTable*> available() noexcept;

}  // namespace cspace::kernels
