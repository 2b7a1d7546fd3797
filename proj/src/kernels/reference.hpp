#pragma once

// Per-row reference arithmetic shared by the scalar kernels and the
// remainder loops of the vector kernels.

#include <algorithm>
#include <cmath>

#include "cspace/kernels.hpp"

namespace cspace::kernels::reference {

inline double normalise_one(double raw, double scale, double offset) {
    return std::clamp(raw / scale + offset, 0.0, 1.0);
}

inline double scaled_term(double x, double centre, double halfwidth) {
    if (halfwidth > 0.0) return (x - centre) / halfwidth;
    return x == centre ? 0.0 : 1.0 + std::fabs(x - centre);
}

inline double scaled_distance_row(const ColumnsView& in, std::size_t row, const BoxQuery& box, int declared) {
    if (declared == 0) return 0.0;
    double acc = 0.0;
    for (int d = 0; d < kDims; ++d) {
        if (!box.declared(d)) continue;
        double t = scaled_term(in.column[d][row], box.centre[d], box.halfwidth[d]);
        acc += t * t;
    }
    return std::sqrt(acc / declared);
}

inline std::uint8_t member_row(const ColumnsView& in, std::size_t row, const BoxQuery& box) {
    for (int d = 0; d < kDims; ++d) {
        if (!box.declared(d)) continue;
        double x = in.column[d][row];
        if (!(x >= box.lo[d] && x <= box.hi[d])) return 0;
    }
    return 1;
}

inline double moving_average_row(const double* column, std::size_t rows, std::size_t row, int half) {
    std::size_t lo = row >= static_cast<std::size_t>(half) ? row - half : 0;
    std::size_t hi = std::min(rows - 1, row + half);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += column[j];
    return sum / static_cast<double>(hi - lo + 1);
}

}  // namespace cspace::kernels::reference
