#include "reference.hpp"

namespace cspace::kernels {

namespace {

void normalise(ColumnsView raw, const Normalisation& norm, MutableColumnsView out) {
    for (int d = 0; d < kDims; ++d) {
        for (std::size_t i = 0; i < raw.rows; ++i) {
            out.column[d][i] = reference::normalise_one(raw.column[d][i], norm.scale[d], norm.offset[d]);
        }
    }
}

void moving_average(ColumnsView in, int window, MutableColumnsView out) {
    int half = window / 2;
    for (int d = 0; d < kDims; ++d) {
        for (std::size_t i = 0; i < in.rows; ++i) {
            out.column[d][i] = reference::moving_average_row(in.column[d], in.rows, i, half);
        }
    }
}

void scaled_distance(ColumnsView in, const BoxQuery& box, double* out) {
    int declared = box.declared_count();
    for (std::size_t i = 0; i < in.rows; ++i) out[i] = reference::scaled_distance_row(in, i, box, declared);
}

void membership(ColumnsView in, const BoxQuery& box, std::uint8_t* out) {
    for (std::size_t i = 0; i < in.rows; ++i) out[i] = reference::member_row(in, i, box);
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table{"scalar", normalise, moving_average, scaled_distance, membership};
    return table;
}

}  // namespace cspace::kernels
