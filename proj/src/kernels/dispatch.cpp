#include <bit>
#include <cstdlib>
#include <string_view>

#include "cspace/kernels.hpp"

namespace cspace::kernels {

#if defined(CSPACE_HAVE_AVX2)
namespace avx2 {
const KernelTable& table() noexcept;
}
#endif

int BoxQuery::declared_count() const noexcept { return std::popcount(static_cast<unsigned>(mask)); }

BoxQuery make_box(const std::array<double, kDims>& lo, const std::array<double, kDims>& hi, std::uint8_t mask) {
    BoxQuery box;
    box.mask = mask;
    for (int d = 0; d < kDims; ++d) {
        if (!box.declared(d)) continue;
        box.lo[d] = lo[d];
        box.hi[d] = hi[d];
        box.centre[d] = (lo[d] + hi[d]) / 2.0;
        box.halfwidth[d] = (hi[d] - lo[d]) / 2.0;
    }
    return box;
}

const KernelTable* avx2_kernels() noexcept {
#if defined(CSPACE_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &avx2::table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable* selected = [] {
        const char* env = std::getenv("CONCEPT_SPACE_KERNELS");
        if (env && std::string_view(env) == "scalar") return &scalar_kernels();
        if (const KernelTable* wide = avx2_kernels()) return wide;
        return &scalar_kernels();
    }();
    return *selected;
}

std::vector<const KernelTable*> available() noexcept {
    std::vector<const KernelTable*> out{&scalar_kernels()};
    if (const KernelTable* wide = avx2_kernels()) out.push_back(wide);
    return out;
}

}  // namespace cspace::kernels
