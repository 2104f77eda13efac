#include <arm_neon.h>

#include "sctkit/kernels.hpp"

namespace sctkit::kernels {

namespace {

void or_into_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_u64(dst + i, vorrq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
    for (; i < n; ++i) dst[i] |= src[i];
}

inline bool nonzero(uint64x2_t v) { return (vgetq_lane_u64(v, 0) | vgetq_lane_u64(v, 1)) != 0; }

bool subset_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        if (nonzero(vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
    for (; i < n; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

bool equal_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        if (nonzero(veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return false;
    for (; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool intersects_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        if (nonzero(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)))) return true;
    for (; i < n; ++i)
        if (a[i] & b[i]) return true;
    return false;
}

const Table kNeon{Isa::Neon, or_into_neon, subset_neon, equal_neon, intersects_neon};

}  // namespace

const Table* neon_table() { return &kNeon; }

}  // namespace sctkit::kernels
