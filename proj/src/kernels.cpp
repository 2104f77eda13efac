#include "sctkit/kernels.hpp"

#include <atomic>

namespace sctkit::kernels {

const Table* avx2_table();
const Table* neon_table();

namespace {

void or_into_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

bool subset_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

bool equal_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool intersects_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] & b[i]) return true;
    return false;
}

const Table kScalar{Isa::Scalar, or_into_scalar, subset_scalar, equal_scalar, intersects_scalar};

const Table* detect() {
    if (const Table* t = avx2()) return t;
    if (const Table* t = neon()) return t;
    return &kScalar;
}

std::atomic<const Table*>& current() {
    static std::atomic<const Table*> table{detect()};
    return table;
}

}  // namespace

const Table& scalar() { return kScalar; }

const Table* avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    return avx2_table();
#else
    return nullptr;
#endif
}

const Table* neon() {
#if defined(__aarch64__)
    return neon_table();
#else
    return nullptr;
#endif
}

const Table& active() { return *current().load(std::memory_order_relaxed); }

bool select(Isa isa) {
    const Table* t = nullptr;
    switch (isa) {
        case Isa::Scalar: t = &kScalar; break;
        case Isa::Avx2: t = avx2(); break;
        case Isa::Neon: t = neon(); break;
    }
    if (!t) return false;
    current().store(t, std::memory_order_relaxed);
    return true;
}

const char* name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "?";
}

#if !defined(__x86_64__) && !defined(_M_X64)
const Table* avx2_table() { return nullptr; }
#endif
#if !defined(__aarch64__)
const Table* neon_table() { return nullptr; }
#endif

}  // namespace sctkit::kernels
