#pragma once

#include <cstddef>
#include <cstdint>

namespace sctkit::kernels {

enum class Isa { Scalar, Avx2, Neon };

// Word-array primitives used by the bit-matrix code. Every entry point works
// on n 64-bit words; the arrays may alias only where noted.
struct Table {
    Isa isa;
    // dst |= src
    void (*or_into)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
    // a is a subset of b
    bool (*subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    bool (*equal)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    // a & b != 0
    bool (*intersects)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
};

const Table& scalar();
// nullptr when the build or the CPU lacks the instruction set.
const Table* avx2();
const Table* neon();

// The table picked at startup: the widest one the running CPU supports.
const Table& active();
// Overrides the selection; returns false if the requested set is unavailable.
bool select(Isa isa);
const char* name(Isa isa);

inline void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
    active().or_into(dst, src, n);
}
inline bool subset(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    return active().subset(a, b, n);
}
inline bool equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    return active().equal(a, b, n);
}
inline bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    return active().intersects(a, b, n);
}

}  // namespace sctkit::kernels
