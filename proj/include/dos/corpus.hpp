#pragma once

#include <cstdint>
#include <vector>

#include "dos/tridiag.hpp"

namespace dos {

// splitmix64: tiny fully-specified generator, so random test matrices are
// byte-identical across platforms and standard-library versions.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [-1, 1] from the top 53 bits.
inline double uniform_pm1(std::uint64_t& state) {
    return 2.0 * (static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53) - 1.0;
}

// Symmetric tridiagonal matrix with entries uniform in [-1, 1].
inline SymTriMatrix random_symtri(std::uint64_t seed, std::size_t dim) {
    std::uint64_t state = seed;
    SymTriMatrix m;
    m.diag.resize(dim);
    m.offdiag.resize(dim > 0 ? dim - 1 : 0);
    for (auto& v : m.diag) v = uniform_pm1(state);
    for (auto& v : m.offdiag) v = uniform_pm1(state);
    return m;
}

// 100 matrix sizes spanning 5..200 (inclusive ends, evenly spread).
inline std::vector<std::size_t> corpus_dims() {
    std::vector<std::size_t> dims(100);
    for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = 5 + (i * 195 + 50) / 99;
    dims.front() = 5;
    dims.back() = 200;
    return dims;
}

}  // namespace dos
