#pragma once

// In-place iterative radix-2 complex FFT. Sizes are powers of two throughout
// the library (profile grids 2^m, norm boxes 2^m), so no general-size plan
// machinery is needed.

#include <complex>
#include <stdexcept>
#include <vector>

namespace lca {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

// sign = -1: forward (sum f[j] e^{-2pi i jk/N}); sign = +1: inverse without 1/N
inline void fft_inplace(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / (double)len;
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// FFT along one axis of a row-major multi-dimensional array.
inline void fft_axis(std::vector<cplx>& data, const std::vector<std::size_t>& shape, std::size_t axis,
                     int sign) {
    std::size_t n = shape[axis];
    std::size_t stride = 1;
    for (std::size_t d = axis + 1; d < shape.size(); ++d) stride *= shape[d];
    std::size_t outer = data.size() / (n * stride);
    std::vector<cplx> line(n);
    for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t s = 0; s < stride; ++s) {
            std::size_t base = o * n * stride + s;
            for (std::size_t i = 0; i < n; ++i) line[i] = data[base + i * stride];
            fft_inplace(line, sign);
            for (std::size_t i = 0; i < n; ++i) data[base + i * stride] = line[i];
        }
}

inline void fft_nd(std::vector<cplx>& data, const std::vector<std::size_t>& shape, int sign) {
    for (std::size_t ax = 0; ax < shape.size(); ++ax) fft_axis(data, shape, ax, sign);
}

}  // namespace lca
