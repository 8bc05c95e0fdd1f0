#pragma once

#include "cfnl/numeric.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cfnl::fft {

/// Iterative radix-2 transform of a power-of-two length sequence.
/// out[k] = sum_j in[j] exp(sign * 2 pi i jk / N), sign = +1 or -1. Unnormalized.
class Radix2 {
public:
    explicit Radix2(std::size_t size);

    std::size_t size() const { return size_; }
    void transform(std::span<cplx> data, int sign) const;

private:
    std::size_t size_;
    std::vector<cplx> twiddles_;  // exp(-2 pi i k / N), k < N/2
    std::vector<std::size_t> bitrev_;
};

/// Arbitrary-length DFT through the chirp-z (Bluestein) identity
/// jk = (j^2 + k^2 - (k-j)^2) / 2, reduced to one radix-2 convolution.
class Bluestein {
public:
    explicit Bluestein(std::size_t size);

    std::size_t size() const { return size_; }
    std::vector<cplx> transform(std::span<const cplx> input, int sign) const;

private:
    std::size_t size_;
    Radix2 conv_;
    std::vector<cplx> chirp_;           // exp(-pi i j^2 / N)
    std::vector<cplx> kernel_spectrum_;  // FFT of conj(chirp), wrapped
};

std::size_t next_pow2(std::size_t n);

}  // namespace cfnl::fft
