#include "cfnl/fft.hpp"

#include "cfnl/error.hpp"

#include <bit>
#include <cmath>

namespace cfnl::fft {

std::size_t next_pow2(std::size_t n) { return std::bit_ceil(std::max<std::size_t>(n, 1)); }

Radix2::Radix2(std::size_t size) : size_(size), twiddles_(size / 2), bitrev_(size) {
    if (size == 0 || !std::has_single_bit(size))
        throw Error(ErrorKind::out_of_range, "radix-2 length must be a power of two");
    for (std::size_t k = 0; k < size / 2; ++k) twiddles_[k] = unit_root(-static_cast<std::int64_t>(k), size);
    const int bits = std::countr_zero(size);
    for (std::size_t i = 0; i < size; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
        bitrev_[i] = r;
    }
}

void Radix2::transform(std::span<cplx> data, int sign) const {
    if (data.size() != size_) throw Error(ErrorKind::out_of_range, "radix-2 length mismatch");
    for (std::size_t i = 0; i < size_; ++i)
        if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
    for (std::size_t len = 2; len <= size_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = size_ / len;
        for (std::size_t start = 0; start < size_; start += len) {
            for (std::size_t j = 0; j < half; ++j) {
                cplx w = twiddles_[j * stride];
                if (sign > 0) w = std::conj(w);
                const cplx u = data[start + j];
                const cplx v = data[start + j + half] * w;
                data[start + j] = u + v;
                data[start + j + half] = u - v;
            }
        }
    }
}

Bluestein::Bluestein(std::size_t size)
    : size_(size), conv_(next_pow2(2 * std::max<std::size_t>(size, 1) - 1)), chirp_(size) {
    if (size == 0) throw Error(ErrorKind::out_of_range, "transform length must be positive");
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(size);
    for (std::size_t j = 0; j < size; ++j) {
        const std::uint64_t jj = (static_cast<std::uint64_t>(j) * j) % two_n;
        chirp_[j] = unit_root(-static_cast<std::int64_t>(jj), two_n);
    }
    const std::size_t m = conv_.size();
    kernel_spectrum_.assign(m, cplx{});
    kernel_spectrum_[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < size; ++j) {
        kernel_spectrum_[j] = std::conj(chirp_[j]);
        kernel_spectrum_[m - j] = std::conj(chirp_[j]);
    }
    conv_.transform(kernel_spectrum_, -1);
}

std::vector<cplx> Bluestein::transform(std::span<const cplx> input, int sign) const {
    if (input.size() != size_) throw Error(ErrorKind::out_of_range, "Bluestein length mismatch");
    // The kernel is built for sign = -1; conjugating in and out flips the sign.
    const bool flip = sign > 0;
    const std::size_t m = conv_.size();
    std::vector<cplx> buf(m, cplx{});
    for (std::size_t j = 0; j < size_; ++j) {
        const cplx x = flip ? std::conj(input[j]) : input[j];
        buf[j] = x * chirp_[j];
    }
    conv_.transform(buf, -1);
    for (std::size_t k = 0; k < m; ++k) buf[k] *= kernel_spectrum_[k];
    conv_.transform(buf, +1);
    const double scale = 1.0 / static_cast<double>(m);
    std::vector<cplx> out(size_);
    for (std::size_t k = 0; k < size_; ++k) {
        const cplx y = buf[k] * scale * chirp_[k];
        out[k] = flip ? std::conj(y) : y;
    }
    return out;
}

}  // namespace cfnl::fft
