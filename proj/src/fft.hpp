#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace opschur::fft {

std::size_t next_pow2(std::size_t n);

// In-place radix-2 Cooley-Tukey; a.size() must be a power of two. Forward uses
// the e^{-2*pi*i*nk/C} convention, inverse applies the 1/C scale.
void transform(std::vector<std::complex<double>>& a, bool inverse);

// Circular convolution of two equal-length power-of-two sequences.
std::vector<std::complex<double>> circular_convolve(
    std::vector<std::complex<double>> a, std::vector<std::complex<double>> b);

}  // namespace opschur::fft
