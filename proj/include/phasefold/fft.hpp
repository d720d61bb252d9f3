#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace phasefold::fft {

using cplx = std::complex<double>;

// Unnormalized in-place transforms: forward uses exp(-2 pi i jk/N), inverse exp(+2 pi i jk/N).
void forward(std::span<cplx> data);
void inverse(std::span<cplx> data);

// Row-major n0 x n1 arrays.
void forward_2d(std::span<cplx> data, std::size_t n0, std::size_t n1);
void inverse_2d(std::span<cplx> data, std::size_t n0, std::size_t n1);

}  // namespace phasefold::fft
