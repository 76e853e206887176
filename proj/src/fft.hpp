#pragma once

#include <complex>

#include "korteweg/fields.hpp"

namespace korteweg::detail {

// Out-of-place complex transforms over a grid. Plans are created once per
// (dim, n, direction) with FFTW_ESTIMATE | FFTW_UNALIGNED, so the same input
// always yields bitwise-identical output regardless of buffer alignment.
void fft_forward(const Grid& grid, const std::complex<double>* in, std::complex<double>* out);
void fft_backward(const Grid& grid, const std::complex<double>* in, std::complex<double>* out);

}  // namespace korteweg::detail
