#pragma once

#include <complex>
#include <vector>

namespace decon {

// Unnormalized d-dimensional DFT of a row-major array.
//   sign = +1:  X[j] = sum_n x[n] exp(+2 pi i <j, n>/N)
//   sign = -1:  conjugate kernel (divide by the grid size to invert).
// In-place; shape entries must be positive.
void fft_nd(std::vector<std::complex<double>>& data, const std::vector<int>& shape,
            int sign);

}  // namespace decon
