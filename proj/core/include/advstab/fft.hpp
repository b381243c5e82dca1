#pragma once

#include <complex>
#include <vector>

namespace advstab {

/// In-place iterative radix-2 complex FFT. Length must be a power of two,
/// which the grid invariant guarantees for all fields in this project.
void fft(std::vector<std::complex<double>>& a, bool inverse);

/// Forward/inverse 2D transform of an n-by-n row-major complex array.
void fft2(std::vector<std::complex<double>>& a, int n, bool inverse);

/// Circular convolution of two real arrays of equal power-of-two length
/// (1D) or n-by-n layout (2D with n*n entries).
std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b);
std::vector<double> circular_convolve_2d(const std::vector<double>& a,
                                         const std::vector<double>& b, int n);

} // namespace advstab
