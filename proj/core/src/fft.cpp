#include "advstab/fft.hpp"

#include <cmath>
#include <numbers>

#include "advstab/error.hpp"

namespace advstab {

void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw InvalidParameter("fft: length must be a power of two");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv_n;
    }
}

void fft2(std::vector<std::complex<double>>& a, int n, bool inverse) {
    std::vector<std::complex<double>> row(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(j) * n + i];
        fft(row, inverse);
        for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(j) * n + i] = row[static_cast<std::size_t>(i)];
    }
    std::vector<std::complex<double>> col(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) col[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j) * n + i];
        fft(col, inverse);
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j) * n + i] = col[static_cast<std::size_t>(j)];
    }
}

std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw InvalidParameter("circular_convolve: length mismatch");
    std::vector<std::complex<double>> fa(a.begin(), a.end());
    std::vector<std::complex<double>> fb(b.begin(), b.end());
    fft(fa, false);
    fft(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft(fa, true);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fa[i].real();
    return out;
}

std::vector<double> circular_convolve_2d(const std::vector<double>& a,
                                         const std::vector<double>& b, int n) {
    const std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    if (a.size() != m || b.size() != m)
        throw InvalidParameter("circular_convolve_2d: size mismatch");
    std::vector<std::complex<double>> fa(a.begin(), a.end());
    std::vector<std::complex<double>> fb(b.begin(), b.end());
    fft2(fa, n, false);
    fft2(fb, n, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft2(fa, n, true);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = fa[i].real();
    return out;
}

} // namespace advstab
