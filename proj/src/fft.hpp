#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace optconv::detail {

/// c_j = (1/N) sum_k f_k exp(-2 pi i j k / N) for j = 0..N/2.
std::vector<std::complex<double>> forward_coeffs(std::span<const double> samples);

/// Samples at t_k = 2 pi k / N of sum_{|j| <= L} c_j e^{ijt}, with c_{-j} = conj(c_j)
/// and c = (c_0..c_L). Requires L < N/2.
std::vector<double> synthesize(std::span<const std::complex<double>> coeffs, std::size_t n);

}  // namespace optconv::detail
