#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace dnls::fft {

// Unnormalized complex DFTs backed by FFTW. Plans are created once per size
// with FFTW_ESTIMATE, so results are bit-reproducible from run to run.
//
//   forward:  out_k = sum_j in_j e^{-2 pi i jk/n}
//   backward: out_j = sum_k in_k e^{+2 pi i jk/n}
//
// Safe to call concurrently. in and out may alias.
void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace dnls::fft
