// features/fft.cc

// Copyright 2026  The senan authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "features/fft.h"

#include <cmath>

#include "util/error.h"

namespace senan {

void Fft(std::vector<std::complex<double>> *a) {
  size_t n = a->size();
  SENAN_CHECK(n != 0 && (n & (n - 1)) == 0, ErrorCode::kShapeMismatch,
              "FFT size must be a power of two");
  auto &x = *a;
  // bit-reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = -2.0 * M_PI / static_cast<double>(len);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = x[i + k];
        std::complex<double> v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

int NextPowerOfTwo(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> PowerSpectrum(const std::vector<double> &frame,
                                  int fft_size) {
  std::vector<std::complex<double>> buf(static_cast<size_t>(fft_size));
  for (size_t i = 0; i < frame.size(); ++i) buf[i] = frame[i];
  Fft(&buf);
  std::vector<double> power(static_cast<size_t>(fft_size / 2 + 1));
  for (size_t k = 0; k < power.size(); ++k) power[k] = std::norm(buf[k]);
  return power;
}

}  // namespace senan
