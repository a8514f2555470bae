// features/fft.h

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

#ifndef SENAN_FEATURES_FFT_H_
#define SENAN_FEATURES_FFT_H_

#include <complex>
#include <vector>

namespace senan {

// In-place iterative radix-2 FFT; size must be a power of two.
void Fft(std::vector<std::complex<double>> *a);

int NextPowerOfTwo(int n);

// |X_k|^2 for k = 0..n/2 of the zero-padded real frame.
std::vector<double> PowerSpectrum(const std::vector<double> &frame,
                                  int fft_size);

}  // namespace senan

#endif  // SENAN_FEATURES_FFT_H_
