// Copyright 2026 The bsqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BSQ_SRC_FFT_HPP
#define BSQ_SRC_FFT_HPP

#include <Eigen/Core>
#include <complex>
#include <unsupported/Eigen/FFT>

namespace bsq::detail {

// Eigen::FFT caches plans internally and is not safe to share between
// threads, so each thread owns one.
inline Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return engine;
}

/// out_k = sum_j in_j exp(-2 pi i j k / n).
inline void fft_forward(std::complex<double>* out, const std::complex<double>* in,
                        Eigen::Index n) {
  fft_engine().fwd(out, in, n);
}

/// out_j = sum_k in_k exp(+2 pi i j k / n), no 1/n factor.
inline void fft_backward(std::complex<double>* out, const std::complex<double>* in,
                         Eigen::Index n) {
  fft_engine().inv(out, in, n);
}

}  // namespace bsq::detail

#endif  // BSQ_SRC_FFT_HPP
