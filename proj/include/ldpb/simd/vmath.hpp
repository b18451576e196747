// Copyright 2026 The ldp-bayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Batched double-precision transcendentals for the likelihood inner loops.
// Two implementations are provided: a scalar reference built on libm, and an
// AVX2 variant with hand-rolled kernels. The active set is selected at
// runtime from CPU capabilities and can be forced for testing; the test
// suite asserts both sets agree to a few ulp.

#pragma once

#include <cstddef>

namespace ldpb::simd {

enum class Backend { kAuto, kScalar, kAvx2 };

struct Kernels {
  // out[i] = exp(in[i]); IEEE under/overflow semantics.
  void (*exp)(const double* in, double* out, std::size_t n);
  // out[i] = log(in[i]); -inf at 0, NaN for negatives.
  void (*log)(const double* in, double* out, std::size_t n);
  // out[i] = exp(in[i]^2) * erfc(in[i]); requires in[i] >= 0.
  void (*erfcx)(const double* in, double* out, std::size_t n);
  const char* name;
};

bool avx2_supported();

// Forces a backend (kAuto re-detects). Throws invalid_parameter if the
// requested backend is unavailable on this CPU.
void set_backend(Backend b);

const Kernels& active();

namespace detail {
extern const Kernels scalar_kernels;
extern const Kernels avx2_kernels;  // null function pointers off x86-64
}  // namespace detail

}  // namespace ldpb::simd
