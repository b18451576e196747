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

#include "ldpb/simd/vmath.hpp"

#include <atomic>

#include "ldpb/errors.hpp"

namespace ldpb::simd {

bool avx2_supported() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Kernels* detect() {
  return avx2_supported() ? &detail::avx2_kernels : &detail::scalar_kernels;
}

std::atomic<const Kernels*> g_active{nullptr};

}  // namespace

void set_backend(Backend b) {
  switch (b) {
    case Backend::kAuto:
      g_active.store(detect());
      break;
    case Backend::kScalar:
      g_active.store(&detail::scalar_kernels);
      break;
    case Backend::kAvx2:
      if (!avx2_supported()) {
        throw invalid_parameter("AVX2 backend requested but not supported");
      }
      g_active.store(&detail::avx2_kernels);
      break;
  }
}

const Kernels& active() {
  const Kernels* k = g_active.load(std::memory_order_relaxed);
  if (k == nullptr) {
    k = detect();
    g_active.store(k);
  }
  return *k;
}

}  // namespace ldpb::simd
