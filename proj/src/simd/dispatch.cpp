// Copyright 2026 The vrsim Authors
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

#include <cstdlib>
#include <string_view>

#include "vrs/simd/kernels.hpp"

namespace vrs::simd {

#if defined(VRS_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernels();
#endif
#if defined(VRS_HAVE_NEON_KERNELS)
const KernelTable& neon_kernels();
#endif

const KernelTable* vector_kernels() {
#if defined(VRS_HAVE_AVX2_KERNELS)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &avx2_kernels();
  return nullptr;
#elif defined(VRS_HAVE_NEON_KERNELS)
  return &neon_kernels();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const KernelTable* vec = vector_kernels();
  if (const char* env = std::getenv("VRS_SIMD")) {
    const std::string_view want(env);
    if (want == "scalar") return scalar_kernels();
    if (vec != nullptr && want == vec->name) return *vec;
    if (!want.empty()) return scalar_kernels();
  }
  return vec != nullptr ? *vec : scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace vrs::simd
