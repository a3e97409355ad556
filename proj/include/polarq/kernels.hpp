/*
   Copyright 2026 The polarq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef POLARQ_KERNELS_HPP
#define POLARQ_KERNELS_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace polarq::kernels {

// Arithmetic inner loops of the decoder and the modem front end, as a
// scalar reference plus SIMD variants selected once at startup. The
// non-transcendental kernels are bit-identical across variants; the
// log-sum-exp kernel differs only by the exp implementation (checked in
// the equivalence tests at tight tolerance).
struct Dispatch {
    const char* name;

    // log(sum_v exp(left[idx[v]] + right[v])), v = 0..q-1
    double (*gather_lse)(const double* left, const int32_t* idx,
                         const double* right, unsigned q);

    // out[k] = left[idx[k]] - left_ref + right[k], k = 0..n-1
    void (*even_combine)(const double* left, const int32_t* idx, double left_ref,
                         const double* right, double* out, unsigned n);

    // out[k] = a[k]*(yre - c[k]) + b[k]*(yim - d[k]), k = 0..n-1
    void (*awgn_llr)(const double* a, const double* b, const double* c,
                     const double* d, double yre, double yim,
                     double* out, unsigned n);
};

const Dispatch& scalar();
const Dispatch* avx2();   // nullptr when unsupported by the build or the CPU

// Chosen once: POLARQ_KERNELS=scalar|avx2 in the environment wins,
// otherwise the widest variant the CPU supports.
const Dispatch& active();

// Force a variant (tests); returns false if the name is unknown or the
// variant is unavailable on this machine.
bool set_active(std::string_view name);

std::vector<const Dispatch*> all_available();

} // namespace polarq::kernels

#endif
