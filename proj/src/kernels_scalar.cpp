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

#include "polarq/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace polarq::kernels {

namespace {

double gather_lse_scalar(const double* left, const int32_t* idx,
                         const double* right, unsigned q) {
    double m = left[idx[0]] + right[0];
    for (unsigned v = 1; v < q; ++v) {
        const double t = left[idx[v]] + right[v];
        if (t > m) m = t;
    }
    double s = 0.0;
    for (unsigned v = 0; v < q; ++v)
        s += std::exp(left[idx[v]] + right[v] - m);
    return m + std::log(s);
}

void even_combine_scalar(const double* left, const int32_t* idx, double left_ref,
                         const double* right, double* out, unsigned n) {
    for (unsigned k = 0; k < n; ++k)
        out[k] = left[idx[k]] - left_ref + right[k];
}

void awgn_llr_scalar(const double* a, const double* b, const double* c,
                     const double* d, double yre, double yim,
                     double* out, unsigned n) {
    for (unsigned k = 0; k < n; ++k)
        out[k] = a[k] * (yre - c[k]) + b[k] * (yim - d[k]);
}

} // namespace

const Dispatch& scalar() {
    static const Dispatch d{"scalar", gather_lse_scalar, even_combine_scalar,
                            awgn_llr_scalar};
    return d;
}

namespace {

const Dispatch* pick_default() {
    if (const char* env = std::getenv("POLARQ_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar();
        if (std::strcmp(env, "avx2") == 0 && avx2()) return avx2();
    }
    if (const Dispatch* d = avx2()) return d;
    return &scalar();
}

const Dispatch*& active_slot() {
    static const Dispatch* d = pick_default();
    return d;
}

} // namespace

const Dispatch& active() { return *active_slot(); }

bool set_active(std::string_view name) {
    if (name == "scalar") {
        active_slot() = &scalar();
        return true;
    }
    if (name == "avx2" && avx2()) {
        active_slot() = avx2();
        return true;
    }
    return false;
}

std::vector<const Dispatch*> all_available() {
    std::vector<const Dispatch*> v{&scalar()};
    if (const Dispatch* d = avx2()) v.push_back(d);
    return v;
}

} // namespace polarq::kernels
