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

#if defined(POLARQ_HAVE_AVX2) && defined(__x86_64__)

#include <immintrin.h>

#include <cmath>

namespace polarq::kernels {

namespace {

// exp for x in [-708, 708]: n = round(x/ln2), r = x - n ln2 (Cody-Waite),
// degree-13 Taylor on |r| <= ln2/2, then scale by 2^n through the exponent
// bits. Relative error is a few ulp, which the lse equivalence test pins.
inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    const __m256d lo = _mm256_set1_pd(-708.0);
    const __m256d hi = _mm256_set1_pd(708.0);

    x = _mm256_min_pd(hi, _mm256_max_pd(lo, x));
    const __m256d nf = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(nf, ln2_hi));
    r = _mm256_sub_pd(r, _mm256_mul_pd(nf, ln2_lo));

    // Horner over 1/k! down from k = 13
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    const double coeff[] = {1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
                            1.0 / 362880.0,    1.0 / 40320.0,    1.0 / 5040.0,
                            1.0 / 720.0,       1.0 / 120.0,      1.0 / 24.0,
                            1.0 / 6.0,         1.0 / 2.0,        1.0,
                            1.0};
    for (double c : coeff)
        p = _mm256_add_pd(_mm256_mul_pd(p, r), _mm256_set1_pd(c));

    const __m128i ni = _mm256_cvtpd_epi32(nf);
    const __m256i n64 = _mm256_cvtepi32_epi64(ni);
    const __m256i scale = _mm256_slli_epi64(
        _mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(scale));
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return std::max(_mm_cvtsd_f64(lo), _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)));
}

double gather_lse_avx2(const double* left, const int32_t* idx,
                       const double* right, unsigned q) {
    double terms[1024];
    unsigned v = 0;
    __m256d vmax = _mm256_set1_pd(-1e300);
    for (; v + 4 <= q; v += 4) {
        const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + v));
        const __m256d g = _mm256_i32gather_pd(left, vi, 8);
        const __m256d t = _mm256_add_pd(g, _mm256_loadu_pd(right + v));
        _mm256_storeu_pd(terms + v, t);
        vmax = _mm256_max_pd(vmax, t);
    }
    double m = hmax(vmax);
    for (; v < q; ++v) {
        terms[v] = left[idx[v]] + right[v];
        if (terms[v] > m) m = terms[v];
    }

    const __m256d vm = _mm256_set1_pd(m);
    __m256d vsum = _mm256_setzero_pd();
    v = 0;
    for (; v + 4 <= q; v += 4)
        vsum = _mm256_add_pd(vsum, exp4(_mm256_sub_pd(_mm256_loadu_pd(terms + v), vm)));
    double s = hsum(vsum);
    for (; v < q; ++v)
        s += std::exp(terms[v] - m);
    return m + std::log(s);
}

void even_combine_avx2(const double* left, const int32_t* idx, double left_ref,
                       const double* right, double* out, unsigned n) {
    const __m256d vref = _mm256_set1_pd(left_ref);
    unsigned k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
        const __m256d g = _mm256_i32gather_pd(left, vi, 8);
        const __m256d t =
            _mm256_add_pd(_mm256_sub_pd(g, vref), _mm256_loadu_pd(right + k));
        _mm256_storeu_pd(out + k, t);
    }
    for (; k < n; ++k)
        out[k] = left[idx[k]] - left_ref + right[k];
}

void awgn_llr_avx2(const double* a, const double* b, const double* c,
                   const double* d, double yre, double yim,
                   double* out, unsigned n) {
    const __m256d vre = _mm256_set1_pd(yre);
    const __m256d vim = _mm256_set1_pd(yim);
    unsigned k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d t0 = _mm256_mul_pd(_mm256_loadu_pd(a + k),
                                         _mm256_sub_pd(vre, _mm256_loadu_pd(c + k)));
        const __m256d t1 = _mm256_mul_pd(_mm256_loadu_pd(b + k),
                                         _mm256_sub_pd(vim, _mm256_loadu_pd(d + k)));
        _mm256_storeu_pd(out + k, _mm256_add_pd(t0, t1));
    }
    for (; k < n; ++k)
        out[k] = a[k] * (yre - c[k]) + b[k] * (yim - d[k]);
}

} // namespace

const Dispatch* avx2() {
    static const Dispatch d{"avx2", gather_lse_avx2, even_combine_avx2, awgn_llr_avx2};
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok ? &d : nullptr;
}

} // namespace polarq::kernels

#else

namespace polarq::kernels {
const Dispatch* avx2() { return nullptr; }
} // namespace polarq::kernels

#endif
