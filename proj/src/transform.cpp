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

#include "polarq/transform.hpp"

#include <stdexcept>
#include <utility>

namespace polarq {

bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<uint32_t> bit_reversal(size_t n) {
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");
    unsigned bits = 0;
    while ((size_t{1} << bits) < n) ++bits;
    std::vector<uint32_t> perm(n);
    for (size_t i = 0; i < n; ++i) {
        uint32_t r = 0;
        for (unsigned b = 0; b < bits; ++b)
            r |= ((i >> b) & 1u) << (bits - 1 - b);
        perm[i] = r;
    }
    return perm;
}

namespace {

void apply_perm(std::vector<Symbol>& v, const std::vector<uint32_t>& perm) {
    // bit reversal is an involution, so swapping i < perm[i] covers all cycles
    for (size_t i = 0; i < v.size(); ++i)
        if (i < perm[i]) std::swap(v[i], v[perm[i]]);
}

} // namespace

void polar_encode_inplace(const Field& f, std::vector<Symbol>& v) {
    const size_t n = v.size();
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");
    const Symbol a = f.alpha();
    // butterfly stages in block-concatenated order: lo += alpha * hi
    for (size_t len = 2; len <= n; len <<= 1) {
        const size_t h = len >> 1;
        for (size_t j = 0; j < n; j += len)
            for (size_t k = 0; k < h; ++k)
                v[j + k] = f.add(v[j + k], f.mul(a, v[j + h + k]));
    }
    // interleaving at every recursion level collapses into one bit reversal
    apply_perm(v, bit_reversal(n));
}

void polar_decode_transform_inplace(const Field& f, std::vector<Symbol>& v) {
    const size_t n = v.size();
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");
    const Symbol a = f.alpha();
    apply_perm(v, bit_reversal(n));
    for (size_t len = n; len >= 2; len >>= 1) {
        const size_t h = len >> 1;
        for (size_t j = 0; j < n; j += len)
            for (size_t k = 0; k < h; ++k)
                v[j + k] = f.sub(v[j + k], f.mul(a, v[j + h + k]));
    }
}

std::vector<Symbol> polar_encode(const Field& f, std::vector<Symbol> x) {
    polar_encode_inplace(f, x);
    return x;
}

std::vector<Symbol> polar_decode_transform(const Field& f, std::vector<Symbol> u) {
    polar_decode_transform_inplace(f, u);
    return u;
}

} // namespace polarq
