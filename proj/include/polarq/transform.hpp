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

#ifndef POLARQ_TRANSFORM_HPP
#define POLARQ_TRANSFORM_HPP

#include <cstdint>
#include <vector>

#include "polarq/field.hpp"

namespace polarq {

/// Index i maps to the reversal of its log2(N)-bit representation; an
/// involution. Throws on non-power-of-two N.
std::vector<uint32_t> bit_reversal(size_t n);

bool is_pow2(size_t n);

/// u = x * G_N through the butterfly network, never via an explicit
/// matrix. Index convention, fixed project-wide: the u domain is in
/// natural (decoding) order and the x domain is in channel order, i.e.
/// the order in which symbols hit the channel and in which the decoder
/// receives its initial LLR vectors. Per two-symbol kernel,
/// u_odd = x_lo + alpha * x_hi and u_even = x_hi.
void polar_encode_inplace(const Field& f, std::vector<Symbol>& v);
std::vector<Symbol> polar_encode(const Field& f, std::vector<Symbol> x);

/// x = u * G_N^{-1}: the inverse butterfly network (per kernel
/// x_lo = u_odd - alpha * u_even, x_hi = u_even). G_N is not an
/// involution for q > 2, so this is a genuinely different network from
/// the encoder.
void polar_decode_transform_inplace(const Field& f, std::vector<Symbol>& v);
std::vector<Symbol> polar_decode_transform(const Field& f, std::vector<Symbol> u);

} // namespace polarq

#endif
