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

#ifndef POLARQ_CHANNEL_CODEC_HPP
#define POLARQ_CHANNEL_CODEC_HPP

#include <vector>

#include "polarq/construction.hpp"
#include "polarq/sc_decoder.hpp"

namespace polarq {

/// Synchronized pseudorandom frozen symbols: position k of a stream is a
/// pure function of (seed, k, q), so both ends stay aligned without
/// exchanging state and frames may be decoded in any order.
struct FrozenStream {
    uint64_t seed = 0;
    unsigned q = 0;
    uint64_t cursor = 0;

    Symbol next() { return static_cast<Symbol>(stream_symbol(seed, cursor++, q)); }
    Symbol at(uint64_t k) const { return static_cast<Symbol>(stream_symbol(seed, k, q)); }
};

/// u[info] = s ascending, u[frozen] = stream symbols ascending, then
/// x = u G_N^{-1}. Advances the stream by |frozen|.
std::vector<Symbol> channel_encode(const Field& f, const PolarCode& code,
                                   const std::vector<Symbol>& s, FrozenStream& frozen);

/// SC decoding with frozen values replayed from the stream; returns the
/// decisions at the information indices. Advances the stream by |frozen|.
std::vector<Symbol> channel_decode(const PolarCode& code,
                                   const std::vector<LlrVector>& init,
                                   FrozenStream& frozen, ScDecoder& dec);
std::vector<Symbol> channel_decode(const Field& f, const PolarCode& code,
                                   const std::vector<LlrVector>& init,
                                   FrozenStream& frozen);

} // namespace polarq

#endif
