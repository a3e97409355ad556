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

#include "polarq/channel_codec.hpp"

#include <stdexcept>

#include "polarq/transform.hpp"

namespace polarq {

std::vector<Symbol> channel_encode(const Field& f, const PolarCode& code,
                                   const std::vector<Symbol>& s, FrozenStream& frozen) {
    if (code.q != f.q() || frozen.q != f.q())
        throw std::invalid_argument("code/stream field mismatch");
    if (s.size() != code.info_set.size())
        throw std::invalid_argument("message length does not match information set");

    std::vector<Symbol> u(code.n);
    for (size_t k = 0; k < code.info_set.size(); ++k) u[code.info_set[k]] = s[k];
    for (uint32_t i : code.frozen_set()) u[i] = frozen.next();
    polar_decode_transform_inplace(f, u);
    return u;
}

std::vector<Symbol> channel_decode(const PolarCode& code,
                                   const std::vector<LlrVector>& init,
                                   FrozenStream& frozen, ScDecoder& dec) {
    if (dec.block_length() != code.n || dec.field().q() != code.q)
        throw std::invalid_argument("decoder does not match code");
    if (frozen.q != code.q) throw std::invalid_argument("stream field mismatch");

    const std::vector<uint32_t> fset = code.frozen_set();
    std::vector<Symbol> values;
    values.reserve(fset.size());
    for (size_t k = 0; k < fset.size(); ++k) values.push_back(frozen.next());
    const FrozenPolicy pol = FrozenPolicy::explicit_values(code.n, fset, std::move(values));
    const auto res = dec.decode(init, pol);

    std::vector<Symbol> s;
    s.reserve(code.info_set.size());
    for (uint32_t i : code.info_set) s.push_back(res.u[i]);
    return s;
}

std::vector<Symbol> channel_decode(const Field& f, const PolarCode& code,
                                   const std::vector<LlrVector>& init,
                                   FrozenStream& frozen) {
    ScDecoder dec(f, code.n);
    return channel_decode(code, init, frozen, dec);
}

} // namespace polarq
