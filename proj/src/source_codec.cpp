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

#include "polarq/source_codec.hpp"

#include <cmath>
#include <stdexcept>

#include "polarq/transform.hpp"

namespace polarq {

LlrVector side_info_llr(const JointSource& model, unsigned y) {
    if (y >= model.ysize) throw std::invalid_argument("side information letter out of range");
    const unsigned q = model.q;
    auto flog = [](double p) { return std::max(std::log(p), -kLlrClamp); };
    LlrVector v(q);
    const double l0 = flog(model.cond_px(0, y));
    for (unsigned s = 1; s < q; ++s) v.set(static_cast<Symbol>(s), flog(model.cond_px(s, y)) - l0);
    return v;
}

CompressedBlock compress(const Field& f, const PolarCode& code,
                         const std::vector<Symbol>& x) {
    if (code.q != f.q()) throw std::invalid_argument("code field mismatch");
    if (x.size() != code.n) throw std::invalid_argument("block length mismatch");
    const std::vector<Symbol> u = polar_encode(f, x);
    CompressedBlock b;
    b.code_hash = code.hash();
    const std::vector<uint32_t> frozen = code.frozen_set();
    b.frozen.reserve(frozen.size());
    for (uint32_t i : frozen) b.frozen.push_back(u[i]);
    return b;
}

std::vector<Symbol> decompress(const PolarCode& code, const CompressedBlock& block,
                               const std::vector<unsigned>& y, const JointSource& model,
                               ScDecoder& dec) {
    if (block.code_hash != code.hash())
        throw std::invalid_argument("compressed block belongs to a different code");
    if (y.size() != code.n) throw std::invalid_argument("side information length mismatch");
    if (dec.block_length() != code.n || dec.field().q() != code.q)
        throw std::invalid_argument("decoder does not match code");
    if (model.q != code.q) throw std::invalid_argument("model alphabet mismatch");

    std::vector<LlrVector> init(code.n);
    for (size_t i = 0; i < code.n; ++i) init[i] = side_info_llr(model, y[i]);
    const FrozenPolicy pol =
        FrozenPolicy::explicit_values(code.n, code.frozen_set(), block.frozen);
    return dec.decode(init, pol).x;
}

std::vector<Symbol> decompress(const Field& f, const PolarCode& code,
                               const CompressedBlock& block,
                               const std::vector<unsigned>& y, const JointSource& model) {
    ScDecoder dec(f, code.n);
    return decompress(code, block, y, model, dec);
}

} // namespace polarq
