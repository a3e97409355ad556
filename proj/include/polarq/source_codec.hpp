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

#ifndef POLARQ_SOURCE_CODEC_HPP
#define POLARQ_SOURCE_CODEC_HPP

#include <vector>

#include "polarq/construction.hpp"
#include "polarq/joint_source.hpp"
#include "polarq/sc_decoder.hpp"

namespace polarq {

/// u restricted to the frozen (high-uncertainty) indices, ascending.
struct CompressedBlock {
    uint64_t code_hash = 0;
    std::vector<Symbol> frozen;
};

/// log P(x|y)/P(0|y) for one side-information letter; log-probabilities
/// are floored at -500 so a zero-probability reference symbol cannot
/// produce an undefined ratio (the argmax ordering is preserved).
LlrVector side_info_llr(const JointSource& model, unsigned y);

CompressedBlock compress(const Field& f, const PolarCode& code,
                         const std::vector<Symbol>& x);

/// SC decoding with the block's symbols frozen, then the inverse
/// transform. dec must match (f, code.n) and is reused across blocks.
std::vector<Symbol> decompress(const PolarCode& code, const CompressedBlock& block,
                               const std::vector<unsigned>& y, const JointSource& model,
                               ScDecoder& dec);
std::vector<Symbol> decompress(const Field& f, const PolarCode& code,
                               const CompressedBlock& block,
                               const std::vector<unsigned>& y, const JointSource& model);

} // namespace polarq

#endif
