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

#ifndef POLARQ_ORACLE_HPP
#define POLARQ_ORACLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "polarq/field.hpp"
#include "polarq/joint_source.hpp"
#include "polarq/llr.hpp"

namespace polarq::oracle {

// Brute-force ground truth used by the test and acceptance suites. All of
// this is enumeration-based and budget-guarded; none of it shares a code
// path with the decoder it checks.

/// N x N matrix over F_q, vector*matrix convention u = x G.
struct FieldMatrix {
    size_t n = 0;
    std::vector<Symbol> a;  // row-major

    Symbol at(size_t r, size_t c) const { return a[r * n + c]; }
};

/// G_N (and its inverse) built column-by-column by pushing unit vectors
/// through the butterfly networks; asserts G * G^{-1} = I. N <= 64.
FieldMatrix explicit_gn(const Field& f, size_t n);
FieldMatrix explicit_gn_inverse(const Field& f, size_t n);

std::vector<Symbol> mat_vec(const Field& f, std::span<const Symbol> x,
                            const FieldMatrix& g);

/// Exact joint table P(u_1^N, y_1^N) for one observed y vector, built by
/// enumerating all q^N source words. Budget-guarded at q^N <= 2^24.
class PosteriorTable {
  public:
    PosteriorTable(const Field& f, const JointSource& model,
                   std::span<const unsigned> y);

    /// P(u_i = v | y, u_1^{i-1} = prefix), i 0-based, normalized over v.
    std::vector<double> posterior(size_t i, std::span<const Symbol> u_prefix) const;

    /// log of the posterior ratio to v = 0, clamped like the decoder's LLRs.
    LlrVector llr(size_t i, std::span<const Symbol> u_prefix) const;

  private:
    const Field* field_;
    size_t n_;
    std::vector<double> table_;  // indexed sum_i u_i q^{N-1-i}
};

/// Classic scalar-LLR binary SC decoder (llr = log P(1)/P(0)); decisions
/// and partial sums only, used as an independent cross-check at q = 2.
struct BinaryScResult {
    std::vector<uint8_t> u;
    std::vector<uint8_t> x;
};
BinaryScResult binary_reference_sc(const std::vector<double>& init,
                                   const std::vector<uint8_t>& is_frozen,
                                   const std::vector<uint8_t>& frozen_values);

} // namespace polarq::oracle

#endif
