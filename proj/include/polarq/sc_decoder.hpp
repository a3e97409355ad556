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

#ifndef POLARQ_SC_DECODER_HPP
#define POLARQ_SC_DECODER_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polarq/field.hpp"
#include "polarq/llr.hpp"

namespace polarq {

/// Which u indices are frozen and where their values come from.
struct FrozenPolicy {
    std::vector<uint8_t> is_frozen;            // one flag per index, 0-based
    std::function<Symbol(uint32_t)> value_at;  // queried only at frozen indices

    /// All indices frozen to the true u (construction / oracle runs).
    static FrozenPolicy genie(std::vector<Symbol> u_true);

    /// Explicit values for the given sorted frozen indices, in the same order.
    static FrozenPolicy explicit_values(size_t n, const std::vector<uint32_t>& frozen,
                                        std::vector<Symbol> values);

    /// k-th frozen index (in ascending order) drawn from the seeded symbol
    /// stream; encoder and decoder with equal seeds agree.
    static FrozenPolicy from_stream(size_t n, const std::vector<uint32_t>& frozen,
                                    uint64_t seed, unsigned q);
};

/// Successive-cancellation decoder over F_q.
///
/// The LLR lattice has (n+1) levels of N slots, each slot a (q-1)-vector;
/// level 0 holds the channel-side inputs, level n the per-index decision
/// LLRs. Every slot is written at most once per codeword. One instance
/// per in-flight codeword; instances are not shared across threads.
class ScDecoder {
  public:
    ScDecoder(const Field& f, size_t n);

    struct Result {
        std::vector<Symbol> u;  // decisions, natural order
        std::vector<Symbol> x;  // u * G_N^{-1}, read off the channel-side level
    };

    /// init must be in channel order (the order polar_encode consumes).
    Result decode(const std::vector<LlrVector>& init, const FrozenPolicy& frozen);

    /// Decision-level LLR vector of index i, valid after decode().
    std::span<const double> top_llr(size_t i) const;

    size_t block_length() const { return n_; }
    const Field& field() const { return *field_; }

  private:
    double* slot(unsigned level, size_t flat) {
        return llr_.data() + (static_cast<size_t>(level) * n_ + flat) * (q_ - 1);
    }
    void compute(unsigned level, size_t phase, size_t branch);
    void set_symbol(unsigned level, size_t phase, size_t branch, Symbol w);
    void combine_odd(const double* left, const double* right, double* out);
    void combine_even(const double* left, const double* right, Symbol u_prev, double* out);

    const Field* field_;
    size_t n_;
    unsigned levels_;  // log2(N)
    unsigned q_;
    std::vector<int32_t> omav_;   // omav_[u*q+v] = u - alpha*v, gather index table
    std::vector<double> llr_;     // (levels+1) x N x (q-1)
    std::vector<Symbol> sym_;     // (levels+1) x N
    std::vector<double> lx_, rx_, t_;  // expanded scratch, length q / q / q
};

} // namespace polarq

#endif
