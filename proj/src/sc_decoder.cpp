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

#include "polarq/sc_decoder.hpp"

#include <stdexcept>

#include "polarq/kernels.hpp"
#include "polarq/rng.hpp"
#include "polarq/transform.hpp"

namespace polarq {

FrozenPolicy FrozenPolicy::genie(std::vector<Symbol> u_true) {
    FrozenPolicy p;
    p.is_frozen.assign(u_true.size(), 1);
    p.value_at = [u = std::move(u_true)](uint32_t i) { return u[i]; };
    return p;
}

FrozenPolicy FrozenPolicy::explicit_values(size_t n, const std::vector<uint32_t>& frozen,
                                           std::vector<Symbol> values) {
    if (values.size() != frozen.size())
        throw std::invalid_argument("frozen value count does not match frozen set");
    FrozenPolicy p;
    p.is_frozen.assign(n, 0);
    std::vector<Symbol> dense(n, 0);
    for (size_t k = 0; k < frozen.size(); ++k) {
        if (frozen[k] >= n) throw std::invalid_argument("frozen index out of range");
        if (p.is_frozen[frozen[k]]) throw std::invalid_argument("duplicate frozen index");
        p.is_frozen[frozen[k]] = 1;
        dense[frozen[k]] = values[k];
    }
    p.value_at = [d = std::move(dense)](uint32_t i) { return d[i]; };
    return p;
}

FrozenPolicy FrozenPolicy::from_stream(size_t n, const std::vector<uint32_t>& frozen,
                                       uint64_t seed, unsigned q) {
    FrozenPolicy p;
    p.is_frozen.assign(n, 0);
    std::vector<Symbol> dense(n, 0);
    uint64_t k = 0;
    for (uint32_t idx : frozen) {
        if (idx >= n) throw std::invalid_argument("frozen index out of range");
        p.is_frozen[idx] = 1;
        dense[idx] = static_cast<Symbol>(stream_symbol(seed, k++, q));
    }
    p.value_at = [d = std::move(dense)](uint32_t i) { return d[i]; };
    return p;
}

ScDecoder::ScDecoder(const Field& f, size_t n) : field_(&f), n_(n), q_(f.q()) {
    if (!is_pow2(n)) throw std::invalid_argument("length is not a power of two");
    levels_ = 0;
    while ((size_t{1} << levels_) < n) ++levels_;

    omav_.resize(static_cast<size_t>(q_) * q_);
    for (unsigned u = 0; u < q_; ++u)
        for (unsigned v = 0; v < q_; ++v)
            omav_[u * q_ + v] =
                f.sub(static_cast<Symbol>(u), f.mul_alpha(static_cast<Symbol>(v)));

    llr_.resize(static_cast<size_t>(levels_ + 1) * n_ * (q_ - 1));
    sym_.resize(static_cast<size_t>(levels_ + 1) * n_);
    lx_.resize(q_);
    rx_.resize(q_);
    t_.resize(q_);
}

void ScDecoder::combine_odd(const double* left, const double* right, double* out) {
    const auto& k = kernels::active();
    lx_[0] = 0.0;
    rx_[0] = 0.0;
    for (unsigned s = 1; s < q_; ++s) {
        lx_[s] = left[s - 1];
        rx_[s] = right[s - 1];
    }
    for (unsigned u = 0; u < q_; ++u)
        t_[u] = k.gather_lse(lx_.data(), omav_.data() + u * q_, rx_.data(), q_);
    for (unsigned s = 1; s < q_; ++s)
        out[s - 1] = t_[s] - t_[0];
}

void ScDecoder::combine_even(const double* left, const double* right, Symbol u_prev,
                             double* out) {
    lx_[0] = 0.0;
    for (unsigned s = 1; s < q_; ++s) lx_[s] = left[s - 1];
    kernels::active().even_combine(lx_.data(), omav_.data() + u_prev * q_ + 1,
                                   lx_[u_prev], right, out, q_ - 1);
}

void ScDecoder::compute(unsigned level, size_t phase, size_t branch) {
    const size_t flat = (branch << level) + phase;
    const size_t child_flat = (branch << level) + phase / 2; // == (2b << (l-1)) + p/2
    if (phase % 2 == 0) {
        if (level > 1) {
            compute(level - 1, phase / 2, 2 * branch);
            compute(level - 1, phase / 2, 2 * branch + 1);
        }
        combine_odd(slot(level - 1, child_flat), slot(level - 1, child_flat + (size_t{1} << (level - 1))),
                    slot(level, flat));
    } else {
        const Symbol u_prev = sym_[static_cast<size_t>(level) * n_ + flat - 1];
        combine_even(slot(level - 1, child_flat), slot(level - 1, child_flat + (size_t{1} << (level - 1))),
                     u_prev, slot(level, flat));
    }
}

void ScDecoder::set_symbol(unsigned level, size_t phase, size_t branch, Symbol w) {
    const size_t flat = (branch << level) + phase;
    sym_[static_cast<size_t>(level) * n_ + flat] = w;
    if (phase % 2 == 1 && level > 0) {
        const Symbol w1 = sym_[static_cast<size_t>(level) * n_ + flat - 1];
        set_symbol(level - 1, phase / 2, 2 * branch, field_->sub(w1, field_->mul_alpha(w)));
        set_symbol(level - 1, phase / 2, 2 * branch + 1, w);
    }
}

ScDecoder::Result ScDecoder::decode(const std::vector<LlrVector>& init,
                                    const FrozenPolicy& frozen) {
    if (init.size() != n_) throw std::invalid_argument("init length mismatch");
    if (frozen.is_frozen.size() != n_)
        throw std::invalid_argument("frozen policy length mismatch");

    for (size_t b = 0; b < n_; ++b) {
        if (init[b].l.size() != q_ - 1) throw std::invalid_argument("init LLR arity mismatch");
        double* s = slot(0, b);
        for (unsigned k = 0; k + 1 < q_; ++k) s[k] = init[b].l[k];
        clamp_llr_vector(s, q_ - 1);
    }

    Result res;
    res.u.resize(n_);
    for (size_t i = 0; i < n_; ++i) {
        if (levels_ > 0) compute(levels_, i, 0);
        Symbol d;
        if (frozen.is_frozen[i]) {
            d = frozen.value_at(static_cast<uint32_t>(i));
        } else {
            d = detect(slot(levels_, i), q_);
        }
        res.u[i] = d;
        set_symbol(levels_, i, 0, d);
    }
    res.x.assign(sym_.begin(), sym_.begin() + n_);
    return res;
}

std::span<const double> ScDecoder::top_llr(size_t i) const {
    const double* base =
        llr_.data() + (static_cast<size_t>(levels_) * n_ + i) * (q_ - 1);
    return {base, q_ - 1};
}

} // namespace polarq
