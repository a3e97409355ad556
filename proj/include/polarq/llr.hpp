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

#ifndef POLARQ_LLR_HPP
#define POLARQ_LLR_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "polarq/field.hpp"

namespace polarq {

// Every log-ratio is clamped into this range so that downstream sums and
// exponentials stay finite in double precision.
inline constexpr double kLlrClamp = 500.0;

inline double clamp_llr(double x) {
    return std::min(kLlrClamp, std::max(-kLlrClamp, x));
}

/// Clamp a (q-1)-component log-ratio vector (relative to symbol 0) into
/// [-kLlrClamp, kLlrClamp] without touching the ratios between plausible
/// symbols. Clamping components one by one is wrong when the reference
/// symbol is itself implausible: every component past +clamp collapses
/// into a tie. Instead re-reference to the largest component, floor the
/// log-probabilities at -kLlrClamp there, and shift back so symbol 0 is
/// the reference again. Identity whenever the raw components already fit.
inline void clamp_llr_vector(double* l, size_t qm1) {
    double m = 0.0;
    for (size_t k = 0; k < qm1; ++k) m = std::max(m, l[k]);
    if (m <= kLlrClamp) {
        for (size_t k = 0; k < qm1; ++k) l[k] = std::max(l[k], -kLlrClamp);
        return;
    }
    const double base = std::max(-m, -kLlrClamp);
    for (size_t k = 0; k < qm1; ++k)
        l[k] = std::max(l[k] - m, -kLlrClamp) - base;
}

/// Length-(q-1) vector of log likelihood ratios relative to the zero
/// element. Component k-1 belongs to the field element k; the ratio for
/// the reference element 0 is implicitly log(1) = 0.
struct LlrVector {
    std::vector<double> l;

    LlrVector() = default;
    explicit LlrVector(unsigned q) : l(q - 1, 0.0) {}

    unsigned q() const { return static_cast<unsigned>(l.size()) + 1; }

    double comp(Symbol s) const { return s == 0 ? 0.0 : l[s - 1]; }
    void set(Symbol s, double v) { l[s - 1] = clamp_llr(v); }

    /// Maximal-component rule: the symbol of the largest log-ratio if it
    /// is positive, else 0. Ties resolve to the lowest symbol value, and
    /// a tie with the implicit zero component at exactly 0 yields 0.
    Symbol detect() const {
        Symbol best = 0;
        double best_l = 0.0;
        for (size_t k = 0; k < l.size(); ++k)
            if (l[k] > best_l) {
                best_l = l[k];
                best = static_cast<Symbol>(k + 1);
            }
        return best;
    }
};

/// detect() on a raw component array llr[0..q-2] (symbol k at llr[k-1]).
inline Symbol detect(const double* llr, unsigned q) {
    Symbol best = 0;
    double best_l = 0.0;
    for (unsigned k = 0; k + 1 < q; ++k)
        if (llr[k] > best_l) {
            best_l = llr[k];
            best = static_cast<Symbol>(k + 1);
        }
    return best;
}

inline Symbol detect(const LlrVector& v) { return v.detect(); }

} // namespace polarq

#endif
