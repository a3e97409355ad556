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

#ifndef POLARQ_MODEM_AWGN_HPP
#define POLARQ_MODEM_AWGN_HPP

#include <complex>
#include <string>
#include <vector>

#include "polarq/construction.hpp"
#include "polarq/field.hpp"
#include "polarq/llr.hpp"
#include "polarq/rng.hpp"

namespace polarq {

/// Symbol labeling is the identity on symbol integers: symbol j is sent
/// as points[j]. Factories return raw coordinates; normalized() rescales
/// to unit mean energy.
struct Constellation {
    enum class Kind { PamPrime, PamPow2, RectQam, Circular };

    unsigned q = 0;
    Kind kind = Kind::PamPrime;
    std::vector<std::complex<double>> points;

    /// Mean energy E[|t(X)|^2] under uniform symbols.
    double es() const;

    Constellation normalized() const;

    void validate() const;  // size, distinct points, positive energy

    /// Prime q: {i - floor(q/2)}, i = 0..q-1. Power of two: {2i - (q+1)},
    /// i = 1..q, spacing 2. q = 2 uses the power-of-two form {-1, +1}.
    static Constellation make_pam(unsigned q);

    /// q_axis^2 points; symbol j maps to axis indices (j mod q_axis) on
    /// the real axis and (j div q_axis) on the imaginary axis, both PAM.
    static Constellation make_rect_qam(unsigned q_axis);

    /// Packing file: optional "radius r" line, then one "x y" center per
    /// line. Points are recentered on their mean and normalized to unit
    /// energy; a declared radius must match half the minimum pairwise
    /// distance within 1e-9 (checked in file coordinates).
    static Constellation load_circular(const std::string& path);
};

struct NoiseModel {
    double sigma2 = 0.0;  // per-dimension variance; E[|Z|^2] = 2 sigma2

    /// SNR = Es / E[|Z|^2]; real-only signals count a single noise
    /// dimension.
    static NoiseModel from_snr_db(double snr_db, double es, bool real_only = false);
    double snr_db(double es, bool real_only = false) const;
};

/// y_i = t(x_i) + z_i, z_i circular complex Gaussian (or real when
/// real_only). A pure function of (seed, stream, x); frames use distinct
/// streams so they can be simulated in any order.
std::vector<std::complex<double>> transmit(const Constellation& c,
                                           const std::vector<Symbol>& x,
                                           const NoiseModel& nm, uint64_t seed,
                                           uint64_t stream = 0, bool real_only = false);

/// Channel-side LLR vectors: component x is
///   (Re t(x) - Re t(0))/s2 * (Re y - (Re t(x) + Re t(0))/2) + (imag term),
/// the closed form of the Gaussian density log-ratio. The per-point
/// coefficients are precomputed; the inner product runs on the dispatched
/// kernel. real_only drops the imaginary term.
class AwgnLlr {
  public:
    AwgnLlr(const Constellation& c, const NoiseModel& nm, bool real_only = false);

    LlrVector operator()(std::complex<double> y) const;
    void fill(const std::vector<std::complex<double>>& y,
              std::vector<LlrVector>& out) const;

  private:
    unsigned q_;
    std::vector<double> a_, b_, c_, d_;  // length q-1, symbol k at index k-1
};

/// Construction-time sampler for the AWGN channel: uniform symbols
/// through the constellation plus noise, LLRs from the matched AwgnLlr.
class AwgnSampler : public TrialSampler {
  public:
    AwgnSampler(Constellation c, NoiseModel nm, bool real_only = false);
    void sample(CounterRng& rng, size_t n, std::vector<Symbol>& x,
                std::vector<LlrVector>& init) const override;

  private:
    Constellation c_;
    NoiseModel nm_;
    bool real_only_;
    double sigma_;
    AwgnLlr llr_;
};

} // namespace polarq

#endif
