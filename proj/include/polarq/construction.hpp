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

#ifndef POLARQ_CONSTRUCTION_HPP
#define POLARQ_CONSTRUCTION_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "polarq/field.hpp"
#include "polarq/joint_source.hpp"
#include "polarq/llr.hpp"
#include "polarq/rng.hpp"

namespace polarq {

/// Per-index Bhattacharyya estimates. Monte-Carlo values may exceed 1
/// slightly; they are reported as-is, never clamped.
struct ZEstimate {
    std::vector<double> z;
    std::vector<double> se;  // per-index standard error (0 in exact mode)
    uint64_t trials = 0;
};

struct SelectionCriterion {
    enum class Kind { SumBound, PerIndex, FixedRate };
    Kind kind = Kind::SumBound;
    double delta = 1e-4;  // SumBound / PerIndex threshold
    size_t rate_k = 0;    // FixedRate

    std::string str() const;
    static SelectionCriterion parse(const std::string& s);
};

/// A constructed code: the field, length, information set and the Z
/// profile it was selected from. Serializes to a line-oriented text file
/// that reloads bit-exactly (z stored as full-precision decimals).
struct PolarCode {
    unsigned q = 0;
    size_t n = 0;
    std::vector<uint32_t> info_set;  // sorted ascending, 0-based
    ZEstimate z;
    SelectionCriterion criterion;
    uint64_t seed = 0;
    std::string model;  // free-form description of the construction model

    size_t k() const { return info_set.size(); }
    double rate_channel() const { return static_cast<double>(k()) / n; }
    double rate_source() const { return static_cast<double>(n - k()) / n; }
    std::vector<uint32_t> frozen_set() const;

    /// (q-1) * sum of z over the information set (error probability bound).
    double error_bound() const;

    /// Stable identifier over (q, n, info_set); recorded in frame dumps
    /// and checked when a code and a block are brought back together.
    uint64_t hash() const;

    void save(const std::string& path) const;
    static PolarCode load(const std::string& path);
};

/// Draws one block of N iid (x, init-LLR) pairs; implementations must be
/// pure functions of the rng stream so construction parallelizes
/// deterministically.
class TrialSampler {
  public:
    virtual ~TrialSampler() = default;
    virtual void sample(CounterRng& rng, size_t n, std::vector<Symbol>& x,
                        std::vector<LlrVector>& init) const = 0;
};

class SourceSampler : public TrialSampler {
  public:
    explicit SourceSampler(JointSource model);
    void sample(CounterRng& rng, size_t n, std::vector<Symbol>& x,
                std::vector<LlrVector>& init) const override;
    const JointSource& model() const { return model_; }

  private:
    JointSource model_;
    std::vector<LlrVector> llr_by_y_;  // precomputed per side-information letter
};

/// Monte-Carlo Z: per trial run genie-aided SC over an encoded random
/// block and average Delta / L(u_true) across trials (and, through the
/// source-weighted true u, across reference symbols). Trials are split
/// into fixed chunks reduced in chunk order, so any worker count yields
/// identical output.
ZEstimate estimate_z_mc(const Field& f, const TrialSampler& sampler, size_t n,
                        uint64_t trials, uint64_t seed, unsigned workers = 1);

/// Exact Z by full enumeration over (x^N, y^N); budget-guarded.
std::vector<double> exact_z_all(const Field& f, const JointSource& model, size_t n);
double exact_z(const Field& f, const JointSource& model, size_t n, size_t i);

PolarCode select_info_set(const Field& f, ZEstimate z, SelectionCriterion crit);

struct DegradationReport {
    std::vector<double> z_degraded;  // through p1 = p2 * w
    std::vector<double> z_better;    // through p2
    bool ordering_holds = false;
    double max_violation = 0.0;  // max over i of z_better - z_degraded
};

/// Claim-2 check: builds p1 = degrade_channel(p2, w) and compares the
/// exact Z profiles; ordering must hold within slack at every index.
DegradationReport check_degradation_ordering(const Field& f, const DmcChannel& p2,
                                             const std::vector<double>& w,
                                             unsigned y1size, size_t n,
                                             double slack = 1e-12);

} // namespace polarq

#endif
