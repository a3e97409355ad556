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

#ifndef POLARQ_JOINT_SOURCE_HPP
#define POLARQ_JOINT_SOURCE_HPP

#include <string>
#include <vector>

#include "polarq/field.hpp"
#include "polarq/rng.hpp"

namespace polarq {

/// Discrete memoryless channel P(y|x), x in F_q, y in a finite alphabet.
struct DmcChannel {
    unsigned q = 0;
    unsigned ysize = 0;
    std::vector<double> p;  // row-major [x*ysize + y], rows sum to 1

    double at(unsigned x, unsigned y) const { return p[x * ysize + y]; }
    void validate() const;

    static DmcChannel qsc(unsigned q, double eps);  // q-ary symmetric channel
};

/// P^1(y1|x) = sum_y2 P^2(y2|x) w(y1|y2); w rows sum to 1.
DmcChannel degrade_channel(const DmcChannel& p2, const std::vector<double>& w,
                           unsigned y1size);

/// Joint distribution of a q-ary source symbol X and its side information Y,
/// stored as P_X, P(X|Y) and P_Y. P_Y may be derived from the other two by
/// solving P_X = P(X|Y) P_Y (the table layout mirrors a marginal line plus
/// a conditional matrix, so P_Y is often not given explicitly).
struct JointSource {
    unsigned q = 0;
    unsigned ysize = 0;
    std::vector<double> px;          // q
    std::vector<double> px_given_y;  // [y*q + x], columns of P(X|Y) per y
    std::vector<double> py;          // ysize

    double joint(unsigned x, unsigned y) const { return px_given_y[y * q + x] * py[y]; }
    double cond_px(unsigned x, unsigned y) const { return px_given_y[y * q + x]; }

    /// H(X|Y) in bits.
    double cond_entropy_bits() const;

    void validate(double tol = 1e-6) const;

    /// Solve P_X = P(X|Y) P_Y for P_Y on the simplex; exact when the
    /// conditional matrix is invertible, least-squares projected otherwise.
    /// Returns the residual max|P_X - P(X|Y) P_Y|.
    double derive_py();

    /// Inverse-CDF draw of one (x, y) pair.
    void sample(CounterRng& rng, Symbol& x, unsigned& y) const;

    static JointSource from_dmc(const DmcChannel& ch);  // uniform X
    static JointSource perfect_side_info(unsigned q, const std::vector<double>& px);

    /// The five-symbol reference source used throughout the experiments.
    static JointSource table_source();

    static JointSource load(const std::string& path);
    void save(const std::string& path) const;

  private:
    mutable std::vector<double> cdf_;  // lazily built q*ysize cumulative
    void build_cdf() const;
};

} // namespace polarq

#endif
