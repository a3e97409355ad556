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

#ifndef POLARQ_RNG_HPP
#define POLARQ_RNG_HPP

#include <cmath>
#include <cstdint>

namespace polarq {

// Counter-based generator: every output is a pure function of
// (seed, stream, counter), so streams are random-access and identical
// across platforms and worker counts.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream)
        : base_(mix64(seed ^ mix64(stream))), ctr_(0) {}

    uint64_t next_u64() { return mix64(base_ + ++ctr_); }

    // uniform in [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in [0,n) without modulo bias worth caring about (n <= 2^16)
    uint32_t next_below(uint32_t n) {
        return static_cast<uint32_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // standard normal pairs via Box-Muller; no cached state so that the
    // output stays a pure function of the counter
    void next_gauss_pair(double& g0, double& g1) {
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0x1.0p-60) u1 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        g0 = r * std::cos(t);
        g1 = r * std::sin(t);
    }

  private:
    uint64_t base_;
    uint64_t ctr_;
};

// Random-access symbol at (seed, index); used for synchronized frozen
// symbol streams on both ends of a channel.
inline uint32_t stream_symbol(uint64_t seed, uint64_t index, uint32_t q) {
    const uint64_t h = mix64(mix64(seed) + index);
    return static_cast<uint32_t>((static_cast<unsigned __int128>(h) * q) >> 64);
}

} // namespace polarq

#endif
