// SPDX-License-Identifier: Apache-2.0
//
// holosparse - wavenumber-domain synthesis and sparse estimation of
// holographic MIMO channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace holosparse {

/// Counter-based Philox4x64-10 block generator. Output matches
/// numpy.random.Philox for the same key/counter words, which keeps
/// cross-language reference vectors easy to produce.
struct Philox4x64 {
    static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> x,
                                              std::array<std::uint64_t, 2> k) {
        for (int round = 0; round < 10; ++round) {
            const unsigned __int128 p0 = static_cast<unsigned __int128>(x[0]) * kMul0;
            const unsigned __int128 p1 = static_cast<unsigned __int128>(x[2]) * kMul1;
            x = {static_cast<std::uint64_t>(p1 >> 64) ^ x[1] ^ k[0],
                 static_cast<std::uint64_t>(p1),
                 static_cast<std::uint64_t>(p0 >> 64) ^ x[3] ^ k[1],
                 static_cast<std::uint64_t>(p0)};
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        return x;
    }
};

/// Well-known stream tags. Distinct tags give statistically independent
/// streams under the same master seed.
namespace streams {
inline constexpr std::uint64_t kClusterAnglesRx = 1;
inline constexpr std::uint64_t kClusterAnglesTx = 2;
inline constexpr std::uint64_t kChannel = 3;
inline constexpr std::uint64_t kPilot = 4;
inline constexpr std::uint64_t kCombiner = 5;
inline constexpr std::uint64_t kNoise = 6;
}  // namespace streams

/// One reproducible random stream, keyed by (master seed, stream tag) with
/// the trial and sweep ordinals folded into the counter. Streams with any
/// differing component are independent, and a stream's output sequence does
/// not depend on what other streams were consumed, so trials can run in any
/// order or in parallel without changing results.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_tag,
              std::uint64_t trial = 0, std::uint64_t sweep = 0)
        : counter_{0, trial, sweep, 0}, key_{master_seed, stream_tag} {}

    std::uint64_t next_u64() {
        if (pos_ == 4) {
            block_ = Philox4x64::block(counter_, key_);
            if (++counter_[0] == 0) ++counter_[3];
            pos_ = 0;
        }
        return block_[pos_++];
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (the paired sine output is discarded).
    double gauss() {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Circularly-symmetric complex Gaussian CN(0, variance): real and
    /// imaginary parts are i.i.d. N(0, variance/2).
    std::complex<double> cgauss(double variance) {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1) * variance);
        const double phase = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phase), r * std::sin(phase)};
    }

    /// Fair coin, used for binary pilot symbols.
    bool coin() { return (next_u64() >> 63) != 0; }

private:
    std::array<std::uint64_t, 4> counter_;
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> block_{};
    int pos_ = 4;
};

}  // namespace holosparse
