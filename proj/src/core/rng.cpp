// SPDX-License-Identifier: Apache-2.0
//
// manf - movable-antenna near-field beamforming toolkit
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

#include "rng.hpp"

#include <cmath>

namespace manf {

namespace {

constexpr uint32_t kM0 = 0xD2511F53u;
constexpr uint32_t kM1 = 0xCD9E8D57u;
constexpr uint32_t kW0 = 0x9E3779B9u;
constexpr uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(uint32_t a, uint32_t b, uint32_t &hi, uint32_t &lo) {
    const uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

inline std::array<uint32_t, 4> round_once(const std::array<uint32_t, 4> &c,
                                          const std::array<uint32_t, 2> &k) {
    uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

} // namespace

std::array<uint32_t, 4> Philox::block(const std::array<uint32_t, 4> &counter,
                                      const std::array<uint32_t, 2> &key) {
    std::array<uint32_t, 4> c = counter;
    std::array<uint32_t, 2> k = key;
    c = round_once(c, k);
    for (int r = 1; r < 10; ++r) {
        k[0] += kW0;
        k[1] += kW1;
        c = round_once(c, k);
    }
    return c;
}

Philox::Philox(uint64_t seed, uint64_t stream) : stream_(stream) {
    key_[0] = static_cast<uint32_t>(seed);
    key_[1] = static_cast<uint32_t>(seed >> 32);
}

void Philox::refill() {
    const std::array<uint32_t, 4> ctr = {
        static_cast<uint32_t>(index_),
        static_cast<uint32_t>(index_ >> 32),
        static_cast<uint32_t>(stream_),
        static_cast<uint32_t>(stream_ >> 32),
    };
    buf_ = block(ctr, key_);
    buf_pos_ = 0;
    ++index_;
}

uint32_t Philox::next_u32() {
    if (buf_pos_ >= 4)
        refill();
    return buf_[buf_pos_++];
}

uint64_t Philox::next_u64() {
    const uint64_t lo = next_u32();
    const uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double Philox::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Philox::uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

double Philox::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_normal_;
    }
    double u1 = next_double();
    if (u1 <= 0.0)
        u1 = 0x1.0p-53;
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_normal_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

} // namespace manf
