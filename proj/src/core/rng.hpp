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

#pragma once

#include <array>
#include <cstdint>

namespace manf {

/// Philox4x32-10 counter-based generator. Streams derived from (seed, stream)
/// are independent, so per-trial substreams need no sequential state.
class Philox {
  public:
    explicit Philox(uint64_t seed, uint64_t stream = 0);

    uint32_t next_u32();
    uint64_t next_u64();
    double next_double(); // uniform in [0, 1)
    double uniform(double lo, double hi);
    double normal(); // standard normal, Box-Muller

    /// One raw 4x32 block for the given counter/key, exposed for known-answer tests.
    static std::array<uint32_t, 4> block(const std::array<uint32_t, 4> &counter,
                                         const std::array<uint32_t, 2> &key);

  private:
    void refill();

    std::array<uint32_t, 2> key_;
    uint64_t stream_ = 0;
    uint64_t index_ = 0;
    std::array<uint32_t, 4> buf_{};
    int buf_pos_ = 4;
    double spare_normal_ = 0.0;
    bool have_spare_ = false;
};

} // namespace manf
