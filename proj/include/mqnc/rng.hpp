// Copyright 2026 The mqnc-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace mqnc {

/// SplitMix64 stream keyed by (seed, stream, trial). Each trial owns an
/// independent generator, so results do not depend on how trials are split
/// across workers.
class TrialRng {
   public:
    using result_type = uint64_t;

    explicit constexpr TrialRng(uint64_t state = 0) : state_(state) {}

    static constexpr TrialRng for_trial(uint64_t seed, uint64_t stream, uint64_t trial) {
        uint64_t s = mix(seed + kGolden);
        s = mix(s ^ (stream + 0x632be59bd9b4e019ULL));
        s = mix(s ^ (trial + 0x85157af5ULL));
        return TrialRng(s);
    }

    constexpr uint64_t operator()() {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static constexpr uint64_t min() { return 0; }
    static constexpr uint64_t max() { return ~uint64_t{0}; }

   private:
    static constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

    static constexpr uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

}  // namespace mqnc
