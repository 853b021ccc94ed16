// SPDX-License-Identifier: Apache-2.0
//
// starfas - outage and capacity analysis for phase-impaired STAR-RIS links
// with fluid-antenna users under rate splitting
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


#ifndef STARFAS_RNG_HPP
#define STARFAS_RNG_HPP

#include <cstdint>
#include <random>

namespace starfas
{
    // One step of SplitMix64; the finalizer is a bijection on 64-bit words
    inline std::uint64_t splitmix64(std::uint64_t x) noexcept
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Seed of the stream with the given index under a master seed. Streams for
    /// distinct (master, index) pairs are statistically independent.
    inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept
    {
        return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
    }

    using Engine = std::mt19937_64;

    // Uniform double in [0, 1) from the top 53 bits
    inline double uniform01(Engine &e) noexcept
    {
        return static_cast<double>(e() >> 11) * 0x1.0p-53;
    }

    // Uniform double in (0, 1)
    inline double uniform_open01(Engine &e) noexcept
    {
        return (static_cast<double>(e() >> 11) + 0.5) * 0x1.0p-53;
    }
}

#endif
