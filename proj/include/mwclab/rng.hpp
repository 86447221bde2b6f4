// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace mwclab {

using Engine = std::mt19937_64;

/// Independent engine for the stream addressed by (seed, a, b). Every
/// per-trial or per-block computation draws from its own stream so results
/// do not depend on scheduling.
inline Engine make_stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(a),    static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b),    static_cast<std::uint32_t>(b >> 32)};
    return Engine(seq);
}

// Stream namespaces, so different consumers of one seed never collide.
namespace stream {
inline constexpr std::uint64_t kSignMatrix = 0x5349474eULL;
inline constexpr std::uint64_t kMoments = 0x4d4f4d31ULL;
inline constexpr std::uint64_t kExripTrial = 0x45585231ULL;
inline constexpr std::uint64_t kMmvTrial = 0x4d4d5631ULL;
inline constexpr std::uint64_t kSearch = 0x53524348ULL;
} // namespace stream

} // namespace mwclab
