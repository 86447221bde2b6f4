// SPDX-License-Identifier: Apache-2.0
#include "mwclab/distributions.hpp"

#include "mwclab/error.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace mwclab {

double NonzeroDistribution::mean_power() const noexcept
{
    const double s2 = scale * scale;
    switch (kind) {
    case DistributionKind::real_normal: return s2;
    case DistributionKind::real_uniform: return s2 / 12.0;
    case DistributionKind::complex_normal: return 2.0 * s2;
    case DistributionKind::complex_uniform: return s2 / 6.0;
    case DistributionKind::bernoulli_sign: return s2;
    }
    return 0.0;
}

std::complex<double> NonzeroDistribution::sample(Engine& rng) const
{
    switch (kind) {
    case DistributionKind::real_normal: return {std::normal_distribution<double>(0.0, scale)(rng), 0.0};
    case DistributionKind::real_uniform:
        return {std::uniform_real_distribution<double>(-0.5 * scale, 0.5 * scale)(rng), 0.0};
    case DistributionKind::complex_normal: {
        std::normal_distribution<double> d(0.0, scale);
        const double re = d(rng);
        return {re, d(rng)};
    }
    case DistributionKind::complex_uniform: {
        std::uniform_real_distribution<double> d(-0.5 * scale, 0.5 * scale);
        const double re = d(rng);
        return {re, d(rng)};
    }
    case DistributionKind::bernoulli_sign: return {(rng() & 1u) ? -scale : scale, 0.0};
    }
    return {};
}

std::string_view to_string(DistributionKind kind)
{
    switch (kind) {
    case DistributionKind::real_normal: return "real_normal";
    case DistributionKind::real_uniform: return "real_uniform";
    case DistributionKind::complex_normal: return "complex_normal";
    case DistributionKind::complex_uniform: return "complex_uniform";
    case DistributionKind::bernoulli_sign: return "bernoulli_sign";
    }
    return "unknown";
}

DistributionKind parse_distribution(std::string_view name)
{
    std::string key(name);
    std::replace(key.begin(), key.end(), '-', '_');
    for (auto k : {DistributionKind::real_normal, DistributionKind::real_uniform,
                   DistributionKind::complex_normal, DistributionKind::complex_uniform,
                   DistributionKind::bernoulli_sign})
        if (key == to_string(k))
            return k;
    throw ValidationError("unknown distribution '" + std::string(name) + "'");
}

} // namespace mwclab
