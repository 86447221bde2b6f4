// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mwclab/rng.hpp"

#include <complex>
#include <string_view>

namespace mwclab {

enum class DistributionKind { real_normal, real_uniform, complex_normal, complex_uniform, bernoulli_sign };

/// Symmetric law of the nonzero entries of a sparse vector. Complex kinds draw
/// real and imaginary parts independently from the base law. Uniform kinds
/// live on [-scale/2, scale/2]; bernoulli_sign is +/-scale.
struct NonzeroDistribution {
    DistributionKind kind = DistributionKind::complex_normal;
    double scale = 1.0;

    bool is_complex() const noexcept
    {
        return kind == DistributionKind::complex_normal || kind == DistributionKind::complex_uniform;
    }
    /// E|u|^2 of one draw.
    double mean_power() const noexcept;
    std::complex<double> sample(Engine& rng) const;
};

std::string_view to_string(DistributionKind kind);
/// Accepts both "complex-normal" and "complex_normal" spellings.
DistributionKind parse_distribution(std::string_view name);

} // namespace mwclab
