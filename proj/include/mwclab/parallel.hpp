// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace mwclab {

/// Worker count: MWCLAB_THREADS when set to a positive integer, otherwise
/// std::thread::hardware_concurrency().
std::size_t thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers using static
/// contiguous chunks. Callers write into per-index slots and reduce in index
/// order afterwards, which keeps results independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace mwclab
