// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mwclab {

/// Raised when caller-supplied input violates a documented precondition.
/// The CLI maps this to exit status 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition)
        throw ValidationError(message);
}

} // namespace mwclab
