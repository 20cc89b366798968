#pragma once

#include <exception>

namespace seqcp {

/// Raised by any domain update that empties a domain. Search catches it and
/// restores the trail; propagators just let it through.
struct Inconsistency : std::exception {
    const char* what() const noexcept override { return "domain wipeout"; }
};

[[noreturn]] inline void fail() {
    throw Inconsistency{};
}

}  // namespace seqcp
