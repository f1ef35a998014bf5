#pragma once

#include <stdexcept>
#include <string>

namespace fieldpatch {

// Contract violations (wrong ring, bad input shape) and arithmetic failures
// (division by zero, non-unit inversion) are reported by throwing.  Expected
// failure modes of reconstruction-style operations return std::optional
// instead; only genuinely exceptional states end up here.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// mixing characteristics, mixing ring tags, mixing windows
struct ring_mismatch : error {
    using error::error;
};

// element does not satisfy the membership predicate of the ring it was
// claimed to live in
struct membership_error : error {
    using error::error;
};

// inverting something whose residue is not a unit of the coefficient ring
struct non_unit_error : error {
    using error::error;
};

// an operation would need a Laurent coefficient at or above the known window
struct window_error : error {
    using error::error;
};

// matrix not invertible at the working t-adic precision: det == 0 mod t^N
struct singular_at_precision : error {
    using error::error;
};

// malformed external input (JSON decoding, CLI arguments)
struct input_error : error {
    using error::error;
};

} // namespace fieldpatch
