#pragma once

#include <stdexcept>
#include <string>

namespace swh {

// Bad arguments or malformed input files. CLI exit code 2.
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An internal consistency check failed (broken face maps, non-free
// involution, dd != 0). Indicates a bug or corrupted data. CLI exit code 3.
struct integrity_error : std::logic_error {
    using std::logic_error::logic_error;
};

// A computation would exceed the configured memory budget. CLI exit code 3.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace swh
