#pragma once

#include <stdexcept>
#include <string>

namespace derange {

/// Malformed or inconsistent user input (bad file, non-subgroup, degree
/// mismatch at an I/O boundary). Maps to process exit status 1.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured resource cap was exceeded (enumeration, lattice, coset,
/// spin). Always loud, never a silent truncation. Exit status 2.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A statement that is a theorem of the underlying mathematics failed to
/// hold. This signals an implementation bug, not a property of the input.
/// Exit status 3.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace derange
