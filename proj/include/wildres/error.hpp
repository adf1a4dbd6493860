#pragma once

#include <stdexcept>
#include <string>

namespace wildres {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input to a public operation (CLI exit 2).
struct validation_error : error {
    using error::error;
};

// Textual input that cannot be parsed (CLI exit 3).
struct parse_error : error {
    using error::error;
};

// A proven internal invariant failed; indicates a bug (CLI exit 4).
struct internal_error : error {
    using error::error;
};

namespace detail {
[[noreturn]] inline void assert_fail(const char* expr, const char* file, int line) {
    throw internal_error(std::string("assertion failed: ") + expr + " at " + file + ":" +
                         std::to_string(line));
}
} // namespace detail

} // namespace wildres

#define WILDRES_ASSERT(expr) \
    ((expr) ? (void)0 : ::wildres::detail::assert_fail(#expr, __FILE__, __LINE__))
