#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

/// Error categories used across the library. The CLI maps these to
/// process exit codes (validation -> 2, tolerance -> 3, budget -> 4).
enum class errc {
    even_modulus,
    out_of_range,
    not_strictly_increasing,
    k_too_large,
    m_out_of_range,
    mismatched_modulus,
    zero_slice,
    bad_interval,
    j_out_of_range,
    dimension_mismatch,
    too_large,
    tolerance_not_met,
    budget_exceeded,
    invalid_argument,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace cayley
