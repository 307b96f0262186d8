#ifndef CATFLAT_ERRORS_HPP
#define CATFLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace catflat {

enum class errc {
    non_square,
    size_exceeded,
    order_exceeds_degree,
    index_out_of_range,
    field_too_small,
    split_mismatch,
    bad_wedge_degree,
    variables_not_disjoint,
    degree_mismatch,
    non_square_catalecticant,
    invalid_argument,
    overflow,
};

/// All library failures throw this; `code()` identifies the condition.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace catflat

#endif
