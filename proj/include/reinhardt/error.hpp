#ifndef REINHARDT_ERROR_HPP
#define REINHARDT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace reinhardt
{

enum class errc {
    invalid_argument,
    dimension_mismatch,
    overflow,
    zero_index_not_projectable,
    not_elementary,
    empty_domain,
    infinite_support,
    empty_window,
    need_two_directions,
    supports_overlap,
};

inline std::string_view errc_name(errc code) noexcept
{
    switch (code) {
        case errc::invalid_argument:
            return "InvalidArgument";
        case errc::dimension_mismatch:
            return "DimensionMismatch";
        case errc::overflow:
            return "Overflow";
        case errc::zero_index_not_projectable:
            return "ZeroIndexNotProjectable";
        case errc::not_elementary:
            return "NotElementary";
        case errc::empty_domain:
            return "EmptyDomain";
        case errc::infinite_support:
            return "InfiniteSupport";
        case errc::empty_window:
            return "EmptyWindow";
        case errc::need_two_directions:
            return "NeedTwoDirections";
        case errc::supports_overlap:
            return "SupportsOverlap";
    }
    return "Unknown";
}

// All library failures are reported through this exception; code() identifies
// the condition, what() carries a human-readable description.
class error : public std::runtime_error
{
public:
    error(errc code, const std::string &message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), m_code(code)
    {
    }

    errc code() const noexcept
    {
        return m_code;
    }

private:
    errc m_code;
};

namespace detail
{

[[noreturn]] inline void fail(errc code, const std::string &message)
{
    throw error(code, message);
}

inline void require(bool condition, errc code, const std::string &message)
{
    if (!condition) {
        fail(code, message);
    }
}

} // namespace detail

} // namespace reinhardt

#endif
