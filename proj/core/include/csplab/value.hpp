#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace csplab {

/// A domain value: problem files allow integers or strings.
using Value = std::variant<std::int64_t, std::string>;

inline std::string to_string(const Value& v)
{
    if (const auto* i = std::get_if<std::int64_t>(&v)) {
        return std::to_string(*i);
    }
    return std::get<std::string>(v);
}

} // namespace csplab
