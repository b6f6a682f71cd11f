#pragma once

#include <stdexcept>
#include <string>

namespace ivc {

// Thrown when a value that must satisfy lower <= upper (an interval or an
// interval-valued function at some point) fails to.
class validity_error : public std::runtime_error {
public:
    explicit validity_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ivc
