#pragma once

#include <stdexcept>
#include <string>

namespace qlink {

// Base for all typed errors thrown by the library. The `kind()` string is a
// stable machine-readable tag; what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define QLINK_DEFINE_ERROR(NAME)                                       \
    class NAME : public ::qlink::Error {                               \
    public:                                                            \
        explicit NAME(const std::string& message)                      \
            : ::qlink::Error(#NAME, message) {}                        \
    }

} // namespace qlink
