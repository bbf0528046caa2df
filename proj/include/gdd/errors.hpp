#pragma once

#include <stdexcept>
#include <string>

namespace gdd {

/// A computation was asked of inputs outside its domain. `reason()` is a
/// short machine-readable tag (e.g. "extend_field", "not_realizable").
class DomainError : public std::runtime_error {
public:
    DomainError(std::string reason, const std::string& what)
        : std::runtime_error(what), reason_(std::move(reason)) {}

    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

}  // namespace gdd
