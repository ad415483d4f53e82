#pragma once

#include <stdexcept>
#include <string>

namespace latfluct {

// Error taxonomy mirrored by the CLI exit codes:
// validation/not_samplable -> 2, non_convergence -> 3.
class Error : public std::runtime_error {
public:
    enum class Kind { validation, not_samplable, non_convergence };

    Error(Kind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

inline Error validation_error(std::string msg) {
    return Error(Error::Kind::validation, std::move(msg));
}
inline Error not_samplable_error(std::string msg) {
    return Error(Error::Kind::not_samplable, std::move(msg));
}
inline Error non_convergence_error(std::string msg) {
    return Error(Error::Kind::non_convergence, std::move(msg));
}

} // namespace latfluct
