#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace vsgsim {

/// Invalid or inconsistent configuration. `path()` points at the offending
/// field using dotted notation ("grid.l_g_henry", "events[2].kind").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// A tail window failed the flatness guard, so its mean is not a steady state.
class NotSettledError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No operating point exists for the requested power references.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace vsgsim
