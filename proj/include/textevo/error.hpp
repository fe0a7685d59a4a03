#pragma once

#include <stdexcept>
#include <string>

namespace textevo {

enum class Errc {
    unreadable_source,
    undecodable_text,
    zero_snapshots,
    mixed_timestamps,
    archive_format,
    level_mismatch,
    no_edits,
    invalid_argument,
    degenerate,
    zero_variance,
    insufficient_data,
    infeasible,
};

const char* to_string(Errc code);

/// Every failure the library reports. The code lets callers (and the CLI's
/// per-author logs) branch on the kind without parsing messages.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace textevo
