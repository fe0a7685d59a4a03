#include "textevo/error.hpp"

namespace textevo {

const char* to_string(Errc code) {
    switch (code) {
    case Errc::unreadable_source: return "unreadable source";
    case Errc::undecodable_text: return "undecodable text";
    case Errc::zero_snapshots: return "zero snapshots";
    case Errc::mixed_timestamps: return "mixed timestamps";
    case Errc::archive_format: return "archive format";
    case Errc::level_mismatch: return "level mismatch";
    case Errc::no_edits: return "no edits";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::degenerate: return "degenerate";
    case Errc::zero_variance: return "zero variance";
    case Errc::insufficient_data: return "insufficient data";
    case Errc::infeasible: return "infeasible";
    }
    return "unknown";
}

}  // namespace textevo
