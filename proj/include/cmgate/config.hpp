#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#ifndef CMGATE_DEFAULT_DATA_DIR
#define CMGATE_DEFAULT_DATA_DIR "data"
#endif

namespace cmgate {

/// Process-wide tunables. Set before starting computations; not synchronized.
struct Settings {
    /// upper bound on p^k for routines that enumerate a whole field
    std::uint64_t enumeration_bound = std::uint64_t{1} << 26;
    /// upper bound on p^k for any field context (arithmetic only)
    std::uint64_t field_bound = std::uint64_t{1} << 60;
    /// below or at this size point counting scans the field directly
    std::uint64_t naive_count_threshold = 10000;
    /// gates skip endomorphism-ring computations for points whose field exceeds this
    std::uint64_t cm_field_bound = std::uint64_t{1} << 20;
    std::uint64_t seed = 20240917;
    std::int64_t discriminant_search_ceiling = 1000000;
    /// confirm every volcano-derived discriminant against H_D mod p
    bool hilbert_provider = true;
    /// overrides CMGATE_DATA_DIR and the compiled-in default when non-empty
    std::string data_dir;
    unsigned threads = 1;
};

inline Settings & settings()
{
    static Settings s;
    return s;
}

inline std::string modular_data_dir()
{
    if (!settings().data_dir.empty())
        return settings().data_dir;
    if (const char * env = std::getenv("CMGATE_DATA_DIR"); env && *env)
        return env;
    return CMGATE_DEFAULT_DATA_DIR;
}

} // namespace cmgate
