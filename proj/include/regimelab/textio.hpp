#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace regimelab {

// Shortest form of %.12g: all floating-point file output goes through
// this so golden files are reproducible across implementations.
std::string format_g12(double v);

// FNV-1a over raw bytes; cheap content fingerprint for run manifests,
// not a cryptographic hash.
std::uint64_t fnv1a64(std::string_view bytes);

std::string hex64(std::uint64_t v);

// ISO 8601 UTC, second resolution.
std::string utc_timestamp_now();

}  // namespace regimelab
