#pragma once

// On-disk cache for expensive reference profiles. Entries are flat binary
// arrays of doubles with a text sidecar (id, N, t, checksum). The directory
// comes from SPECSHOCK_CACHE; caching is off when it is unset or empty.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace specshock {

std::optional<std::filesystem::path> cache_directory();

/// FNV-1a over the raw bytes of the array.
std::uint64_t cache_checksum(std::span<const double> values);

/// Returns the cached array when present and its sidecar and checksum match.
std::optional<std::vector<double>> cache_load(const std::string& id, int n, double t);

/// Writes atomically (temporary file + rename). Returns false on IO failure.
bool cache_store(const std::string& id, int n, double t, std::span<const double> values);

}  // namespace specshock
