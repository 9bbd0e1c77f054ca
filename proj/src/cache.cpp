#include "specshock/cache.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>

namespace specshock {

namespace {

std::mutex cache_mutex;

std::string entry_stem(const std::string& id, int n, double t) {
  std::ostringstream os;
  os << id << "_n" << n << "_t" << std::setprecision(17) << t;
  std::string s = os.str();
  for (char& ch : s)
    if (ch == '/' || ch == '\\' || ch == ' ') ch = '_';
  return s;
}

std::string sidecar_text(const std::string& id, int n, double t, std::size_t count,
                         std::uint64_t sum) {
  std::ostringstream os;
  os << "id " << id << "\nn " << n << "\nt " << std::setprecision(17) << t << "\ncount " << count
     << "\nchecksum " << std::hex << sum << "\n";
  return os.str();
}

}  // namespace

std::optional<std::filesystem::path> cache_directory() {
  const char* env = std::getenv("SPECSHOCK_CACHE");
  if (!env || !*env) return std::nullopt;
  return std::filesystem::path(env);
}

std::uint64_t cache_checksum(std::span<const double> values) {
  std::uint64_t h = 1469598103934665603ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(values.data());
  for (std::size_t k = 0; k < values.size_bytes(); ++k) {
    h ^= bytes[k];
    h *= 1099511628211ULL;
  }
  return h;
}

std::optional<std::vector<double>> cache_load(const std::string& id, int n, double t) {
  const auto dir = cache_directory();
  if (!dir) return std::nullopt;
  std::lock_guard lock(cache_mutex);
  const std::string stem = entry_stem(id, n, t);
  std::ifstream meta(*dir / (stem + ".txt"));
  if (!meta) return std::nullopt;
  std::stringstream text;
  text << meta.rdbuf();

  std::ifstream bin(*dir / (stem + ".bin"), std::ios::binary);
  if (!bin) return std::nullopt;
  bin.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::size_t>(bin.tellg());
  if (bytes % sizeof(double) != 0) return std::nullopt;
  std::vector<double> values(bytes / sizeof(double));
  bin.seekg(0);
  bin.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
  if (!bin) return std::nullopt;
  if (text.str() != sidecar_text(id, n, t, values.size(), cache_checksum(values))) return std::nullopt;
  return values;
}

bool cache_store(const std::string& id, int n, double t, std::span<const double> values) {
  const auto dir = cache_directory();
  if (!dir) return false;
  std::lock_guard lock(cache_mutex);
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  if (ec) return false;
  const std::string stem = entry_stem(id, n, t);
  const auto bin_path = *dir / (stem + ".bin");
  const auto txt_path = *dir / (stem + ".txt");
  const auto tmp_bin = *dir / (stem + ".bin.tmp");
  const auto tmp_txt = *dir / (stem + ".txt.tmp");
  {
    std::ofstream bin(tmp_bin, std::ios::binary | std::ios::trunc);
    bin.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size_bytes()));
    std::ofstream txt(tmp_txt, std::ios::trunc);
    txt << sidecar_text(id, n, t, values.size(), cache_checksum(values));
    if (!bin || !txt) return false;
  }
  std::filesystem::rename(tmp_bin, bin_path, ec);
  if (ec) return false;
  std::filesystem::rename(tmp_txt, txt_path, ec);
  return !ec;
}

}  // namespace specshock
