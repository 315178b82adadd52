#pragma once

#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

namespace multicut {

struct MulticutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text that fails to parse or validate; carries the 1-based line when known.
struct ParseError : MulticutError {
  explicit ParseError(const std::string& what, int line = 0)
      : MulticutError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line(line) {}
  int line;
};

// -- tolerances, pinned in one place so tests and solver agree ---------------
inline constexpr double kTolFeas = 1e-8;   // absolute feasibility slack
inline constexpr double kTolGap = 1e-7;    // relative optimality gap
inline constexpr double kTolCs = 1e-7;     // complementary slackness
inline constexpr double kTolColumn = 1e-6; // oracle value treated as violating below -kTolColumn
inline constexpr double kTolPath = 1e-6;   // path row violated below 1 - kTolPath
inline constexpr double kTolWidth = 0.0;   // widest path must have strictly positive width

// Deterministic RNG. mt19937_64 output is pinned by the standard; the
// std::*_distribution adapters are not, so bounded draws are mapped here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform integer in [lo, hi] inclusive
  int uniform_int(int lo, int hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

// -- logging: MULTICUT_LOG in {quiet, info, debug}, default quiet ------------
enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("MULTICUT_LOG");
    if (env == nullptr) return LogLevel::kQuiet;
    std::string v(env);
    if (v == "debug") return LogLevel::kDebug;
    if (v == "info") return LogLevel::kInfo;
    return LogLevel::kQuiet;
  }();
  return level;
}

inline void log_at(LogLevel lvl, const char* fmt, ...) {
  if (log_level() < lvl) return;
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  std::fputc('\n', stderr);
  va_end(args);
}

#define MULTICUT_LOG_INFO(...) ::multicut::log_at(::multicut::LogLevel::kInfo, __VA_ARGS__)
#define MULTICUT_LOG_DEBUG(...) ::multicut::log_at(::multicut::LogLevel::kDebug, __VA_ARGS__)

}  // namespace multicut
