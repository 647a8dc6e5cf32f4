#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pyroflux {

inline constexpr double R_GAS = 8.314462618;        // J/(mol K)
inline constexpr double STEFAN_BOLTZMANN = 5.670374419e-8;  // W/(m^2 K^4)
inline constexpr double GRAVITY = -9.80665;          // m/s^2, axial (z up)

// Atomic masses, kg/mol. ASH is a pseudo-element whose mass is declared
// per mechanism file.
inline constexpr double ATOMIC_MASS_C = 12.011e-3;
inline constexpr double ATOMIC_MASS_H = 1.008e-3;
inline constexpr double ATOMIC_MASS_O = 15.999e-3;
inline constexpr double ATOMIC_MASS_N = 14.007e-3;
inline constexpr double ATOMIC_MASS_S = 32.06e-3;

enum class ErrorKind {
  Config,        // bad config / CLI usage / malformed input files
  Numeric,       // non-finite results, overflow
  Stiffness,     // integrator step-size underflow
  DegenerateCurve,
  NonConvergence,
  Serialization, // model file version/checksum problems
  Domain,        // precondition violated at runtime
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

// SplitMix64. Deterministic across platforms and compilers, which the
// reproducibility contract needs; std::shuffle / distributions are not.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // uniform integer in [0, n)
  uint64_t next_below(uint64_t n) { return n ? next_u64() % n : 0; }

  // standard normal, Box-Muller
  double next_normal() {
    double u1 = next_double(), u2 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  // derive an independent stream, e.g. one per tree or grid point
  Rng fork(uint64_t stream_id) const {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ull * (stream_id + 1)));
    r.next_u64();
    return r;
  }

private:
  uint64_t state_;
};

template <typename T>
void fisher_yates_shuffle(std::vector<T>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

// FNV-1a 64-bit, used for config/content digests in manifests.
inline uint64_t fnv1a64(std::string_view data, uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(uint64_t v);

// CRC-32 (IEEE, reflected), used by the model file format.
uint32_t crc32(const void* data, size_t len);

// Shortest round-trip decimal form of a double; byte-stable output for
// CSV/report determinism.
std::string fmt_double(double v);

bool parse_double(std::string_view s, double& out);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pyroflux
