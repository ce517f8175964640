#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsio {

enum class ErrorKind {
  Domain,          // argument outside the operation's domain (x=0, t<=0, ...)
  Config,          // malformed input file / missing required field
  NonConvergence,  // quadrature failed its refinement gate
  Resolution,      // construction would exceed a hard size limit
  Unsupported,     // hypothesis of the evaluated formula does not hold
  Refinement,      // result valid but below requested accuracy; refine inputs
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Surface measure of S^{n-1} and volume of the unit ball, n = 2 or 3 only.
inline double sphere_measure(int n) { return n == 2 ? kTwoPi : 4.0 * kPi; }
inline double ball_volume(int n) { return n == 2 ? kPi : 4.0 * kPi / 3.0; }

inline double logp(double x) { return x > 1.0 ? std::log(x) : 0.0; }

// x log x with the removable singularity at 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Deterministic, platform-independent RNG (splitmix64-seeded xoshiro256**).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& w : s_) {
      z += 0x9e3779b97f4a7c15ULL;
      std::uint64_t t = z;
      t = (t ^ (t >> 30)) * 0xbf58476d1ce4e5b9ULL;
      t = (t ^ (t >> 27)) * 0x94d049bb133111ebULL;
      w = t ^ (t >> 31);
    }
  }

  std::uint64_t next() {
    auto rotl = [](std::uint64_t x, int k) {
      return (x << k) | (x >> (64 - k));
    };
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int n) { return static_cast<int>(uniform() * n) % n; }

 private:
  std::array<std::uint64_t, 4> s_{};
};

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares slope of log2(y) against x, ignoring non-positive y.
double fit_log2_slope(const std::vector<double>& x,
                      const std::vector<double>& y);

// Runs fn(i) for i in [0, count). Worker count is capped by the
// ROUGH_SIO_THREADS environment variable (default: hardware concurrency).
// fn must be pure per index; results are deterministic regardless of the cap.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

int max_threads();

}  // namespace rsio
