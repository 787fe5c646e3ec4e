#pragma once

// Deterministic random numbers. mt19937_64 gives a portable stream; the
// distributions are hand-rolled (std:: distribution output is
// implementation-defined, which would break the byte-identical-output
// contract). Sub-streams are derived with splitmix64 so every experiment
// owns an independent, reproducible stream.

#include <cmath>
#include <cstdint>
#include <random>

#include "susp/core.hpp"

namespace susp {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derive the seed for sub-experiment `index` from a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master ^ (0x5851f42d4c957f2dULL * (index + 1));
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  // Independent sub-stream; derivation depends only on the construction
  // seed, never on how much of this stream has been consumed.
  Rng fork(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

  std::uint64_t raw() { return eng_(); }

  // Uniform in [0,1), 53-bit resolution.
  double u01() { return (eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * u01(); }

  // Box-Muller with cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = u01(), u2 = u01();
    while (u1 <= 0.0) u1 = u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  Vec3 in_box(const Box3& box) {
    return Vec3(uniform(box.lo.x(), box.hi.x()), uniform(box.lo.y(), box.hi.y()),
                uniform(box.lo.z(), box.hi.z()));
  }

  // Uniform on S^2 (area measure).
  Vec3 uniform_sphere() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * kPi);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec3(s * std::cos(phi), s * std::sin(phi), z);
  }

  // von Mises-Fisher on S^2 with mean direction mu and concentration k.
  // Inversion sampling of the cosine; k = 0 falls back to uniform.
  Vec3 vmf(const Vec3& mu, double k) {
    if (k <= 0.0) return uniform_sphere();
    const double u = u01();
    // w = 1 + log(u + (1-u) e^{-2k}) / k, the closed-form inverse on S^2.
    const double w = 1.0 + std::log(u + (1.0 - u) * std::exp(-2.0 * k)) / k;
    const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
    const double phi = uniform(0.0, 2.0 * kPi);
    // Orthonormal frame around mu.
    const Vec3 m = mu.normalized();
    Vec3 a = std::abs(m.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
    const Vec3 e1 = (a - a.dot(m) * m).normalized();
    const Vec3 e2 = m.cross(e1);
    return w * m + s * (std::cos(phi) * e1 + std::sin(phi) * e2);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace susp
