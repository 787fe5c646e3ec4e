#pragma once

// Single-particle maps for axisymmetric rigid particles in Stokes flow:
// the rotational mobility (Jeffery form with Bretherton shape factor), the
// stresslet in transversely isotropic three-coefficient form, and the
// adjoint-like map pairing orientation test gradients with velocity
// gradients. Spheres have analytic coefficients; spheroid stresslet
// coefficients come from a shape-parameter file generated by the
// method-of-fundamental-solutions calibration tool (never hard-coded).

#include <string>

#include "susp/core.hpp"

namespace susp {
namespace particle {

// Unit-radius sphere stresslet constant.
inline constexpr double kSphereStressletCoeff = 20.0 * kPi / 3.0;

struct ParticleShape {
  enum class Kind { sphere, spheroid };
  Kind kind = Kind::sphere;
  double aspect_ratio = 1.0;  // polar / equatorial semi-axis
  double bretherton = 0.0;    // beta = (l^2 - 1)/(l^2 + 1)
  // S(xi)E = c_iso E + c_axial (xi.E xi)(xi(x)xi - Id/3)
  //        + c_cross (xi(x)E xi + E xi(x)xi - 2 (xi.E xi) xi(x)xi)
  double c_iso = kSphereStressletCoeff;
  double c_axial = 0.0;
  double c_cross = 0.0;

  static ParticleShape sphere();
  static ParticleShape spheroid(double aspect_ratio, double c_iso,
                                double c_axial, double c_cross);
  // Plain-text key=value records; see data/ for generated files.
  static ParticleShape load(const std::string& path);
  void save(const std::string& path) const;

  void validate() const;
};

// Angular velocity matrix M(xi)A in skew(3) for a tracefree A.
Mat3 mobility_matrix(const ParticleShape& shape, const Vec3& xi, const Mat3& a);

// xi_dot = (M(xi) grad_u) xi = W xi + beta (Id - xi(x)xi) E xi.
// Rejects non-unit xi (deviation > 1e-8) and grad_u with |trace| > 1e-10.
Vec3 mobility_apply(const ParticleShape& shape, const Vec3& xi,
                    const Mat3& grad_u);

// Stresslet response to a symmetric tracefree strain.
Mat3 stresslet_apply(const ParticleShape& shape, const Vec3& xi, const Mat3& e);

// Adjoint-like map: the tracefree matrix with (mbar(xi) zeta) : A =
// zeta . mobility_apply(xi, A) for every tracefree A.
Mat3 mbar_apply(const ParticleShape& shape, const Vec3& xi, const Vec3& zeta);

}  // namespace particle
}  // namespace susp
