#pragma once

// Free-space Stokes fundamental solution, the point-dipole solution it
// induces, and the ball-supported regularization of that dipole.
//
//   oseen            G(x)  = (Id/|x| + x(x)x/|x|^3) / 8pi
//   oseen_pressure   P(x)  =  x / (4pi |x|^3)
//   dipole_field     h[A]  = -3/8pi (Ax.x) x/|x|^5 - 1/8pi (A-A^T)x/|x|^3,
//                    p[A]  = -3/4pi (Ax.x)/|x|^5
//   oseen_hess_apply (grad^2 G A)_ij = d_j d_l G_ik A_kl = grad(h[A])
//   h_eta_interior   Stokes extension of h[A] into the ball B(0,eta)
//   theta_eta        matrix field supported on B(0,eta) whose divergence is
//                    the surface source of the regularized dipole; converges
//                    to A delta_0 as eta -> 0.
//
// All kernels require x != 0; callers that sum over pairs enforce the
// convention grad^2 G(0) = 0 themselves.

#include <utility>

#include "susp/core.hpp"

namespace susp {
namespace kernels {

Mat3 oseen(const Vec3& x);
Vec3 oseen_pressure(const Vec3& x);

// grad^2 G applied to a tracefree matrix; equals grad(dipole_field(A, .)).
// -3-homogeneous, even in x, linear in A.
Mat3 oseen_hess_apply(const Vec3& x, const Mat3& tracefree_a);

// (h[A](x), p[A](x)); velocity is -2-homogeneous and divergence free.
std::pair<Vec3, double> dipole_field(const Mat3& tracefree_a, const Vec3& x);

// Interior Stokes extension of the dipole: solves the homogeneous Stokes
// system in B(0,eta) with boundary data h[A] on the sphere. Velocity and
// pressure; precondition |x| <= eta.
std::pair<Vec3, double> h_eta_interior(const Mat3& tracefree_a, double eta,
                                       const Vec3& x);
// Gradient of the interior velocity (needed by energy quadratures).
Mat3 h_eta_interior_grad(const Mat3& tracefree_a, double eta, const Vec3& x);

// Velocity gradient of the regularized dipole everywhere: interior ansatz
// inside the ball, grad h[A] outside.
Mat3 h_eta_grad(const Mat3& tracefree_a, double eta, const Vec3& x);
std::pair<Vec3, double> h_eta(const Mat3& tracefree_a, double eta,
                              const Vec3& x);

// Ball-supported smearing of the dipole strength: zero for |x| > eta,
// a polynomial-in-x matrix inside. Scales as eta^-3 theta_1(x/eta) and
// tends to A delta_0 in the sense of distributions.
Mat3 theta_eta(const Mat3& tracefree_a, double eta, const Vec3& x);

// A dipole smeared over B(center, eta); bundles strength + geometry.
struct RegularizedDipole {
  Mat3 strength;  // tracefree
  Vec3 center;
  double eta = 0.0;

  RegularizedDipole(const Mat3& a, const Vec3& c, double e)
      : strength(a), center(c), eta(e) {
    if (!(e > 0.0)) throw std::invalid_argument("RegularizedDipole: eta > 0");
  }
  Vec3 velocity(const Vec3& x) const {
    return h_eta(strength, eta, x - center).first;
  }
  Mat3 velocity_grad(const Vec3& x) const {
    return h_eta_grad(strength, eta, x - center);
  }
};

}  // namespace kernels
}  // namespace susp
