#pragma once

// Calibration oracle for the single-particle resistance problem on
// spheroids, via the method of fundamental solutions: stokeslets on a
// shrunk interior surface, velocity collocation on the true surface with
// unknown rigid motion, force/torque-free constraints. Used to generate
// shape-parameter files and to validate the closed-form sphere constant;
// not a runtime solver.

#include "susp/core.hpp"

namespace susp {
namespace mfs {

struct StrainResponse {
  Mat3 stresslet;        // S(E), from the far-field dipole moment
  Vec3 angular_velocity; // induced rigid rotation of the particle
  double colloc_residual;
};

// Spheroid with symmetry axis e3, max semi-axis 1 (fits the unit ball).
// Solves the disturbance problem for background strain E (symmetric
// tracefree): total field is rigid inside, disturbance decays, zero net
// force and torque.
StrainResponse solve_strain_response(double aspect_ratio, const Mat3& strain,
                                     int n_sources = 200);

struct SpheroidCalibration {
  double aspect_ratio;
  double beta;     // from the induced rotation under off-axis strain
  double c_iso, c_axial, c_cross;
  double fit_residual;      // transverse-isotropy fit quality
  double colloc_residual;   // worst boundary-condition residual
};

SpheroidCalibration calibrate_spheroid(double aspect_ratio,
                                       int n_sources = 200);

}  // namespace mfs
}  // namespace susp
