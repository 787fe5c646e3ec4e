#pragma once

// Quadrature building blocks: Gauss-Legendre panels, product rules on the
// sphere, midpoint grids on boxes, and a deterministic chunked parallel
// reduction (fixed chunking => byte-identical results for any thread count).

#include <cstddef>
#include <functional>
#include <vector>

#include "susp/core.hpp"

namespace susp {

struct Quad1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton on the Legendre polynomial.
Quad1D gauss_legendre(int n);
// Same rule mapped to [a,b].
Quad1D gauss_legendre(int n, double a, double b);

// Product rule on S^2: Gauss in cos(theta) x uniform midpoints in phi.
// Exact for spherical polynomials of degree < min(2*n_polar, n_azimuth).
// Weights sum to 4*pi.
struct SphereRule {
  std::vector<Vec3> node;
  std::vector<double> weight;
};
SphereRule sphere_rule(int n_polar, int n_azimuth);

// Deterministic spiral points on S^2 (collocation, not quadrature).
std::vector<Vec3> fibonacci_sphere(int n);

// integral over the annulus d0 <= |y| <= d1 of a Mat3-valued kernel.
// Radial midpoints (n_r per unit refinement) x sphere product rule whose
// resolution grows with `level`; used by the shell-cancellation checks.
Mat3 annulus_integral(const std::function<Mat3(const Vec3&)>& f, double d0,
                      double d1, int level);

// Deterministic parallel reduction of f(i) over i in [0,n). The index range
// is cut into fixed chunks; partial sums are combined in chunk order, so the
// result does not depend on the number of worker threads.
double par_sum(std::size_t n, const std::function<double(std::size_t)>& f,
               int threads);

// Chunked variant: worker receives [begin,end) and returns a partial sum.
double par_sum_ranges(std::size_t n,
                      const std::function<double(std::size_t, std::size_t)>& f,
                      int threads);

// Global knob for quadrature/pair-sum parallelism; 0 = hardware default.
void set_default_threads(int threads);
int default_threads();

}  // namespace susp
