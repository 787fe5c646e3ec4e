#include "susp/resistance_mfs.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>

#include "susp/kernels.hpp"
#include "susp/quadrature.hpp"

namespace susp {
namespace mfs {

namespace {

// Spheroid points: unit-sphere directions mapped onto semi-axes
// (a_eq, a_eq, a_pol), max semi-axis normalized to 1.
void semi_axes(double aspect, double& a_eq, double& a_pol) {
  if (aspect >= 1.0) {
    a_pol = 1.0;
    a_eq = 1.0 / aspect;
  } else {
    a_eq = 1.0;
    a_pol = aspect;
  }
}

std::vector<Vec3> surface_points(double aspect, int n) {
  double ae, ap;
  semi_axes(aspect, ae, ap);
  std::vector<Vec3> pts = fibonacci_sphere(n);
  for (Vec3& p : pts) p = Vec3(ae * p.x(), ae * p.y(), ap * p.z());
  return pts;
}

Vec3 outward_normal(double ae, double ap, const Vec3& p) {
  return Vec3(p.x() / (ae * ae), p.y() / (ae * ae), p.z() / (ap * ap))
      .normalized();
}

// Sources sit a fixed multiple of the mean node spacing inside the surface,
// along the inward normal. A uniform offset keeps the representation sharp
// near the high-curvature poles of elongated spheroids, where a plain
// affine shrink fails.
std::vector<Vec3> source_points(double aspect, int n) {
  double ae, ap;
  semi_axes(aspect, ae, ap);
  // Thomsen area approximation for the spheroid.
  const double pth = 1.6075;
  const double t = (2.0 * std::pow(ae * ae, pth) +
                    std::pow(ae * ap, pth) + std::pow(ae * ap, pth)) / 3.0;
  const double area = 4.0 * kPi * std::pow(t, 1.0 / pth);
  const double spacing = std::sqrt(area / n);
  const double offset = 2.0 * spacing;
  std::vector<Vec3> pts = surface_points(aspect, n);
  for (Vec3& p : pts) {
    const Vec3 nrm = outward_normal(ae, ap, p);
    // Cap the offset so sources never cross the axis near the poles.
    const double cap = 0.8 * std::max(std::abs(p.x()), std::max(std::abs(p.y()), ae));
    p -= std::min(offset, std::max(cap, 0.25 * spacing)) * nrm;
  }
  return pts;
}

}  // namespace

StrainResponse solve_strain_response(double aspect, const Mat3& strain,
                                     int n_src) {
  const Mat3 e = sym0(strain);
  const std::vector<Vec3> src = source_points(aspect, n_src);
  const std::vector<Vec3> col = surface_points(aspect, 2 * n_src);

  const int nu = 3 * n_src + 6;  // stokeslet strengths + omega + V
  const int nr = 3 * static_cast<int>(col.size()) + 6;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nr, nu);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nr);

  // Collocation: sum_k G(x - y_k) f_k - omega x x - V = -E x on the surface.
  for (std::size_t i = 0; i < col.size(); ++i) {
    const Vec3& x = col[i];
    for (int k = 0; k < n_src; ++k) {
      const Mat3 g = kernels::oseen(x - src[k]);
      m.block<3, 3>(3 * i, 3 * k) = g;
    }
    // -omega x x = [x]_cross omega
    Mat3 xcross;
    xcross << 0, -x.z(), x.y(), x.z(), 0, -x.x(), -x.y(), x.x(), 0;
    m.block<3, 3>(3 * i, 3 * n_src) = xcross;
    m.block<3, 3>(3 * i, 3 * n_src + 3) = -Mat3::Identity();
    rhs.segment<3>(3 * i) = -e * x;
  }

  // Zero net force and torque of the stokeslet set.
  const double wc = 10.0;
  const int r0 = 3 * static_cast<int>(col.size());
  for (int k = 0; k < n_src; ++k) {
    m.block<3, 3>(r0, 3 * k) = wc * Mat3::Identity();
    Mat3 ycross;
    const Vec3& y = src[k];
    ycross << 0, -y.z(), y.y(), y.z(), 0, -y.x(), -y.y(), y.x(), 0;
    m.block<3, 3>(r0 + 3, 3 * k) = wc * ycross;
  }

  const Eigen::VectorXd sol =
      m.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);

  StrainResponse out;
  out.colloc_residual =
      (m * sol - rhs).lpNorm<Eigen::Infinity>() / std::max(1.0, e.norm());
  out.angular_velocity = sol.segment<3>(3 * n_src);

  // Far-field dipole moment: v ~ h[-D] with D = sum f_k (x) y_k, so the
  // stresslet is the tracefree part of -D (symmetric once torque-free).
  Mat3 d = Mat3::Zero();
  for (int k = 0; k < n_src; ++k)
    d += outer(sol.segment<3>(3 * k), src[k]);
  out.stresslet = deviatoric(-d);
  return out;
}

SpheroidCalibration calibrate_spheroid(double aspect, int n_src) {
  SpheroidCalibration cal;
  cal.aspect_ratio = aspect;
  cal.colloc_residual = 0.0;

  // Orthogonal strain basis; symmetry axis is e3.
  std::array<Mat3, 5> basis;
  basis[0] = sym0_outer(Vec3(1, 0, 0), Vec3(0, 1, 0));
  basis[1] = sym0_outer(Vec3(1, 0, 0), Vec3(0, 0, 1));
  basis[2] = sym0_outer(Vec3(0, 1, 0), Vec3(0, 0, 1));
  basis[3] = (Mat3() << 1, 0, 0, 0, -1, 0, 0, 0, 0).finished() * 0.5;
  basis[4] = (Mat3() << 1, 0, 0, 0, 1, 0, 0, 0, -2).finished() * 0.5;

  const Vec3 xi(0, 0, 1);
  // Least squares for (c_iso, c_axial, c_cross) over all basis responses.
  Eigen::MatrixXd a(5 * 9, 3);
  Eigen::VectorXd b(5 * 9);
  Vec3 omega_offaxis = Vec3::Zero();
  for (int q = 0; q < 5; ++q) {
    const StrainResponse r = solve_strain_response(aspect, basis[q], n_src);
    cal.colloc_residual = std::max(cal.colloc_residual, r.colloc_residual);
    if (q == 1) omega_offaxis = r.angular_velocity;
    const Mat3& e = basis[q];
    const double qq = xi.dot(e * xi);
    const Vec3 exi = e * xi;
    const Mat3 t_iso = e;
    const Mat3 t_ax = qq * (outer(xi, xi) - Mat3::Identity() / 3.0);
    const Mat3 t_cr =
        outer(xi, exi) + outer(exi, xi) - 2.0 * qq * outer(xi, xi);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int row = 9 * q + 3 * i + j;
        a(row, 0) = t_iso(i, j);
        a(row, 1) = t_ax(i, j);
        a(row, 2) = t_cr(i, j);
        b(row) = r.stresslet(i, j);
      }
  }
  const Eigen::Vector3d c =
      a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  cal.c_iso = c(0);
  cal.c_axial = c(1);
  cal.c_cross = c(2);
  cal.fit_residual = (a * c - b).norm() / b.norm();

  // basis[1] = sym0(e1 (x) e3): E xi = e1/2, so xi_dot = beta/2 e1 and the
  // rigid rotation is omega = (beta/2) e2.
  cal.beta = 2.0 * omega_offaxis.y();
  return cal;
}

}  // namespace mfs
}  // namespace susp
