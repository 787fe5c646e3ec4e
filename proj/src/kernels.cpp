#include "susp/kernels.hpp"

#include <array>
#include <mutex>

#include <Eigen/Dense>

#include "susp/quadrature.hpp"

namespace susp {
namespace kernels {

namespace {

inline void require_nonzero(const Vec3& x) {
  if (x.squaredNorm() == 0.0)
    throw std::domain_error("stokes kernel evaluated at x = 0");
}

// ---------------------------------------------------------------------------
// Interior extension of the dipole, solved once per tracefree basis matrix
// at eta = 1 with a polynomial ansatz (degree <= 3 velocity, degree <= 2
// pressure with p(0) = 0). The boundary data is a finite spherical-harmonic
// expansion, so the ansatz matches it exactly; the least-squares residual is
// asserted below.
// ---------------------------------------------------------------------------

constexpr int kNMono = 20;  // monomials x^a y^b z^c, a+b+c <= 3
constexpr int kNP = 9;      // pressure monomials: degree 1..2 (no constant)

struct MonoExp {
  int a, b, c;
};

constexpr std::array<MonoExp, kNMono> kExp = {{
    {0, 0, 0},
    {1, 0, 0},
    {0, 1, 0},
    {0, 0, 1},
    {2, 0, 0},
    {1, 1, 0},
    {1, 0, 1},
    {0, 2, 0},
    {0, 1, 1},
    {0, 0, 2},
    {3, 0, 0},
    {2, 1, 0},
    {2, 0, 1},
    {1, 2, 0},
    {1, 1, 1},
    {1, 0, 2},
    {0, 3, 0},
    {0, 2, 1},
    {0, 1, 2},
    {0, 0, 3},
}};

int mono_index(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) return -1;
  for (int i = 0; i < kNMono; ++i)
    if (kExp[i].a == a && kExp[i].b == b && kExp[i].c == c) return i;
  return -1;
}

double mono_eval(int m, const Vec3& x) {
  double v = 1.0;
  for (int k = 0; k < kExp[m].a; ++k) v *= x.x();
  for (int k = 0; k < kExp[m].b; ++k) v *= x.y();
  for (int k = 0; k < kExp[m].c; ++k) v *= x.z();
  return v;
}

// Coefficients of one interior solution: velocity per component over all
// monomials, pressure over the 9 non-constant monomials of degree <= 2.
struct InteriorCoeffs {
  std::array<std::array<double, kNMono>, 3> v{};
  std::array<double, kNP> p{};
};

// Pressure basis: global monomial indices 1..9.
inline int pidx_to_mono(int k) { return k + 1; }

InteriorCoeffs solve_interior_unit(const Mat3& basis_a) {
  const auto colloc = fibonacci_sphere(48);
  const int n_rows = 12 + 10 + 3 * static_cast<int>(colloc.size());
  const int n_cols = 3 * kNMono + kNP;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n_rows, n_cols);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_rows);
  const double w_pde = 10.0;  // interior identities enforced tightly

  auto vcol = [](int comp, int m) { return comp * kNMono + m; };
  auto pcol = [](int k) { return 3 * kNMono + k; };

  // -laplace(v_i) + d_i p = 0: a polynomial identity of degree <= 1,
  // i.e. 4 coefficient equations per component.
  int row = 0;
  for (int i = 0; i < 3; ++i) {
    for (int t = 0; t < 4; ++t, ++row) {
      for (int m = 0; m < kNMono; ++m) {
        const auto e = kExp[m];
        const int tx = mono_index(e.a - 2, e.b, e.c);
        const int ty = mono_index(e.a, e.b - 2, e.c);
        const int tz = mono_index(e.a, e.b, e.c - 2);
        double coef = 0.0;
        if (tx == t) coef += e.a * (e.a - 1);
        if (ty == t) coef += e.b * (e.b - 1);
        if (tz == t) coef += e.c * (e.c - 1);
        if (coef != 0.0) M(row, vcol(i, m)) -= w_pde * coef;
      }
      for (int k = 0; k < kNP; ++k) {
        const auto e = kExp[pidx_to_mono(k)];
        int target = -1;
        double coef = 0.0;
        if (i == 0) {
          target = mono_index(e.a - 1, e.b, e.c);
          coef = e.a;
        } else if (i == 1) {
          target = mono_index(e.a, e.b - 1, e.c);
          coef = e.b;
        } else {
          target = mono_index(e.a, e.b, e.c - 1);
          coef = e.c;
        }
        if (target == t && coef != 0.0) M(row, pcol(k)) += w_pde * coef;
      }
    }
  }

  // div v = 0: degree <= 2 identity, 10 coefficient equations.
  for (int t = 0; t < 10; ++t, ++row) {
    for (int i = 0; i < 3; ++i) {
      for (int m = 0; m < kNMono; ++m) {
        const auto e = kExp[m];
        int target = -1;
        double coef = 0.0;
        if (i == 0) {
          target = mono_index(e.a - 1, e.b, e.c);
          coef = e.a;
        } else if (i == 1) {
          target = mono_index(e.a, e.b - 1, e.c);
          coef = e.b;
        } else {
          target = mono_index(e.a, e.b, e.c - 1);
          coef = e.c;
        }
        if (target == t && coef != 0.0) M(row, vcol(i, m)) += w_pde * coef;
      }
    }
  }

  // Boundary collocation: v = h[A] on |x| = 1.
  for (const Vec3& pnt : colloc) {
    const Vec3 bc = dipole_field(basis_a, pnt).first;
    for (int i = 0; i < 3; ++i, ++row) {
      for (int m = 0; m < kNMono; ++m)
        M(row, vcol(i, m)) = mono_eval(m, pnt);
      rhs(row) = bc(i);
    }
  }

  Eigen::VectorXd sol =
      M.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  const double resid = (M * sol - rhs).norm() /
                       std::max(1.0, rhs.norm());
  if (resid > 1e-10)
    throw std::logic_error("h_eta_interior: ansatz residual exceeds 1e-10");

  InteriorCoeffs c;
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < kNMono; ++m) c.v[i][m] = sol(vcol(i, m));
  for (int k = 0; k < kNP; ++k) c.p[k] = sol(pcol(k));
  return c;
}

// Orthonormal basis of tracefree 3x3 matrices under the Frobenius pairing.
std::array<Mat3, 8> tracefree_basis() {
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  std::array<Mat3, 8> b;
  auto sp = [&](int i, int j) {
    Mat3 m = Mat3::Zero();
    m(i, j) = s2;
    m(j, i) = s2;
    return m;
  };
  auto sk = [&](int i, int j) {
    Mat3 m = Mat3::Zero();
    m(i, j) = s2;
    m(j, i) = -s2;
    return m;
  };
  b[0] = sp(0, 1);
  b[1] = sp(0, 2);
  b[2] = sp(1, 2);
  b[3] = (Mat3() << s2, 0, 0, 0, -s2, 0, 0, 0, 0).finished();
  b[4] = (Mat3() << s6, 0, 0, 0, s6, 0, 0, 0, -2 * s6).finished();
  b[5] = sk(0, 1);
  b[6] = sk(0, 2);
  b[7] = sk(1, 2);
  return b;
}

const std::array<Mat3, 8>& basis() {
  static const std::array<Mat3, 8> b = tracefree_basis();
  return b;
}

const std::array<InteriorCoeffs, 8>& interior_basis_coeffs() {
  static std::array<InteriorCoeffs, 8> c;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int k = 0; k < 8; ++k) c[k] = solve_interior_unit(basis()[k]);
  });
  return c;
}

InteriorCoeffs combine_for(const Mat3& a) {
  const auto& bs = basis();
  const auto& cs = interior_basis_coeffs();
  InteriorCoeffs out;
  for (int k = 0; k < 8; ++k) {
    const double w = ddot(a, bs[k]);
    if (w == 0.0) continue;
    for (int i = 0; i < 3; ++i)
      for (int m = 0; m < kNMono; ++m) out.v[i][m] += w * cs[k].v[i][m];
    for (int j = 0; j < kNP; ++j) out.p[j] += w * cs[k].p[j];
  }
  return out;
}

Vec3 poly_velocity(const InteriorCoeffs& c, const Vec3& y) {
  Vec3 v = Vec3::Zero();
  for (int m = 0; m < kNMono; ++m) {
    const double mv = mono_eval(m, y);
    for (int i = 0; i < 3; ++i) v(i) += c.v[i][m] * mv;
  }
  return v;
}

double poly_pressure(const InteriorCoeffs& c, const Vec3& y) {
  double p = 0.0;
  for (int k = 0; k < kNP; ++k) p += c.p[k] * mono_eval(pidx_to_mono(k), y);
  return p;
}

Mat3 poly_velocity_grad(const InteriorCoeffs& c, const Vec3& y) {
  Mat3 g = Mat3::Zero();
  for (int m = 0; m < kNMono; ++m) {
    const auto e = kExp[m];
    Vec3 gm = Vec3::Zero();
    const int mx = mono_index(e.a - 1, e.b, e.c);
    const int my = mono_index(e.a, e.b - 1, e.c);
    const int mz = mono_index(e.a, e.b, e.c - 1);
    if (mx >= 0) gm.x() = e.a * mono_eval(mx, y);
    if (my >= 0) gm.y() = e.b * mono_eval(my, y);
    if (mz >= 0) gm.z() = e.c * mono_eval(mz, y);
    for (int i = 0; i < 3; ++i) g.row(i) += c.v[i][m] * gm.transpose();
  }
  return g;
}

}  // namespace

Mat3 oseen(const Vec3& x) {
  require_nonzero(x);
  const double r2 = x.squaredNorm();
  const double r = std::sqrt(r2);
  return (Mat3::Identity() / r + outer(x, x) / (r2 * r)) / (8.0 * kPi);
}

Vec3 oseen_pressure(const Vec3& x) {
  require_nonzero(x);
  const double r = x.norm();
  return x / (4.0 * kPi * r * r * r);
}

std::pair<Vec3, double> dipole_field(const Mat3& a, const Vec3& x) {
  require_nonzero(x);
  const double r2 = x.squaredNorm();
  const double r = std::sqrt(r2);
  const double r3 = r * r2, r5 = r3 * r2;
  const double q = x.dot(a * x);
  const Vec3 h = -3.0 / (8.0 * kPi) * q / r5 * x -
                 1.0 / (8.0 * kPi) * ((a - a.transpose()) * x) / r3;
  const double p = -3.0 / (4.0 * kPi) * q / r5;
  return {h, p};
}

Mat3 oseen_hess_apply(const Vec3& x, const Mat3& a) {
  require_nonzero(x);
  const double r2 = x.squaredNorm();
  const double r = std::sqrt(r2);
  const double r3 = r * r2, r5 = r3 * r2, r7 = r5 * r2;
  const double q = x.dot(a * x);
  const Vec3 s = (a + a.transpose()) * x;
  const Mat3 b = a - a.transpose();
  Mat3 g = -3.0 / (8.0 * kPi) *
           (outer(x, s) / r5 + q / r5 * Mat3::Identity() -
            5.0 * q / r7 * outer(x, x));
  g -= 1.0 / (8.0 * kPi) * (b / r3 - 3.0 / r5 * outer(b * x, x));
  return g;
}

std::pair<Vec3, double> h_eta_interior(const Mat3& a, double eta,
                                       const Vec3& x) {
  if (!(eta > 0.0)) throw std::invalid_argument("h_eta_interior: eta > 0");
  const double r = x.norm();
  if (r > eta * (1.0 + 1e-12))
    throw std::domain_error("h_eta_interior: |x| > eta");
  const InteriorCoeffs c = combine_for(a);
  const Vec3 y = x / eta;
  return {poly_velocity(c, y) / (eta * eta),
          poly_pressure(c, y) / (eta * eta * eta)};
}

Mat3 h_eta_interior_grad(const Mat3& a, double eta, const Vec3& x) {
  if (!(eta > 0.0)) throw std::invalid_argument("h_eta_interior: eta > 0");
  const double r = x.norm();
  if (r > eta * (1.0 + 1e-12))
    throw std::domain_error("h_eta_interior_grad: |x| > eta");
  const InteriorCoeffs c = combine_for(a);
  return poly_velocity_grad(c, x / eta) / (eta * eta * eta);
}

std::pair<Vec3, double> h_eta(const Mat3& a, double eta, const Vec3& x) {
  if (x.norm() <= eta) return h_eta_interior(a, eta, x);
  return dipole_field(a, x);
}

Mat3 h_eta_grad(const Mat3& a, double eta, const Vec3& x) {
  if (x.norm() <= eta) return h_eta_interior_grad(a, eta, x);
  return oseen_hess_apply(x, a);
}

Mat3 theta_eta(const Mat3& a, double eta, const Vec3& x) {
  if (!(eta > 0.0)) throw std::invalid_argument("theta_eta: eta > 0");
  const double r2 = x.squaredNorm();
  if (r2 > eta * eta) return Mat3::Zero();
  // The polynomial block carries the transposed strength: the skew part has
  // to enter with opposite orientation for div(theta) to equal the traction
  // jump of the regularized dipole (and hence for theta -> A delta_0). The
  // delta-limit and jump tests pin this down.
  const Mat3 at = a.transpose();
  const double e2 = eta * eta;
  const double e5 = e2 * e2 * eta;
  const Vec3 ax = at * x;
  Mat3 poly = 3.0 / (kPi * e5) *
              (outer(ax, x) + outer(x, ax) - 2.5 * r2 * at + 1.25 * e2 * at);
  const Mat3 g = h_eta_interior_grad(a, eta, x);
  const double p = h_eta_interior(a, eta, x).second;
  return poly - (g + g.transpose()) + p * Mat3::Identity();
}

}  // namespace kernels
}  // namespace susp
