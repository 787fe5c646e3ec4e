#pragma once

// Shared linear-algebra aliases, strong types for the small tensor zoo
// (unit orientations, tracefree / symmetric / skew 3x3 matrices) and the
// tolerances their invariants are checked at.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace susp {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

// Default tolerance for structural matrix invariants (trace, symmetry).
inline constexpr double kStructTol = 1e-12;
// Orientation vectors must be unit length within this before use.
inline constexpr double kUnitTol = 1e-8;

inline Mat3 sym_part(const Mat3& a) { return 0.5 * (a + a.transpose()); }
inline Mat3 skew_half(const Mat3& a) { return 0.5 * (a - a.transpose()); }
inline Mat3 deviatoric(const Mat3& a) {
  return a - (a.trace() / 3.0) * Mat3::Identity();
}
// Tracefree symmetric part, the |sym_0| projection.
inline Mat3 sym0(const Mat3& a) { return deviatoric(sym_part(a)); }

// Frobenius pairing A:B.
inline double ddot(const Mat3& a, const Mat3& b) {
  return (a.array() * b.array()).sum();
}

inline Mat3 outer(const Vec3& a, const Vec3& b) { return a * b.transpose(); }

// a (x)_s^0 b = (a(x)b + b(x)a)/2 - (a.b)/3 Id
inline Mat3 sym0_outer(const Vec3& a, const Vec3& b) {
  return 0.5 * (outer(a, b) + outer(b, a)) -
         (a.dot(b) / 3.0) * Mat3::Identity();
}

// Orientation on the unit sphere. Construction normalizes; from_unit
// rejects inputs that are not already unit length within kUnitTol.
class UnitVec3 {
 public:
  explicit UnitVec3(const Vec3& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n))
      throw std::invalid_argument("UnitVec3: cannot normalize zero or non-finite vector");
    v_ = v / n;
  }
  static UnitVec3 from_unit(const Vec3& v) {
    if (std::abs(v.norm() - 1.0) > kUnitTol)
      throw std::invalid_argument("UnitVec3: |v| deviates from 1 beyond 1e-8");
    UnitVec3 u;
    u.v_ = v;
    return u;
  }
  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }

 private:
  UnitVec3() = default;
  Vec3 v_;
};

// Tracefree 3x3 matrix (R^{3x3}_0).
class TracefreeMat3 {
 public:
  explicit TracefreeMat3(const Mat3& m, double tol = kStructTol) : m_(m) {
    if (std::abs(m.trace()) > tol * std::max(1.0, m.norm()))
      throw std::invalid_argument("TracefreeMat3: trace exceeds tolerance");
  }
  static TracefreeMat3 project(const Mat3& m) {
    TracefreeMat3 t;
    t.m_ = deviatoric(m);
    return t;
  }
  const Mat3& mat() const { return m_; }
  operator const Mat3&() const { return m_; }

 private:
  TracefreeMat3() = default;
  Mat3 m_;
};

// Symmetric tracefree 3x3 matrix (sym_0(3)).
class SymTracefreeMat3 {
 public:
  explicit SymTracefreeMat3(const Mat3& m, double tol = kStructTol) : m_(m) {
    const double scale = std::max(1.0, m.norm());
    if (std::abs(m.trace()) > tol * scale)
      throw std::invalid_argument("SymTracefreeMat3: trace exceeds tolerance");
    if ((m - m.transpose()).norm() > tol * scale)
      throw std::invalid_argument("SymTracefreeMat3: not symmetric");
  }
  static SymTracefreeMat3 project(const Mat3& m) {
    SymTracefreeMat3 t;
    t.m_ = sym0(m);
    return t;
  }
  const Mat3& mat() const { return m_; }
  operator const Mat3&() const { return m_; }

 private:
  SymTracefreeMat3() = default;
  Mat3 m_;
};

// Antisymmetric 3x3 matrix (skew(3)).
class SkewMat3 {
 public:
  explicit SkewMat3(const Mat3& m, double tol = kStructTol) : m_(m) {
    if ((m + m.transpose()).norm() > tol * std::max(1.0, m.norm()))
      throw std::invalid_argument("SkewMat3: not antisymmetric");
  }
  static SkewMat3 project(const Mat3& m) {
    SkewMat3 t;
    t.m_ = 0.5 * (m - m.transpose());
    return t;
  }
  const Mat3& mat() const { return m_; }
  operator const Mat3&() const { return m_; }

 private:
  SkewMat3() = default;
  Mat3 m_;
};

// Axis-aligned box, the window/domain primitive used throughout.
struct Box3 {
  Vec3 lo{0, 0, 0};
  Vec3 hi{0, 0, 0};
  Vec3 extent() const { return hi - lo; }
  double volume() const {
    const Vec3 e = extent();
    return e.x() * e.y() * e.z();
  }
  bool contains(const Vec3& p) const {
    return (p.array() >= lo.array()).all() && (p.array() < hi.array()).all();
  }
  Box3 padded(double pad) const {
    return Box3{lo - Vec3::Constant(pad), hi + Vec3::Constant(pad)};
  }
  static Box3 cube(double half, const Vec3& center = Vec3::Zero()) {
    return Box3{center - Vec3::Constant(half), center + Vec3::Constant(half)};
  }
};

// Configuration / input validation failure (exit code 2 at the CLI).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace susp
