#include "susp/particle.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace susp {
namespace particle {

namespace {

void require_unit(const Vec3& xi) {
  if (std::abs(xi.norm() - 1.0) > kUnitTol)
    throw std::invalid_argument("particle: orientation is not unit length");
}

}  // namespace

ParticleShape ParticleShape::sphere() { return ParticleShape{}; }

ParticleShape ParticleShape::spheroid(double aspect_ratio, double c_iso,
                                      double c_axial, double c_cross) {
  ParticleShape s;
  s.kind = Kind::spheroid;
  s.aspect_ratio = aspect_ratio;
  s.bretherton = (aspect_ratio * aspect_ratio - 1.0) /
                 (aspect_ratio * aspect_ratio + 1.0);
  s.c_iso = c_iso;
  s.c_axial = c_axial;
  s.c_cross = c_cross;
  s.validate();
  return s;
}

void ParticleShape::validate() const {
  if (kind == Kind::sphere && bretherton != 0.0)
    throw ConfigError("sphere must have bretherton = 0");
  if (!(aspect_ratio > 0.0)) throw ConfigError("aspect_ratio must be positive");
  if (!(std::abs(bretherton) < 1.0))
    throw ConfigError("|bretherton| must be < 1");
  if (!std::isfinite(c_iso) || !std::isfinite(c_axial) ||
      !std::isfinite(c_cross))
    throw ConfigError("stresslet coefficients must be finite");
}

ParticleShape ParticleShape::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open shape file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  auto need = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError("shape file misses key: " + k);
    return it->second;
  };
  ParticleShape s;
  const std::string kind = need("kind");
  if (kind == "sphere") {
    s = sphere();
  } else if (kind == "spheroid") {
    s.kind = Kind::spheroid;
    s.aspect_ratio = std::stod(need("aspect_ratio"));
    s.bretherton = std::stod(need("beta"));
    s.c_iso = std::stod(need("c_iso"));
    s.c_axial = std::stod(need("c_axial"));
    s.c_cross = std::stod(need("c_cross"));
  } else {
    throw ConfigError("unknown shape kind: " + kind);
  }
  s.validate();
  return s;
}

void ParticleShape::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write shape file: " + path);
  out.precision(17);
  out << "kind=" << (kind == Kind::sphere ? "sphere" : "spheroid") << "\n";
  out << "aspect_ratio=" << aspect_ratio << "\n";
  out << "beta=" << bretherton << "\n";
  out << "c_iso=" << c_iso << "\n";
  out << "c_axial=" << c_axial << "\n";
  out << "c_cross=" << c_cross << "\n";
}

Mat3 mobility_matrix(const ParticleShape& shape, const Vec3& xi,
                     const Mat3& a) {
  require_unit(xi);
  const Mat3 w = 0.5 * (a - a.transpose());
  if (shape.bretherton == 0.0) return w;
  const Vec3 exi = sym0(a) * xi;
  return w + shape.bretherton * (outer(exi, xi) - outer(xi, exi));
}

Vec3 mobility_apply(const ParticleShape& shape, const Vec3& xi,
                    const Mat3& grad_u) {
  require_unit(xi);
  if (std::abs(grad_u.trace()) > 1e-10 * std::max(1.0, grad_u.norm()))
    throw std::invalid_argument(
        "mobility_apply: background gradient is not tracefree");
  const Mat3 w = 0.5 * (grad_u - grad_u.transpose());
  Vec3 xidot = w * xi;
  if (shape.bretherton != 0.0) {
    const Vec3 exi = sym_part(grad_u) * xi;
    xidot += shape.bretherton * (exi - xi.dot(exi) * xi);
  }
  return xidot;
}

Mat3 stresslet_apply(const ParticleShape& shape, const Vec3& xi,
                     const Mat3& e) {
  require_unit(xi);
  const double scale = std::max(1.0, e.norm());
  if (std::abs(e.trace()) > 1e-10 * scale ||
      (e - e.transpose()).norm() > 1e-10 * scale)
    throw std::invalid_argument(
        "stresslet_apply: strain must be symmetric tracefree");
  Mat3 s = shape.c_iso * e;
  if (shape.kind == ParticleShape::Kind::spheroid) {
    const double q = xi.dot(e * xi);
    const Vec3 exi = e * xi;
    s += shape.c_axial * q * (outer(xi, xi) - Mat3::Identity() / 3.0);
    s += shape.c_cross *
         (outer(xi, exi) + outer(exi, xi) - 2.0 * q * outer(xi, xi));
  }
  return s;
}

Mat3 mbar_apply(const ParticleShape& shape, const Vec3& xi, const Vec3& zeta) {
  require_unit(xi);
  Mat3 m = 0.5 * (outer(zeta, xi) - outer(xi, zeta));
  if (shape.bretherton != 0.0) {
    m += shape.bretherton *
         (sym0_outer(zeta, xi) - zeta.dot(xi) * sym0_outer(xi, xi));
  }
  return m;
}

}  // namespace particle
}  // namespace susp
