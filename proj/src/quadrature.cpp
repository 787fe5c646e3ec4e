#include "susp/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace susp {

Quad1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
  Quad1D q;
  q.x.resize(n);
  q.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.x[i] = -x;
    q.x[n - 1 - i] = x;
    q.w[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    q.w[n - 1 - i] = q.w[i];
  }
  return q;
}

Quad1D gauss_legendre(int n, double a, double b) {
  Quad1D q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.x[i] = mid + half * q.x[i];
    q.w[i] *= half;
  }
  return q;
}

SphereRule sphere_rule(int n_polar, int n_azimuth) {
  SphereRule r;
  const Quad1D gz = gauss_legendre(n_polar);  // cos(theta) in [-1,1]
  r.node.reserve(static_cast<std::size_t>(n_polar) * n_azimuth);
  r.weight.reserve(r.node.capacity());
  for (int i = 0; i < n_polar; ++i) {
    const double z = gz.x[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < n_azimuth; ++j) {
      const double phi = 2.0 * kPi * (j + 0.5) / n_azimuth;
      r.node.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
      r.weight.push_back(gz.w[i] * 2.0 * kPi / n_azimuth);
    }
  }
  return r;
}

std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> pts;
  pts.reserve(n);
  const double ga = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = ga * i;
    pts.emplace_back(s * std::cos(phi), s * std::sin(phi), z);
  }
  return pts;
}

Mat3 annulus_integral(const std::function<Mat3(const Vec3&)>& f, double d0,
                      double d1, int level) {
  if (!(0.0 < d0 && d0 < d1))
    throw std::invalid_argument("annulus_integral: need 0 < d0 < d1");
  const int n_r = 8 << level;
  // Midpoints in cos(theta); resolution doubles per level. The polar count
  // controls the cancellation error for -3-homogeneous kernels, so it
  // starts high. The azimuthal rule is already exact for the low trig
  // degrees arising here and stays fixed.
  const int n_pol = 512 << level;
  const int n_az = 8;
  Mat3 acc = Mat3::Zero();
  for (int i = 0; i < n_r; ++i) {
    const double r = d0 + (d1 - d0) * (i + 0.5) / n_r;
    const double wr = (d1 - d0) / n_r * r * r;
    Mat3 ang = Mat3::Zero();
    for (int p = 0; p < n_pol; ++p) {
      const double z = -1.0 + 2.0 * (p + 0.5) / n_pol;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      Mat3 az = Mat3::Zero();
      for (int a = 0; a < n_az; ++a) {
        const double phi = 2.0 * kPi * (a + 0.5) / n_az;
        az += f(r * Vec3(s * std::cos(phi), s * std::sin(phi), z));
      }
      ang += az * (2.0 / n_pol) * (2.0 * kPi / n_az);
    }
    acc += wr * ang;
  }
  return acc;
}

namespace {
std::atomic<int> g_threads{0};
}

void set_default_threads(int threads) { g_threads.store(threads); }

int default_threads() {
  const int t = g_threads.load();
  if (t > 0) return t;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double par_sum_ranges(std::size_t n,
                      const std::function<double(std::size_t, std::size_t)>& f,
                      int threads) {
  if (n == 0) return 0.0;
  if (threads <= 0) threads = default_threads();
  // Fixed chunk layout independent of the thread count.
  const std::size_t chunk = std::max<std::size_t>(1, (n + 255) / 256);
  const std::size_t n_chunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(n_chunks, 0.0);
  if (threads == 1 || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c)
      partial[c] = f(c * chunk, std::min(n, (c + 1) * chunk));
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        partial[c] = f(c * chunk, std::min(n, (c + 1) * chunk));
      }
    };
    std::vector<std::thread> pool;
    const int nt = std::min<std::size_t>(threads, n_chunks);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  // Pairwise combination in fixed order.
  std::vector<double> level = std::move(partial);
  while (level.size() > 1) {
    std::vector<double> up((level.size() + 1) / 2, 0.0);
    for (std::size_t i = 0; i < up.size(); ++i) {
      up[i] = level[2 * i];
      if (2 * i + 1 < level.size()) up[i] += level[2 * i + 1];
    }
    level = std::move(up);
  }
  return level[0];
}

double par_sum(std::size_t n, const std::function<double(std::size_t)>& f,
               int threads) {
  return par_sum_ranges(
      n,
      [&](std::size_t b, std::size_t e) {
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += f(i);
        return s;
      },
      threads);
}

}  // namespace susp
