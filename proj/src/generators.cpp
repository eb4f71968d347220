#include "pentamesh/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pentamesh {

std::vector<Point3> spiral_sphere(size_t n) {
  std::vector<Point3> out;
  if (n == 0)
    return out;
  if (n == 1)
    return {Point3(0, 0, 1)};
  double phi = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const double h = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(n - 1);
    const double theta = std::acos(std::clamp(h, -1.0, 1.0));
    if (k == 0 || k == n - 1)
      phi = 0.0;
    else
      phi = std::fmod(phi + 3.6 / std::sqrt(static_cast<double>(n) * (1.0 - h * h)), 2.0 * std::numbers::pi);
    out.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), h);
  }
  return out;
}

size_t sphere_count(double R, double h) {
  return std::max<size_t>(6, static_cast<size_t>(std::llround(4.0 * std::numbers::pi * R * R / (h * h))));
}

namespace {

Eigen::Matrix3d random_rotation(std::mt19937_64 &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector4d q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  return Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
}

} // namespace

std::vector<Point4> generate_hypercylinder_points(const HypercylinderSampling &cfg) {
  if (!(cfg.R > 0 && cfg.L > 0 && cfg.h_sphere > 0 && cfg.h_time > 0))
    throw std::invalid_argument("hypercylinder parameters must be positive");
  std::mt19937_64 rng(cfg.seed);
  const auto unit = spiral_sphere(sphere_count(cfg.R, cfg.h_sphere));
  const size_t levels = static_cast<size_t>(std::ceil(cfg.L / cfg.h_time - 1e-12)) + 1;
  std::vector<Point4> pts;
  for (size_t j = 0; j < levels; ++j) {
    const double t = cfg.L * static_cast<double>(j) / static_cast<double>(levels - 1);
    const Eigen::Matrix3d rot = cfg.rotate_levels ? random_rotation(rng) : Eigen::Matrix3d::Identity();
    for (const auto &u : unit) {
      const Point3 x = cfg.R * (rot * u);
      pts.emplace_back(x[0], x[1], x[2], t);
    }
  }
  if (cfg.caps) {
    // nested shells at radius R k / K, plus the axis point
    const int shells = static_cast<int>(std::ceil(cfg.R / cfg.h_sphere - 1e-12));
    for (double t : {0.0, cfg.L}) {
      pts.emplace_back(0.0, 0.0, 0.0, t);
      for (int k = 1; k < shells; ++k) {
        const double r = cfg.R * k / shells;
        const Eigen::Matrix3d rot = random_rotation(rng);
        for (const auto &u : spiral_sphere(sphere_count(r, cfg.h_sphere))) {
          const Point3 x = r * (rot * u);
          pts.emplace_back(x[0], x[1], x[2], t);
        }
      }
    }
  }
  // keep samples inside the closed cylinder despite rounding
  for (auto &p : pts) {
    const double n = p.head<3>().norm();
    if (n > cfg.R)
      p.head<3>() *= cfg.R / n;
  }
  return pts;
}

std::vector<Point4> generate_hypercylinder_points(double R, double L, double h_sphere, double h_time,
                                                  uint64_t seed) {
  HypercylinderSampling cfg;
  cfg.R = R;
  cfg.L = L;
  cfg.h_sphere = h_sphere;
  cfg.h_time = h_time;
  cfg.seed = seed;
  return generate_hypercylinder_points(cfg);
}

double hypercylinder_hypervolume(double R, double L) { return 4.0 / 3.0 * std::numbers::pi * R * R * R * L; }

std::vector<Point4> uniform_points(size_t n, uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point4> pts(n);
  for (auto &p : pts)
    for (int k = 0; k < 4; ++k)
      p[k] = u(rng);
  return pts;
}

} // namespace pentamesh
