#include <cmath>
#include <random>

#include "doctest.h"

#include "dharm/errors.hpp"
#include "dharm/reference.hpp"
#include "dharm/weierstrass.hpp"
#include "oracles/curvature_oracle.hpp"
#include "oracles/enneper_oracle.hpp"

using namespace dharm;

namespace {

const double sqrt3 = std::sqrt(3.0);

Vec3 antiderivative(Complex c, Complex z) {
  const auto w = oracle::enneper_antiderivative(c, z);
  return Vec3(w[0].real(), w[1].real(), w[2].real());
}

}  // namespace

TEST_CASE("printed Enneper formula") {
  CHECK(enneper_paper(0, 0, 1).norm() == 0.0);
  CHECK((enneper_paper(1, 0, 1) - Vec3(sqrt3 * 4 / 3, 0, sqrt3)).norm() < 1e-15);
  const Vec3 a = enneper_paper(0.3, -0.7, 1.0), b = enneper_paper(0.3, -0.7, 2.0);
  CHECK((b - 2 * a).norm() < 1e-15);
}

TEST_CASE("quadrature against the closed-form antiderivative") {
  const Complex c(enneper_q_per_nu, 0.0);
  const auto data = enneper_reference(HoloFunction::identity(), c);
  for (Complex z : {Complex(1, 0), Complex(-0.6, 0), Complex(1.5, 0), Complex(0.4, 0.9), Complex(-1.2, -0.3)})
    CHECK((weierstrass_quadrature(data, z) - antiderivative(c, z)).norm() <= 1e-10);
  // complex c and a shifted base point
  ClassicalWeierstrassData d2 = enneper_reference(HoloFunction::identity(), Complex(0.5, 2.0));
  d2.z0 = Complex(0.2, -0.1);
  d2.base = Vec3(1, 2, 3);
  const Complex z(-0.7, 0.5);
  const Vec3 expect = d2.base + antiderivative(Complex(0.5, 2.0), z) - antiderivative(Complex(0.5, 2.0), d2.z0);
  CHECK((weierstrass_quadrature(d2, z) - expect).norm() <= 1e-10);
  CHECK(weierstrass_quadrature(d2, d2.z0) == d2.base);
}

TEST_CASE("quadrature is path independent") {
  const auto data = enneper_reference(HoloFunction::identity(), enneper_q_per_nu);
  const Complex target(1.1, 0.6);
  const std::vector<Complex> p1{{1.1, 0}, target}, p2{{0, 0.6}, {-0.5, 1.0}, target};
  const Vec3 a = weierstrass_quadrature_path(data, p1), b = weierstrass_quadrature_path(data, p2);
  CHECK((a - b).norm() <= 1e-10);
  CHECK((a - weierstrass_quadrature(data, target)).norm() <= 1e-10);
  // a non-polynomial integrand: g = exp-like Moebius map, Q = 1
  ClassicalWeierstrassData m{HoloFunction::mobius(1, 0.5, 0.2, 1), [](Complex) { return Complex(1, 0); }, 0.0,
                             Vec3::Zero()};
  CHECK((weierstrass_quadrature_path(m, p1) - weierstrass_quadrature_path(m, p2)).norm() <= 1e-10);
}

TEST_CASE("quadrature errors") {
  ClassicalWeierstrassData sq{HoloFunction::polynomial({0, 0, 1}), [](Complex) { return Complex(1, 0); }, -1.0,
                              Vec3::Zero()};
  CHECK_THROWS_AS(weierstrass_quadrature(sq, 1.0), SingularDataError);
}

TEST_CASE("classical Gauss map") {
  CHECK((classical_gauss_map(0.0) - Vec3(0, 0, -1)).norm() == 0.0);
  CHECK((classical_gauss_map(1.0) - Vec3(1, 0, 0)).norm() < 1e-16);
  CHECK((classical_gauss_map(imag_unit) - Vec3(0, 1, 0)).norm() < 1e-16);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const Complex g(n(rng), n(rng));
    CHECK(std::abs(classical_gauss_map(g).norm() - 1.0) < 1e-15);
    CHECK(classical_gauss_map(g) == pseudo_normal(g));
  }
}

TEST_CASE("calibration") {
  const auto one = calibrate_q(1.0);
  CHECK(one.residual <= 1e-8);
  CHECK(std::abs(one.c - Complex(enneper_q_per_nu, 0)) <= 1e-12);
  CHECK(std::abs(one.c - 2 * sqrt3) <= 1e-12);
  CHECK(one.printed_formula_residual > 1e-3);
  const auto zero = calibrate_q(0.0);
  CHECK(std::abs(zero.c) == 0.0);
  const auto s = calibrate_q(2.5);
  CHECK(std::abs(s.c - 2.5 * one.c) <= 1e-12);
  const auto rot = calibrate_q(Complex(0, 1));
  CHECK(std::abs(rot.c - Complex(0, 1) * one.c) <= 1e-12);
}

TEST_CASE("classical surface is minimal") {
  const auto data = enneper_reference(HoloFunction::identity(), enneper_q_per_nu);
  auto X = [&](double u, double v) {
    const Vec3 p = weierstrass_quadrature(data, {u, v});
    return oracle::V3{p.x(), p.y(), p.z()};
  };
  for (double u : {-0.5, 0.0, 0.5})
    for (double v : {-0.5, 0.25, 0.5}) {
      const auto fd = oracle::finite_difference_curvature(X, u, v, 1e-3);
      CHECK(std::abs(fd.H) <= 1e-6);
      const double K = classical_gauss_curvature(data, {u, v});
      CHECK(K < 0.0);
      CHECK(fd.K == doctest::Approx(K).epsilon(1e-4));
    }
}

TEST_CASE("Gauss curvature of a rescaled surface") {
  const auto a = enneper_reference(HoloFunction::identity(), 1.0);
  const auto b = enneper_reference(HoloFunction::identity(), 2.0);
  const Complex z(0.3, -0.4);
  CHECK(classical_gauss_curvature(b, z) == doctest::Approx(classical_gauss_curvature(a, z) / 4).epsilon(1e-14));
  // closed form for g = z, Q = 1: K = -16 / (1 + |z|^2)^4
  CHECK(classical_gauss_curvature(a, z) == doctest::Approx(-16.0 / std::pow(1 + std::norm(z), 4)).epsilon(1e-14));
}
