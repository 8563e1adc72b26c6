#include <cmath>
#include <random>

#include "doctest.h"
#include "obl/birkhoff.hpp"
#include "obl/horizontal.hpp"
#include "test_helpers.hpp"

using namespace obl;
using oblt::kTwoPi;

namespace {

ControlSignal random_seed(int n, double size, std::mt19937& rng, int modes = 2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ControlSignal seed =
      ControlSignal::constants(std::vector<double>(static_cast<std::size_t>(n), 0.0),
                               modes);
  for (auto& row : seed.coeffs)
    for (auto& c : row) c = size * u(rng);
  return seed;
}

double endpoint_error(int n, int k, int N) {
  auto [Z0, base] = circle_baseline(n, k);
  HorizontalPath path = integrate(Z0, base, N);
  Polygon target = cyclic_shift(Z0, 1);
  double worst = 0;
  for (long i = 0; i < Z0.n(); ++i)
    worst = std::max(worst, norm(path.samples.back()[i] - target[i]));
  return worst;
}

}  // namespace

TEST_CASE("zero controls give a constant path") {
  std::mt19937 rng(71);
  Polygon Z = oblt::random_polygon(4, rng);
  ControlSignal zero = ControlSignal::constants({0, 0, 0, 0});
  HorizontalPath path = integrate(Z, zero, 50);
  for (const Polygon& P : path.samples)
    for (long i = 0; i < 4; ++i) CHECK(norm(P[i] - Z[i]) < 1e-15);

  std::vector<double> res = monodromy_residual(path);
  Polygon target = cyclic_shift(Z, 1);
  for (long i = 0; i < 4; ++i) {
    Vec2 d = Z[i] - target[i];
    CHECK(res[static_cast<std::size_t>(2 * i)] == doctest::Approx(d.x));
    CHECK(res[static_cast<std::size_t>(2 * i + 1)] == doctest::Approx(d.y));
  }
}

TEST_CASE("circle baseline: constants, closure, envelope radius") {
  auto [Z0, base] = circle_baseline(3, 1);
  // Rotational symmetry forces one common constant control.
  for (int j = 1; j < 3; ++j)
    CHECK(base.baseline[static_cast<std::size_t>(j)] ==
          doctest::Approx(base.baseline[0]).epsilon(1e-10));

  CHECK(endpoint_error(3, 1, 2000) < 1e-8);
  CHECK(endpoint_error(5, 2, 2000) < 1e-8);
  CHECK_THROWS_AS(circle_baseline(4, 2), DomainError);

  HorizontalPath path = integrate(Z0, base, 400);
  EnvelopeCurve env = reconstruct_table(path);
  CHECK(env.convex);
  for (const Vec2& p : env.points)
    CHECK(norm(p) == doctest::Approx(0.5).epsilon(1e-7));

  auto [Z5, base5] = circle_baseline(5, 2);
  EnvelopeCurve env5 = reconstruct_table(integrate(Z5, base5, 400));
  for (const Vec2& p : env5.points)
    CHECK(norm(p) == doctest::Approx(std::cos(kTwoPi / 5)).epsilon(1e-7));
}

TEST_CASE("horizontality and area conservation along integrated paths") {
  std::mt19937 rng(73);
  auto [Z0, base] = circle_baseline(4, 1);
  ControlSignal controls = base;
  ControlSignal pert = random_seed(4, 0.05, rng);
  controls.coeffs = pert.coeffs;
  HorizontalPath path = integrate(Z0, controls, 2000);
  double scale = Z0.diameter();
  double a0 = area2(Z0);
  for (int s = 0; s <= path.steps; s += 100) {
    const Polygon& Z = path.samples[static_cast<std::size_t>(s)];
    CHECK(is_horizontal(Z, path.velocity_at(s), 1e-9));
    CHECK(std::abs(area2(Z) - a0) < 1e-9 * scale * scale);
  }
}

TEST_CASE("integrator is fourth order") {
  double e1 = endpoint_error(3, 1, 40);
  double e2 = endpoint_error(3, 1, 80);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("shoot on (3,1): convergence and distinct tables") {
  std::mt19937 rng(79);
  ShootReport rep0;
  ControlSignal zero;
  ControlSignal out = shoot(3, 1, zero, 30, 2000, &rep0);
  CHECK(rep0.iterations == 0);  // baseline is already closed

  auto run = [&](ControlSignal seed) {
    ShootReport rep;
    ControlSignal c = shoot(3, 1, seed, 30, 2000, &rep);
    CHECK(rep.converged);
    CHECK(rep.residual_history.back() < 1e-8 * 2.0);
    auto [Z0, base] = circle_baseline(3, 1);
    return reconstruct_table(integrate(Z0, c, 2000));
  };
  EnvelopeCurve a = run(random_seed(3, 0.05, rng));
  EnvelopeCurve b = run(random_seed(3, 0.05, rng));
  CHECK(a.convex);
  CHECK(b.convex);
  CHECK(hausdorff_distance(a.points, b.points) > 1e-3);
}

TEST_CASE("verify_periodic_family end to end") {
  auto [Z0, base] = circle_baseline(3, 1);
  FamilyReport rep = verify_periodic_family(integrate(Z0, base, 1000), 20);
  CHECK(rep.fit_ok);
  CHECK(rep.max_closure < 1e-6);
  CHECK(rep.area_spread < 1e-9);

  std::mt19937 rng(83);
  ControlSignal c = shoot(3, 1, random_seed(3, 0.05, rng));
  FamilyReport pert = verify_periodic_family(integrate(Z0, c, 2000), 50);
  CHECK(pert.fit_ok);
  CHECK(pert.max_closure < 1e-5);
  CHECK(pert.area_spread < 1e-6);

  // A path that is far from closed must be rejected.
  ControlSignal broken = base;
  broken.baseline[0] += 0.05;
  CHECK_THROWS_AS(reconstruct_table(integrate(Z0, broken, 500)),
                  PreconditionError);
}

TEST_CASE("deck-symmetrized controls repeat along the deck orbit") {
  std::mt19937 rng(89);
  ControlSignal c = random_seed(5, 0.3, rng).with_deck(5, 2);
  for (double t : {0.07, 0.21, 0.44}) {
    for (long m = 1; m <= 5; ++m)
      CHECK(c.eval(m, t) == doctest::Approx(c.eval(m + 2, t + 0.5)).epsilon(1e-14));
  }
}

TEST_CASE("shoot on (5,2) closes the star family") {
  std::mt19937 rng(97);
  ShootReport rep;
  ControlSignal c = shoot(5, 2, random_seed(5, 0.05, rng), 30, 2000, &rep);
  CHECK(rep.converged);
  auto [Z0, base] = circle_baseline(5, 2);
  HorizontalPath path = integrate(Z0, c, 2000);
  // Full monodromy follows from the fractional (deck) closure.
  double rn = 0;
  for (double v : monodromy_residual(path)) rn += v * v;
  CHECK(std::sqrt(rn) < 1e-7);
  FamilyReport fam = verify_periodic_family(path, 50);
  CHECK(fam.fit_ok);
  CHECK(fam.max_closure < 1e-5);
  CHECK(fam.area_spread < 1e-6);
}
