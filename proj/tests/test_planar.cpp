#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "kitecc/equations.hpp"
#include "kitecc/planar.hpp"

using kitecc::Interval;

namespace {

// symmetry-breaking point of the symmetric family, 25 significant digits
constexpr double kY3s = 0.54233752422435256;
constexpr double kY4s = 1.6914457242321707;
constexpr double kLams = 1.0548209835775945;
constexpr double kMs = 0.99229944775238535;

std::array<Interval, 5> thin_state(double x3, double y3, double x4, double y4,
                                   double lam) {
  return {Interval(x3), Interval(y3), Interval(x4), Interval(y4),
          Interval(lam)};
}

std::array<Interval, 5> puffed_state(double x3, double y3, double x4,
                                     double y4, double lam, double eps) {
  return {Interval(x3 - eps, x3 + eps), Interval(y3 - eps, y3 + eps),
          Interval(x4 - eps, x4 + eps), Interval(y4 - eps, y4 + eps),
          Interval(lam - eps, lam + eps)};
}

void check_solution(const std::array<Interval, 5>& st, double m,
                    double tol = 1e-12) {
  auto e = kitecc::eval_planar(st, Interval(m));
  for (const auto& r : e) CHECK(std::fabs(r.mid()) < tol);
  auto chk = kitecc::planar_residual_check(st, Interval(m));
  for (const auto& r : chk) CHECK(std::fabs(r.mid()) < tol);
}

}  // namespace

TEST_CASE("exact symmetric solution at mass one") {
  double u = 1.0 / std::sqrt(3.0), v = std::sqrt(3.0);
  double lam = 1.024519052838329;
  check_solution(thin_state(0.0, u, 0.0, v, lam), 1.0);
  // with a puffed box every residual encloses zero
  auto e = kitecc::eval_planar(puffed_state(0.0, u, 0.0, v, lam, 1e-10),
                               Interval(1.0));
  for (const auto& r : e) CHECK(r.contains_zero());
}

TEST_CASE("symmetric states built from certified shapes solve the system") {
  struct Row {
    double a, b, m, q3y, q4y;
  };
  // (a, b) on the solution curve with m = eval_m(a, b)
  const Row rows[] = {
      {1.0036447132297762, 1.6698657843127063, 0.4, 0.085455897362790554,
       1.3373300780354451},
      {1.1733802447932033, 2.0369863931895206, 1.0027133290370827,
       0.61385763729952703, 1.7746305435327242},
  };
  for (const auto& r : rows) {
    Interval a(r.a), b(r.b);
    auto pos = kitecc::shape_to_positions(a, b);
    CHECK(std::fabs(pos[1].mid() - r.q3y) < 1e-13);
    CHECK(std::fabs(pos[3].mid() - r.q4y) < 1e-13);
    Interval lam = kitecc::eval_lambda(a, b, Interval(r.m));
    auto st = thin_state(0.0, pos[1].mid(), 0.0, pos[3].mid(), lam.mid());
    check_solution(st, r.m, 1e-11);
  }
}

TEST_CASE("asymmetric solutions from the reference table") {
  // m = 0.996
  check_solution(thin_state(-0.0099066998359340082, 0.54238136086915877,
                            0.048800764429556292, 1.690521629614046,
                            1.0578037383831147),
                 0.996);
  // m = 1
  check_solution(thin_state(-0.014277689766976199, 0.54242842912990102,
                            0.070277495785405743, 1.6895283608200606,
                            1.061027855049895),
                 1.0);
  // m at the fold mass
  check_solution(thin_state(-0.016593316438736794, 0.54246017191657363,
                            0.081632373536528404, 1.6888578828589364,
                            1.0632148764201343),
                 1.0027133290370827);
  // m = 2
  check_solution(thin_state(-0.13477940491659411, 0.54854256517952373,
                            0.5904621817500609, 1.5460132318759624,
                            1.8673244935556503),
                 2.0);
}

TEST_CASE("mirror image of an asymmetric solution also solves the system") {
  check_solution(thin_state(0.014277689766976199, 0.54242842912990102,
                            -0.070277495785405743, 1.6895283608200606,
                            1.061027855049895),
                 1.0);
}

TEST_CASE("massless base pair: swapped system solution") {
  auto st = thin_state(-0.23430343925991208, 0.55332883280364537,
                       0.86204510622439308, 1.3456025507794094,
                       0.80810552433518685);
  auto e = kitecc::SwappedPlanarSystem{}(st);
  for (const auto& r : e) CHECK(std::fabs(r.mid()) < 1e-12);
  auto chk = kitecc::swapped_residual_check(st);
  for (const auto& r : chk) CHECK(std::fabs(r.mid()) < 1e-12);
}

TEST_CASE("generic states are rejected") {
  std::mt19937_64 rng(49);
  std::uniform_real_distribution<double> jitter(0.005, 0.02);
  double u = 1.0 / std::sqrt(3.0), v = std::sqrt(3.0);
  for (int it = 0; it < 50; ++it) {
    auto st = thin_state(0.0 + jitter(rng), u - jitter(rng), 0.0, v,
                         1.024519052838329);
    auto e = kitecc::eval_planar(st, Interval(1.0));
    bool some_nonzero = false;
    for (const auto& r : e)
      if (!r.contains_zero()) some_nonzero = true;
    CHECK(some_nonzero);
  }
}

TEST_CASE("collisions raise DomainError") {
  auto st = thin_state(0.1, 0.5, 0.1, 0.5, 1.0);
  CHECK_THROWS_AS(kitecc::eval_planar(st, Interval(1.0)),
                  kitecc::DomainError);
  auto at_base = thin_state(-1.0, 0.0, 0.3, 1.0, 1.0);
  CHECK_THROWS_AS(kitecc::eval_planar(at_base, Interval(1.0)),
                  kitecc::DomainError);
}

TEST_CASE("jacobian at the symmetry-breaking state matches the reference") {
  kitecc::PlanarSystem sys{Interval(kMs)};
  kitecc::Box st(5);
  st[0] = Interval(0.0);
  st[1] = Interval(kY3s);
  st[2] = Interval(0.0);
  st[3] = Interval(kY4s);
  st[4] = Interval(kLams);
  kitecc::IntervalMatrix J = kitecc::jacobian(sys, st);

  const double ref[5][5] = {
      {1.9288962, 0.0, 0.39128726, 0.0, 0.0},
      {0.0, 1.667858, 0.0, -1.5706325, -0.013949807},
      {0.39128726, 0.0, 0.079374785, 0.0, 0.0},
      {0.0, -1.5706325, 0.0, 2.4224908, 1.1351584},
      {-1.1511584, -0.84740087, -0.23351884, -0.17189995, -1.0},
  };
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      double scale = std::fmax(1.0, std::fabs(ref[i][j]));
      if (ref[i][j] == 0.0) {
        // the checkerboard zeros are structural at symmetric states
        CHECK(std::fabs(J(i, j).mid()) < 1e-12);
      } else {
        CHECK(std::fabs(J(i, j).mid() - ref[i][j]) < 1e-6 * scale);
      }
    }
  CHECK(J(4, 4) == Interval(-1.0));
}

TEST_CASE("off-axis block is symmetric and singular at the breaking point") {
  auto a = kitecc::symmetric_offaxis_block(Interval(kY3s), Interval(kY4s),
                                           Interval(kLams), Interval(kMs));
  CHECK(std::fabs(a[0].mid() - 1.92889615565) < 1e-9);
  CHECK(std::fabs(a[1].mid() - 0.391287257443) < 1e-9);
  CHECK(std::fabs(a[2].mid() - 0.391287257443) < 1e-9);
  CHECK(std::fabs(a[3].mid() - 0.0793747851013) < 1e-9);
  Interval det = a[0] * a[3] - a[1] * a[2];
  CHECK(std::fabs(det.mid()) < 1e-9);
}

TEST_CASE("pitchfork locator vanishes at the breaking point") {
  std::array<Interval, 4> s = {Interval(kY3s), Interval(kY4s),
                               Interval(kLams), Interval(kMs)};
  auto r = kitecc::PitchforkLocatorSystem{}(s);
  for (const auto& ri : r) CHECK(std::fabs(ri.mid()) < 1e-9);
}

TEST_CASE("symmetric slice system agrees with the full system on the axis") {
  kitecc::SymmetricAxisSystem sym{Interval(kMs)};
  std::array<Interval, 3> s = {Interval(kY3s), Interval(kY4s),
                               Interval(kLams)};
  auto r = sym(s);
  for (const auto& ri : r) CHECK(std::fabs(ri.mid()) < 1e-12);

  // parameter derivative is finite and matches a central difference
  kitecc::Box x0(3);
  x0[0] = Interval(kY3s);
  x0[1] = Interval(kY4s);
  x0[2] = Interval(kLams);
  kitecc::Box dm = kitecc::param_derivative(sym, x0, Interval(kMs));
  const double h = 1e-6;
  std::array<double, 3> sd = {kY3s, kY4s, kLams};
  auto up = sym.eval_xm(sd, kMs + h);
  auto dn = sym.eval_xm(sd, kMs - h);
  for (int i = 0; i < 3; ++i) {
    double fd = (up[i] - dn[i]) / (2 * h);
    CHECK(std::fabs(dm[i].mid() - fd) < 1e-5 * std::fmax(1.0, std::fabs(fd)));
  }
}
