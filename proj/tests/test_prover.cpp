#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "kitecc/equations.hpp"
#include "kitecc/prover.hpp"

using kitecc::Box;
using kitecc::CampaignConfig;
using kitecc::CampaignResult;
using kitecc::Certificate;
using kitecc::Interval;
using kitecc::SignClaim;
using kitecc::Verdict;

namespace {

using kitecc::pow_int;

constexpr double kA0 = 1.1733802447932033;
constexpr double kB0 = 2.0369863931895206;
constexpr double kM0 = 1.0027133290370827;
constexpr double kB1 = 2.7581537749912188;
const double kRtA = 2.0 / std::sqrt(3.0);

struct CubeMinus8 {
  static constexpr int kIn = 1, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 1>& x) const {
    return {pow_int(x[0], 3) - 8.0};
  }
};

struct SquareField {
  static constexpr int kIn = 1, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 1>& x) const {
    return {pow_int(x[0], 2)};
  }
};

struct ReciprocalField {
  static constexpr int kIn = 1, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 1>& x) const {
    return {1.0 / x[0]};
  }
};

struct SumSqPlusOne {
  static constexpr int kIn = 2, kOut = 1;
  template <class S>
  std::array<S, 1> operator()(const std::array<S, 2>& z) const {
    return {pow_int(z[0], 2) + pow_int(z[1], 2) + 1.0};
  }
};

// Affine part A (z - z*) plus a small planted quadratic; |det A| >= 0.5 and
// eps <= 0.04 keep z* the only zero of the system in [0,1]^2.
struct Planted2 {
  static constexpr int kIn = 2, kOut = 2;
  double a11, a12, a21, a22, r1, r2, eps;
  template <class S>
  std::array<S, 2> operator()(const std::array<S, 2>& z) const {
    S w1 = z[0] - r1, w2 = z[1] - r2;
    return {a11 * w1 + a12 * w2 + eps * pow_int(w1, 2),
            a21 * w1 + a22 * w2 + eps * pow_int(w2, 2)};
  }
};

Box box1(double lo, double hi) {
  Box b(1);
  b[0] = Interval(lo, hi);
  return b;
}

Box box2(double alo, double ahi, double blo, double bhi) {
  Box b(2);
  b[0] = Interval(alo, ahi);
  b[1] = Interval(blo, bhi);
  return b;
}

double total_volume(const CampaignResult& r) {
  double v = 0.0;
  for (const Certificate& c : r.certificates) v += kitecc::box_volume(c.box);
  return v;
}

bool covers(const CampaignResult& r, const Box& domain) {
  double v = kitecc::box_volume(domain);
  return std::fabs(total_volume(r) - v) <= 1e-9 * v + 1e-15;
}

std::string fingerprint(const CampaignResult& r) {
  std::string s;
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%a,", v);
    s += buf;
  };
  for (const Certificate& c : r.certificates) {
    for (Eigen::Index i = 0; i < c.box.size(); ++i) {
      put(c.box[i].lo());
      put(c.box[i].hi());
    }
    s += kitecc::to_string(c.verdict);
    if (c.enclosure) {
      s += '|';
      for (Eigen::Index i = 0; i < c.enclosure->size(); ++i) {
        put((*c.enclosure)[i].lo());
        put((*c.enclosure)[i].hi());
      }
    }
    s += '\n';
  }
  return s;
}

const Certificate* find_unique_containing(const CampaignResult& r, double x,
                                          double y) {
  for (const Certificate& c : r.certificates) {
    if (c.verdict != Verdict::UniqueZero) continue;
    if ((*c.enclosure)[0].contains(x) && (*c.enclosure)[1].contains(y))
      return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("scalar root certification") {
  kitecc::QuinticSystem p;

  Certificate root = certify_scalar_root(p, Interval(2.75, 2.76));
  CHECK(root.verdict == Verdict::UniqueZero);
  REQUIRE(root.enclosure.has_value());
  CHECK((*root.enclosure)[0].contains(kB1));
  CHECK((*root.enclosure)[0].width() <= 1e-12);

  Certificate none = certify_scalar_root(p, Interval(2.0, 2.7));
  CHECK(none.verdict == Verdict::NoZero);
  CHECK(none.box[0].lo() == 2.0);
  CHECK(none.box[0].hi() == 2.7);

  // The root sits exactly at 2.0; the single-cell Krawczyk pass certifies it
  // before any subdivision face can land on it.
  Certificate cube = certify_scalar_root(CubeMinus8{}, Interval(1.0, 3.0));
  CHECK(cube.verdict == Verdict::UniqueZero);
  REQUIRE(cube.enclosure.has_value());
  CHECK((*cube.enclosure)[0].contains(2.0));

  // A double root cannot be isolated; the whole bracket comes back Unknown.
  Certificate dbl = certify_scalar_root(SquareField{}, Interval(-1.0, 1.0));
  CHECK(dbl.verdict == Verdict::Unknown);
  CHECK(dbl.box[0].lo() == -1.0);
  CHECK(dbl.box[0].hi() == 1.0);
}

TEST_CASE("exclusion campaign on zero-free fields") {
  CampaignConfig cfg;
  cfg.initial_grid = 8;
  Box dom = box2(-1.0, 1.0, -1.0, 1.0);
  kitecc::ExclusionResult r = certify_exclusion(SumSqPlusOne{}, dom, cfg);
  CHECK(r.excluded);
  CHECK(r.campaign.unknowns == 0);
  CHECK(r.campaign.no_zeros == 64);
  CHECK(r.campaign.certificates.size() == 64);
  CHECK(covers(r.campaign, dom));

  // Horizontal slice above the curve: g(., 5/2) has no zero over [1,2].
  kitecc::FieldGSliceB upper{Interval(2.5)};
  CampaignConfig cfg1;
  cfg1.initial_grid = 50;
  kitecc::ExclusionResult s = certify_exclusion(upper, box1(1.0, 2.0), cfg1);
  CHECK(s.excluded);
  CHECK(s.campaign.unknowns == 0);
}

TEST_CASE("exclusion campaign localizes a real zero") {
  // g(., 2) vanishes at a = 2/sqrt(3); every surviving leaf must hug it.
  kitecc::FieldGSliceB slice{Interval(2.0)};
  CampaignConfig cfg;
  cfg.initial_grid = 50;
  cfg.min_box_width = 1e-8;
  Box dom = box1(1.05, 1.9);
  kitecc::ExclusionResult r = certify_exclusion(slice, dom, cfg);
  CHECK(!r.excluded);
  CHECK(r.campaign.unknowns >= 1);
  CHECK(r.campaign.unknowns <= 16);
  for (const Certificate& c : r.campaign.certificates) {
    if (c.verdict != Verdict::Unknown) continue;
    CHECK(c.box[0].width() <= 1e-8);
    CHECK(std::fabs(c.box[0].mid() - kRtA) <= 1e-5);
  }
  CHECK(covers(r.campaign, dom));
}

TEST_CASE("square campaign isolates the two curve stationary points") {
  kitecc::ExtremaSystem sys;
  CampaignConfig cfg;
  cfg.initial_grid = 20;
  Box dom = box2(1.05, 1.25, 1.93, 2.16);
  CampaignResult r = certify_all_zeros(sys, dom, cfg);

  CHECK(r.unique_zeros == 2);
  CHECK(r.unknowns == 0);
  CHECK(!r.budget_exceeded);
  CHECK(covers(r, dom));

  const Certificate* at_rt = find_unique_containing(r, kRtA, 2.0);
  const Certificate* at_r0 = find_unique_containing(r, kA0, kB0);
  REQUIRE(at_rt != nullptr);
  REQUIRE(at_r0 != nullptr);
  CHECK(at_rt != at_r0);
  CHECK(kitecc::max_width(*at_rt->enclosure) <= 1e-11);
  CHECK(kitecc::max_width(*at_r0->enclosure) <= 1e-11);

  for (const Certificate& c : r.certificates) {
    if (c.verdict != Verdict::UniqueZero) continue;
    CHECK(kitecc::box_contains(c.box, *c.enclosure));
  }
  Box overlap(2);
  CHECK(!kitecc::try_intersect(*at_rt->enclosure, *at_r0->enclosure, &overlap));

  // Verdicts are grid-independent.
  CampaignConfig coarse = cfg;
  coarse.initial_grid = 13;
  CampaignResult r2 = certify_all_zeros(sys, dom, coarse);
  CHECK(r2.unique_zeros == 2);
  CHECK(r2.unknowns == 0);
  const Certificate* again = find_unique_containing(r2, kA0, kB0);
  REQUIRE(again != nullptr);
  CHECK(std::fabs((*again->enclosure)[0].mid() - (*at_r0->enclosure)[0].mid()) <=
        1e-10);
}

TEST_CASE("fold lock-in campaign on the small domain") {
  kitecc::ExtremaF1System sys;
  CampaignConfig cfg;
  cfg.initial_grid = 10;
  Box dom = box2(1.1, 1.2, 2.0, 2.1);
  CampaignResult r = certify_all_zeros(sys, dom, cfg);

  CHECK(r.unique_zeros == 1);
  CHECK(r.unknowns == 0);
  const Certificate* fold = find_unique_containing(r, kA0, kB0);
  REQUIRE(fold != nullptr);
  CHECK(kitecc::max_width(*fold->enclosure) <= 1e-10);

  std::array<Interval, 2> at{(*fold->enclosure)[0], (*fold->enclosure)[1]};
  Interval m = kitecc::eval_m((*fold->enclosure)[0], (*fold->enclosure)[1]);
  CHECK(m.contains(kM0));
  CHECK(m.width() <= 1e-9);
  (void)at;
}

TEST_CASE("planted roots are never lost") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> coef(-1.2, 1.2);
  std::uniform_real_distribution<double> pos(0.15, 0.85);
  std::uniform_real_distribution<double> small(0.0, 0.04);

  CampaignConfig cfg;
  cfg.initial_grid = 4;
  cfg.min_box_width = 1e-6;
  cfg.refine_width = 1e-10;
  Box dom = box2(0.0, 1.0, 0.0, 1.0);

  for (int trial = 0; trial < 150; ++trial) {
    Planted2 sys;
    do {
      sys.a11 = coef(rng);
      sys.a12 = coef(rng);
      sys.a21 = coef(rng);
      sys.a22 = coef(rng);
    } while (std::fabs(sys.a11 * sys.a22 - sys.a12 * sys.a21) < 0.5);
    sys.r1 = pos(rng);
    sys.r2 = pos(rng);
    sys.eps = small(rng);

    CampaignResult r = certify_all_zeros(sys, dom, cfg);
    REQUIRE(r.unique_zeros == 1);
    REQUIRE(r.unknowns == 0);
    const Certificate* c = find_unique_containing(r, sys.r1, sys.r2);
    REQUIRE(c != nullptr);
    CHECK(covers(r, dom));
  }
}

TEST_CASE("worker counts do not change the output") {
  kitecc::ExtremaSystem sys;
  CampaignConfig cfg;
  cfg.initial_grid = 20;
  Box dom = box2(1.05, 1.25, 1.93, 2.16);

  cfg.worker_count = 1;
  CampaignResult one = certify_all_zeros(sys, dom, cfg);
  cfg.worker_count = 3;
  CampaignResult three = certify_all_zeros(sys, dom, cfg);
  cfg.worker_count = 8;
  CampaignResult eight = certify_all_zeros(sys, dom, cfg);

  std::string f1 = fingerprint(one);
  CHECK(f1 == fingerprint(three));
  CHECK(f1 == fingerprint(eight));
  CHECK(one.boxes_processed == three.boxes_processed);
  CHECK(one.boxes_processed == eight.boxes_processed);
  CHECK(one.unique_zeros == 2);
}

TEST_CASE("sign campaigns handle strict and non-strict claims") {
  kitecc::FieldX x;
  CampaignConfig cfg;
  cfg.initial_grid = 50;

  // Strict negativity needs the 1e-6 endpoint margins: x vanishes exactly at
  // a = 1 and a = 2.
  kitecc::SignResult strict =
      certify_sign(x, box1(1.0 + 1e-6, 2.0 - 1e-6), SignClaim::Negative, cfg);
  CHECK(strict.holds);
  CHECK(!strict.counterexample.has_value());

  kitecc::SignResult at_edges =
      certify_sign(x, box1(1.0, 2.0), SignClaim::Negative, cfg);
  CHECK(!at_edges.holds);
  CHECK(!at_edges.counterexample.has_value());
  CHECK(at_edges.campaign.unknowns >= 1);

  // The non-strict claim goes through on the closed interval because the
  // interval evaluation keeps the endpoint zeros exact.
  kitecc::SignResult weak =
      certify_sign(x, box1(1.0, 2.0), SignClaim::NonPositive, cfg);
  CHECK(weak.holds);

  // A false claim is reported with a definite counterexample leaf.
  kitecc::SignResult wrong =
      certify_sign(x, box1(1.2, 1.8), SignClaim::Positive, cfg);
  CHECK(!wrong.holds);
  REQUIRE(wrong.counterexample.has_value());
  Interval bad = kitecc::eval_range(x, *wrong.counterexample)[0];
  CHECK(bad.hi() <= 0.0);

  // d(x1)/db <= 0 across the diagonal, where it is exactly zero.
  kitecc::FieldDx1Db dx1;
  CampaignConfig cfg2;
  cfg2.initial_grid = 6;
  kitecc::SignResult diag = certify_sign(dx1, box2(1.4, 1.6, 1.42, 1.62),
                                         SignClaim::NonPositive, cfg2);
  CHECK(diag.holds);

  kitecc::FieldY1 y1;
  CampaignConfig cfg3;
  cfg3.initial_grid = 12;
  kitecc::SignResult pos = certify_sign(
      y1, box2(1.0, 2.0, std::sqrt(2.0), 3.8637033051562737),
      SignClaim::Positive, cfg3);
  CHECK(pos.holds);
}

TEST_CASE("budget exhaustion still covers the domain") {
  kitecc::ExtremaSystem sys;
  CampaignConfig cfg;
  cfg.initial_grid = 20;
  cfg.max_boxes = 100;
  Box dom = box2(1.05, 1.25, 1.93, 2.16);
  CampaignResult r = certify_all_zeros(sys, dom, cfg);
  CHECK(r.budget_exceeded);
  CHECK(r.unknowns >= 250);
  CHECK(covers(r, dom));
}

TEST_CASE("singular residue stays at the width floor") {
  CampaignConfig cfg;
  cfg.initial_grid = 100;
  Box dom = box1(-1.0, 1.0);
  kitecc::ExclusionResult r = certify_exclusion(ReciprocalField{}, dom, cfg);
  CHECK(!r.excluded);
  CHECK(r.campaign.unknowns >= 1);
  CHECK(r.campaign.unknowns <= 4);
  for (const Certificate& c : r.campaign.certificates) {
    if (c.verdict != Verdict::Unknown) continue;
    CHECK(c.box[0].contains(0.0));
    CHECK(c.box[0].width() <= 1e-8);
  }
  CHECK(covers(r.campaign, dom));
}
