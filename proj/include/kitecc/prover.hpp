#pragma once

// Branch-and-prune campaigns over a domain box. A campaign tiles the domain
// with a uniform grid and resolves each cell by depth-first subdivision:
// exclusion by plain range evaluation, a Krawczyk test when the system is
// square, bisection of whatever stays undecided. Every leaf receives a
// certificate, so the certificate list partitions the domain and the leaf
// volumes sum back to the domain volume.
//
// Certificates are emitted in a canonical order (box bounds, lexicographic)
// and each grid cell is resolved by exactly one worker, which makes the
// output independent of the worker count.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "kitecc/box.hpp"
#include "kitecc/krawczyk.hpp"

namespace kitecc {

struct CampaignConfig {
  int initial_grid = 100;       // grid cells per dimension of the initial cover
  double min_box_width = 1e-8;  // undecided boxes are split down to this width
  double refine_width = 1e-12;  // target width of refined zero enclosures
  int max_depth = 80;           // bisection depth cap below a grid cell
  std::uint64_t max_boxes = 50'000'000;  // processed-box budget
  int worker_count = 1;
};

struct Certificate {
  Box box;
  Verdict verdict = Verdict::Unknown;
  std::optional<Box> enclosure;  // refined enclosure for UniqueZero leaves
};

struct CampaignResult {
  std::vector<Certificate> certificates;
  std::size_t unique_zeros = 0;
  std::size_t no_zeros = 0;
  std::size_t unknowns = 0;
  std::uint64_t boxes_processed = 0;
  bool budget_exceeded = false;
};

namespace detail {

// Cell edges are computed by one shared formula so that adjacent cells get
// bitwise-identical boundaries and the grid tiles the domain exactly.
inline double grid_edge(double lo, double hi, int i, int n) {
  if (i <= 0) return lo;
  if (i >= n) return hi;
  return lo + (hi - lo) * (static_cast<double>(i) / n);
}

inline std::vector<Box> grid_cells(const Box& domain, int grid) {
  const int n = static_cast<int>(domain.size());
  int g = std::max(grid, 1);
  while (g > 1 && std::pow(static_cast<double>(g), n) > 1.0e6) g /= 2;

  std::vector<Box> cells;
  std::vector<int> idx(n, 0);
  for (;;) {
    Box cell(n);
    for (int d = 0; d < n; ++d) {
      double lo = grid_edge(domain[d].lo(), domain[d].hi(), idx[d], g);
      double hi = grid_edge(domain[d].lo(), domain[d].hi(), idx[d] + 1, g);
      cell[d] = Interval::unchecked(lo, hi);
    }
    cells.push_back(std::move(cell));
    int d = n - 1;
    while (d >= 0 && ++idx[d] == g) idx[d--] = 0;
    if (d < 0) break;
  }
  return cells;
}

inline bool cert_less(const Certificate& a, const Certificate& b) {
  for (Eigen::Index i = 0; i < a.box.size(); ++i) {
    if (a.box[i].lo() != b.box[i].lo()) return a.box[i].lo() < b.box[i].lo();
    if (a.box[i].hi() != b.box[i].hi()) return a.box[i].hi() < b.box[i].hi();
  }
  return false;
}

// Grid cells are distributed over workers through an atomic cursor; each
// cell's subtree is resolved sequentially by its owner. resolve returns a
// terminal certificate or nullopt to request a split.
template <class Resolve>
CampaignResult run_campaign(const Box& domain, const CampaignConfig& cfg,
                            const Resolve& resolve) {
  std::vector<Box> cells = grid_cells(domain, cfg.initial_grid);
  const std::size_t ncells = cells.size();
  std::vector<std::vector<Certificate>> per_cell(ncells);

  std::atomic<std::uint64_t> processed{0};
  std::atomic<bool> over_budget{false};
  std::atomic<std::size_t> cursor{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto work = [&]() {
    try {
      for (;;) {
        std::size_t ci = cursor.fetch_add(1);
        if (ci >= ncells) return;
        std::vector<Certificate>& sink = per_cell[ci];
        std::vector<std::pair<Box, int>> stack;
        stack.emplace_back(cells[ci], 0);
        while (!stack.empty()) {
          auto [box, depth] = std::move(stack.back());
          stack.pop_back();
          if (processed.fetch_add(1) >= cfg.max_boxes) {
            over_budget.store(true);
            sink.push_back({std::move(box), Verdict::Unknown, std::nullopt});
            continue;
          }
          if (std::optional<Certificate> cert = resolve(box)) {
            sink.push_back(std::move(*cert));
            continue;
          }
          if (max_width(box) <= cfg.min_box_width || depth >= cfg.max_depth) {
            sink.push_back({std::move(box), Verdict::Unknown, std::nullopt});
            continue;
          }
          auto [left, right] = bisect(box);
          stack.emplace_back(std::move(right), depth + 1);
          stack.emplace_back(std::move(left), depth + 1);
        }
      }
    } catch (...) {
      std::scoped_lock lock(err_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const int workers = std::max(1, cfg.worker_count);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  CampaignResult out;
  for (std::vector<Certificate>& chunk : per_cell)
    for (Certificate& c : chunk) out.certificates.push_back(std::move(c));
  std::sort(out.certificates.begin(), out.certificates.end(), cert_less);
  for (const Certificate& c : out.certificates) {
    if (c.verdict == Verdict::UniqueZero) ++out.unique_zeros;
    else if (c.verdict == Verdict::NoZero) ++out.no_zeros;
    else ++out.unknowns;
  }
  out.boxes_processed = processed.load();
  out.budget_exceeded = over_budget.load();
  return out;
}

}  // namespace detail

// Certifies every zero of a square system in the domain. UniqueZero leaves
// carry refined enclosures; Unknown leaves are at most min_box_width wide
// (boundary zeros and singular residue end up there).
template <class System>
CampaignResult certify_all_zeros(const System& sys, const Box& domain,
                                 const CampaignConfig& cfg = {}) {
  static_assert(System::kIn == System::kOut,
                "certify_all_zeros needs a square system");
  auto resolve = [&sys, &cfg](const Box& box) -> std::optional<Certificate> {
    bool domain_ok = true;
    try {
      Box fx = eval_range(sys, box);
      for (Eigen::Index i = 0; i < fx.size(); ++i)
        if (!fx[i].contains(0.0))
          return Certificate{box, Verdict::NoZero, std::nullopt};
    } catch (const DomainError&) {
      domain_ok = false;
    }
    if (domain_ok) {
      // The Jacobian can leave the function's domain (a sqrt derivative at a
      // branch point, say) even where values are fine; such boxes bisect.
      try {
        KrawczykResult kr = krawczyk_step(sys, box);
        if (kr.verdict == Verdict::NoZero)
          return Certificate{box, Verdict::NoZero, std::nullopt};
        if (kr.verdict == Verdict::UniqueZero) {
          Box start(box.size());
          if (!try_intersect(box, kr.k_box, &start)) start = box;
          Box enc = refine_enclosure(sys, start, cfg.refine_width);
          return Certificate{box, Verdict::UniqueZero, std::move(enc)};
        }
      } catch (const DomainError&) {
      }
    }
    return std::nullopt;
  };
  return detail::run_campaign(domain, cfg, resolve);
}

struct ExclusionResult {
  bool excluded = false;  // true iff every leaf rules out a zero
  CampaignResult campaign;
};

// Proves a scalar field has no zero in the domain. Runs on range evaluation
// alone, so it works for any input dimension and needs no derivatives.
template <class Field>
ExclusionResult certify_exclusion(const Field& f, const Box& domain,
                                  const CampaignConfig& cfg = {}) {
  static_assert(Field::kOut == 1, "certify_exclusion needs a scalar field");
  auto resolve = [&f](const Box& box) -> std::optional<Certificate> {
    try {
      Box fx = eval_range(f, box);
      if (!fx[0].contains(0.0))
        return Certificate{box, Verdict::NoZero, std::nullopt};
    } catch (const DomainError&) {
    }
    return std::nullopt;
  };
  ExclusionResult r;
  r.campaign = detail::run_campaign(domain, cfg, resolve);
  r.excluded = r.campaign.unknowns == 0 && !r.campaign.budget_exceeded;
  return r;
}

enum class SignClaim { Positive, Negative, NonNegative, NonPositive };

inline const char* to_string(SignClaim c) {
  switch (c) {
    case SignClaim::Positive: return "Positive";
    case SignClaim::Negative: return "Negative";
    case SignClaim::NonNegative: return "NonNegative";
    case SignClaim::NonPositive: return "NonPositive";
  }
  return "Positive";
}

struct SignResult {
  bool holds = false;
  std::optional<Box> counterexample;  // leaf on which the claim provably fails
  CampaignResult campaign;
};

namespace detail {

// +1: the claim holds on the whole box. -1: it provably fails everywhere on
// the box. 0: undecided. Only sufficient conditions are used on either side.
template <class Field>
int sign_status(const Field& f, SignClaim claim, const Box& box) {
  try {
    Interval r = eval_range(f, box)[0];
    switch (claim) {
      case SignClaim::Positive:
        if (r.lo() > 0.0) return 1;
        if (r.hi() <= 0.0) return -1;
        break;
      case SignClaim::Negative:
        if (r.hi() < 0.0) return 1;
        if (r.lo() >= 0.0) return -1;
        break;
      case SignClaim::NonNegative:
        if (r.lo() >= 0.0) return 1;
        if (r.hi() < 0.0) return -1;
        break;
      case SignClaim::NonPositive:
        if (r.hi() <= 0.0) return 1;
        if (r.lo() > 0.0) return -1;
        break;
    }
  } catch (const DomainError&) {
  }
  return 0;
}

}  // namespace detail

// Certifies a sign claim for a scalar field over the domain. On claim-holding
// leaves the verdict reads NoZero: no point of the box violates the claim.
// Leaves where the claim provably fails stay Unknown and the first one in
// canonical order is reported as the counterexample.
template <class Field>
SignResult certify_sign(const Field& f, const Box& domain, SignClaim claim,
                        const CampaignConfig& cfg = {}) {
  static_assert(Field::kOut == 1, "certify_sign needs a scalar field");
  auto resolve = [&f, claim](const Box& box) -> std::optional<Certificate> {
    int s = detail::sign_status(f, claim, box);
    if (s > 0) return Certificate{box, Verdict::NoZero, std::nullopt};
    if (s < 0) return Certificate{box, Verdict::Unknown, std::nullopt};
    return std::nullopt;
  };
  SignResult r;
  r.campaign = detail::run_campaign(domain, cfg, resolve);
  r.holds = r.campaign.unknowns == 0 && !r.campaign.budget_exceeded;
  if (!r.holds) {
    for (const Certificate& c : r.campaign.certificates) {
      if (c.verdict != Verdict::Unknown) continue;
      if (detail::sign_status(f, claim, c.box) < 0) {
        r.counterexample = c.box;
        break;
      }
    }
  }
  return r;
}

// Certifies a single root inside a one-dimensional bracket. Returns the
// UniqueZero leaf when the campaign isolates exactly one root, a NoZero
// certificate for the whole bracket when every leaf excludes a root, and an
// Unknown certificate for the whole bracket otherwise. The bracket is kept
// as a single cell: a Krawczyk pass on the full bracket certifies roots that
// a grid edge might otherwise land on.
template <class System>
Certificate certify_scalar_root(const System& f, const Interval& bracket,
                                const CampaignConfig& cfg = {}) {
  static_assert(System::kIn == 1 && System::kOut == 1,
                "certify_scalar_root needs a scalar system");
  Box domain(1);
  domain[0] = bracket;
  CampaignConfig one = cfg;
  one.initial_grid = 1;
  CampaignResult r = certify_all_zeros(f, domain, one);
  Certificate out{domain, Verdict::Unknown, std::nullopt};
  if (r.unknowns == 0 && r.unique_zeros == 1) {
    for (Certificate& c : r.certificates)
      if (c.verdict == Verdict::UniqueZero) return c;
  } else if (r.unknowns == 0 && r.unique_zeros == 0) {
    out.verdict = Verdict::NoZero;
  }
  return out;
}

}  // namespace kitecc
