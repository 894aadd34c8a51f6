// Command-line front end. Each subcommand runs a certification campaign and
// writes its artifacts into the output directory: certificates.json in the
// campaign schema, CSV tables for the curve and the solution branches, a
// command report, and a run manifest listing every file written. All floating
// output is shortest round-trip decimal and enclosures are printed as
// [lo, hi] pairs; apart from manifest.json (which records wall time) reruns
// with the same configuration produce byte-identical files.
//
// Exit codes: 0 the mandated verdict holds, 2 it fails, 3 a box budget was
// exhausted, 4 bad input (with an error JSON on stderr).

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

#include "kitecc/bifurcation.hpp"
#include "kitecc/continuation.hpp"
#include "kitecc/equations.hpp"
#include "kitecc/io.hpp"
#include "kitecc/prover.hpp"

namespace {

using kitecc::Box;
using kitecc::CampaignConfig;
using kitecc::CampaignResult;
using kitecc::Certificate;
using kitecc::Interval;
using kitecc::SignClaim;
using kitecc::Verdict;

constexpr int kOk = 0;
constexpr int kVerdictFailed = 2;
constexpr int kBudgetExceeded = 3;
constexpr int kBadInput = 4;

// Upper end of the b range under study, sqrt(2)(sqrt(3)+1) rounded to double.
constexpr double kBTop = 3.8637033051562737;

std::string error_json(std::string_view kind, std::string_view detail) {
  return "{\"error\": " + kitecc::jsonfmt::quote(kind) +
         ", \"detail\": " + kitecc::jsonfmt::quote(detail) + "}\n";
}

Box box2(double alo, double ahi, double blo, double bhi) {
  Box b(2);
  b[0] = Interval(alo, ahi);
  b[1] = Interval(blo, bhi);
  return b;
}

bool box_in(const Box& inner, const Box& outer) {
  if (inner.size() != outer.size()) return false;
  for (Eigen::Index i = 0; i < inner.size(); ++i)
    if (!outer[i].contains(inner[i])) return false;
  return true;
}

// State shared by every subcommand: the effective campaign configuration and
// the manifest being assembled while artifacts are written.
struct Run {
  CampaignConfig cfg;
  std::filesystem::path out_dir = "out";
  kitecc::RunManifest manifest;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void note(const std::string& key, const std::string& value) {
    manifest.config.emplace_back(key, value);
  }

  void write(const std::string& name, std::string_view content) {
    kitecc::write_file(out_dir / name, content);
    manifest.outputs.push_back(name);
  }

  void absorb(const CampaignResult& res) {
    manifest.unique_zeros += res.unique_zeros;
    manifest.no_zeros += res.no_zeros;
    manifest.unknown += res.unknowns;
  }

  // Writes the manifest last and re-validates everything it references.
  int finish(int code) {
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    kitecc::write_file(out_dir / "manifest.json", kitecc::to_json(manifest));
    kitecc::validate_run_outputs(out_dir / "manifest.json");
    return code;
  }
};

void snapshot_config(Run* run) {
  run->note("initial_grid", std::to_string(run->cfg.initial_grid));
  run->note("min_box_width", kitecc::format_double(run->cfg.min_box_width));
  run->note("refine_width", kitecc::format_double(run->cfg.refine_width));
  run->note("max_depth", std::to_string(run->cfg.max_depth));
  run->note("max_boxes", std::to_string(run->cfg.max_boxes));
  run->note("worker_count", std::to_string(run->cfg.worker_count));
  run->note("output_dir", run->out_dir.string());
}

void apply_config_file(const std::string& path, Run* run) {
  std::string text = kitecc::read_file(path);
  run->manifest.inputs.emplace_back(path, kitecc::hash_hex(text));
  for (const auto& [key, value] : kitecc::parse_key_values(text)) {
    try {
      if (key == "initial_grid" || key == "grid") {
        run->cfg.initial_grid = std::stoi(value);
      } else if (key == "min_box_width") {
        run->cfg.min_box_width = kitecc::parse_double(value);
      } else if (key == "refine_width") {
        run->cfg.refine_width = kitecc::parse_double(value);
      } else if (key == "max_depth") {
        run->cfg.max_depth = std::stoi(value);
      } else if (key == "max_boxes") {
        run->cfg.max_boxes = std::stoull(value);
      } else if (key == "worker_count" || key == "workers") {
        run->cfg.worker_count = std::stoi(value);
      } else if (key == "output_dir") {
        run->out_dir = value;
      } else {
        throw kitecc::IoError("unknown config key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw kitecc::IoError("bad value for " + key + ": " + value);
    } catch (const std::out_of_range&) {
      throw kitecc::IoError("value out of range for " + key + ": " + value);
    }
  }
}

std::string point_json(const char* a_key, const Interval& a, const char* b_key,
                       const Interval& b) {
  return std::string("{\"") + a_key + "\": " + kitecc::jsonfmt::interval(a) +
         ", \"" + b_key + "\": " + kitecc::jsonfmt::interval(b) + "}";
}

// ---- certify-max ----------------------------------------------------------

int cmd_certify_max(Run* run, const std::string& domain_kind) {
  const bool full = domain_kind == "full";
  const Box window = box2(1.1, 1.2, 2.0, 2.1);
  const Box dom = full ? kitecc::curve_domain() : window;
  run->note("domain", domain_kind);
  snapshot_config(run);

  CampaignResult res;
  std::string system;
  if (full) {
    // Structured critical-point system: exact on the diagonal, so the whole
    // strip can be covered; the degenerate corner survives as unknown boxes.
    res = kitecc::certify_all_zeros(kitecc::ExtremaSystem{}, dom, run->cfg);
    system = "curve-mass-critical-global";
  } else {
    res = kitecc::certify_all_zeros(kitecc::ExtremaF1System{}, dom, run->cfg);
    system = "curve-mass-critical";
  }
  run->absorb(res);
  run->write("certificates.json",
             to_json(make_document(system, dom, run->cfg, res)));

  struct Point {
    Interval a, b, m;
    bool in_window;
  };
  std::vector<Point> points;
  for (const Certificate& c : res.certificates) {
    if (c.verdict != Verdict::UniqueZero || !c.enclosure) continue;
    const Box& e = *c.enclosure;
    points.push_back(
        {e[0], e[1], kitecc::eval_m(e[0], e[1]), box_in(e, window)});
  }
  std::sort(points.begin(), points.end(),
            [](const Point& x, const Point& y) { return x.a.mid() < y.a.mid(); });

  std::string rep = "{\n  \"command\": \"certify-max\",\n";
  rep += "  \"domain\": " + kitecc::jsonfmt::box(dom) + ",\n";
  rep += "  \"unique_zeros\": " + std::to_string(res.unique_zeros) + ",\n";
  rep += "  \"unknown\": " + std::to_string(res.unknowns) + ",\n";
  rep += "  \"critical_points\": [";
  for (std::size_t i = 0; i < points.size(); ++i) {
    rep += i ? ",\n    " : "\n    ";
    rep += "{\"a\": " + kitecc::jsonfmt::interval(points[i].a) +
           ", \"b\": " + kitecc::jsonfmt::interval(points[i].b) +
           ", \"m\": " + kitecc::jsonfmt::interval(points[i].m) +
           ", \"in_window\": " + (points[i].in_window ? "true" : "false") + "}";
  }
  rep += points.empty() ? "],\n" : "\n  ],\n";
  rep += "  \"window\": " + kitecc::jsonfmt::box(window) + "\n}\n";
  run->write("report.json", rep);

  std::size_t in_window = 0;
  for (const Point& p : points)
    if (p.in_window) ++in_window;

  std::cout << "unique zeros: " << res.unique_zeros << " (in window: " << in_window
            << ")\n";
  for (const Point& p : points) {
    if (!p.in_window) continue;
    std::cout << "a0 = " << kitecc::jsonfmt::interval(p.a) << "\n";
    std::cout << "b0 = " << kitecc::jsonfmt::interval(p.b) << "\n";
    std::cout << "m0 = " << kitecc::jsonfmt::interval(p.m) << "\n";
  }

  if (res.budget_exceeded) return run->finish(kBudgetExceeded);
  const bool ok = full ? res.unique_zeros == 2 && in_window == 1
                       : res.unique_zeros == 1 && in_window == 1;
  return run->finish(ok ? kOk : kVerdictFailed);
}

// ---- exclusion ------------------------------------------------------------

int cmd_exclusion(Run* run) {
  const Box dom = box2(1.0, 2.0, 2.5, kBTop);
  snapshot_config(run);

  kitecc::ExclusionResult r =
      kitecc::certify_exclusion(kitecc::FieldG{}, dom, run->cfg);
  run->absorb(r.campaign);
  run->write("certificates.json",
             to_json(make_document("shape-balance-above-curve", dom, run->cfg,
                                   r.campaign)));
  std::string rep = "{\n  \"command\": \"exclusion\",\n";
  rep += "  \"domain\": " + kitecc::jsonfmt::box(dom) + ",\n";
  rep += std::string("  \"zero_free\": ") + (r.excluded ? "true" : "false") +
         ",\n";
  rep += "  \"no_zeros\": " + std::to_string(r.campaign.no_zeros) +
         ",\n  \"unknown\": " + std::to_string(r.campaign.unknowns) + "\n}\n";
  run->write("report.json", rep);

  std::cout << "zero-free: " << (r.excluded ? "true" : "false") << " ("
            << r.campaign.no_zeros << " boxes)\n";
  if (r.campaign.budget_exceeded) return run->finish(kBudgetExceeded);
  return run->finish(r.excluded ? kOk : kVerdictFailed);
}

// ---- root-b1 --------------------------------------------------------------

int cmd_root_b1(Run* run) {
  const Interval bracket(2.75, 2.76);
  snapshot_config(run);

  Certificate c =
      kitecc::certify_scalar_root(kitecc::QuinticSystem{}, bracket, run->cfg);
  CampaignResult res;
  res.certificates.push_back(c);
  if (c.verdict == Verdict::UniqueZero) res.unique_zeros = 1;
  if (c.verdict == Verdict::Unknown) res.unknowns = 1;
  run->absorb(res);
  Box dom(1);
  dom[0] = bracket;
  run->write("certificates.json",
             to_json(make_document("quintic-b1", dom, run->cfg, res)));

  const bool ok = c.verdict == Verdict::UniqueZero && c.enclosure.has_value();
  std::string rep = "{\n  \"command\": \"root-b1\",\n";
  rep += "  \"bracket\": " + kitecc::jsonfmt::interval(bracket) + ",\n";
  rep += "  \"verdict\": " + kitecc::jsonfmt::quote(to_string(c.verdict));
  if (ok) {
    const Interval& b1 = (*c.enclosure)[0];
    rep += ",\n  \"b1\": " + kitecc::jsonfmt::interval(b1);
    std::cout << "b1 = " << kitecc::jsonfmt::interval(b1) << "\n";
    std::cout << "width = " << kitecc::format_double(b1.width()) << "\n";
  }
  rep += "\n}\n";
  run->write("report.json", rep);
  return run->finish(ok ? kOk : kVerdictFailed);
}

// ---- signs ----------------------------------------------------------------

struct SignOutcome {
  std::string name;
  SignClaim claim;
  bool holds = false;
  bool budget = false;
  std::size_t leaves = 0;
};

template <class Field>
void run_sign_claim(Run* run, std::vector<SignOutcome>* outcomes,
                    const std::string& name, const Field& f, const Box& dom,
                    SignClaim claim, int grid) {
  CampaignConfig cfg = run->cfg;
  cfg.initial_grid = grid;
  run->note("grid." + name, std::to_string(grid));
  kitecc::SignResult r = kitecc::certify_sign(f, dom, claim, cfg);
  run->absorb(r.campaign);
  run->write("certificates-" + name + ".json",
             to_json(make_document(name, dom, cfg, r.campaign)));
  outcomes->push_back({name, claim, r.holds, r.campaign.budget_exceeded,
                       r.campaign.certificates.size()});
  std::cout << name << ": " << (r.holds ? "holds" : "FAILS") << " ("
            << r.campaign.certificates.size() << " leaves)\n";
}

int cmd_signs(Run* run) {
  snapshot_config(run);
  const double rt2 = std::sqrt(2.0);
  // Top of the b range where d(y y1)/db stays positive; just below the
  // quintic root certified by root-b1.
  const double b1_guard = 2.7581537749912188 - 1e-6;

  std::vector<SignOutcome> outcomes;
  Box ia(1);
  ia[0] = Interval(1.0, 2.0);
  Box ia_inner(1);
  ia_inner[0] = Interval(1.0 + 1e-6, 2.0 - 1e-6);

  run_sign_claim(run, &outcomes, "x-negative-interior", kitecc::FieldX{},
                 ia_inner, SignClaim::Negative, 50);
  run_sign_claim(run, &outcomes, "x-nonpositive", kitecc::FieldX{}, ia,
                 SignClaim::NonPositive, 50);
  run_sign_claim(run, &outcomes, "y1-positive", kitecc::FieldY1{},
                 box2(1.0, 2.0, rt2, kBTop), SignClaim::Positive, 12);
  run_sign_claim(run, &outcomes, "dx1db-nonpositive", kitecc::FieldDx1Db{},
                 box2(1.0, 2.0, rt2, kBTop), SignClaim::NonPositive, 12);
  run_sign_claim(run, &outcomes, "dyy1db-positive", kitecc::FieldDyy1Db{},
                 box2(1.0, 2.0, rt2, b1_guard), SignClaim::Positive, 60);
  run_sign_claim(run, &outcomes, "dgdb-positive", kitecc::FieldDgDb{},
                 box2(1.0 + 1e-6, 2.0, rt2, 2.5), SignClaim::Positive, 60);
  run_sign_claim(run, &outcomes, "g-lower-slice-negative",
                 kitecc::FieldGSliceB{Interval(rt2)}, ia, SignClaim::Negative,
                 50);
  run_sign_claim(run, &outcomes, "g-upper-slice-positive",
                 kitecc::FieldGSliceB{Interval(2.5)}, ia, SignClaim::Positive,
                 50);

  bool all_hold = true, budget = false;
  std::string rep = "{\n  \"command\": \"signs\",\n  \"claims\": [";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SignOutcome& o = outcomes[i];
    all_hold = all_hold && o.holds;
    budget = budget || o.budget;
    rep += i ? ",\n    " : "\n    ";
    rep += "{\"name\": " + kitecc::jsonfmt::quote(o.name) +
           ", \"claim\": " + kitecc::jsonfmt::quote(to_string(o.claim)) +
           ", \"holds\": " + (o.holds ? "true" : "false") +
           ", \"leaves\": " + std::to_string(o.leaves) + "}";
  }
  rep += "\n  ],\n";
  rep += std::string("  \"all_hold\": ") + (all_hold ? "true" : "false") +
         "\n}\n";
  run->write("report.json", rep);

  if (budget) return run->finish(kBudgetExceeded);
  return run->finish(all_hold ? kOk : kVerdictFailed);
}

// ---- trace ----------------------------------------------------------------

int cmd_trace(Run* run, int slices) {
  run->note("slices", std::to_string(slices));
  snapshot_config(run);

  std::vector<kitecc::CurveSample> samples =
      kitecc::trace_curve(slices, run->cfg);
  run->write("curve.csv", kitecc::curve_csv(samples));

  double max_w = 0.0;
  for (const kitecc::CurveSample& s : samples) {
    max_w = std::fmax(max_w, s.b.width());
    max_w = std::fmax(max_w, s.m.width());
  }
  std::string rep = "{\n  \"command\": \"trace\",\n";
  rep += "  \"samples\": " + std::to_string(samples.size()) + ",\n";
  rep += "  \"max_enclosure_width\": " + kitecc::format_double(max_w) + "\n}\n";
  run->write("report.json", rep);

  std::cout << "samples: " << samples.size() << "\n";
  std::cout << "max enclosure width = " << kitecc::format_double(max_w) << "\n";
  return run->finish(kOk);
}

// ---- extrema --------------------------------------------------------------

int cmd_extrema(Run* run) {
  snapshot_config(run);
  kitecc::CurveExtrema ex = kitecc::find_curve_extrema(run->cfg);

  std::string rep = "{\n  \"command\": \"extrema\",\n";
  rep += "  \"b_min\": " + point_json("a", ex.b_low[0], "b", ex.b_low[1]) +
         ",\n";
  rep += "  \"b_max\": " + point_json("a", ex.b_high[0], "b", ex.b_high[1]) +
         ",\n";
  rep += "  \"mass_peak\": {\"a\": " + kitecc::jsonfmt::interval(ex.m_peak[0]) +
         ", \"b\": " + kitecc::jsonfmt::interval(ex.m_peak[1]) +
         ", \"m\": " + kitecc::jsonfmt::interval(ex.m0) + "}\n}\n";
  run->write("report.json", rep);

  std::cout << "b min at a = " << kitecc::jsonfmt::interval(ex.b_low[0])
            << ", b = " << kitecc::jsonfmt::interval(ex.b_low[1]) << "\n";
  std::cout << "b max at a = " << kitecc::jsonfmt::interval(ex.b_high[0])
            << ", b = " << kitecc::jsonfmt::interval(ex.b_high[1]) << "\n";
  std::cout << "mass peak at a = " << kitecc::jsonfmt::interval(ex.m_peak[0])
            << ", b = " << kitecc::jsonfmt::interval(ex.m_peak[1])
            << ", m = " << kitecc::jsonfmt::interval(ex.m0) << "\n";
  return run->finish(kOk);
}

// ---- solve ----------------------------------------------------------------

std::string solution_json(const std::string& branch, bool symmetric,
                          const Box& state) {
  return "{\"branch\": " + kitecc::jsonfmt::quote(branch) +
         ", \"symmetric\": " + (symmetric ? "true" : "false") +
         ", \"state\": " + kitecc::jsonfmt::box(state) + "}";
}

int cmd_solve(Run* run, double mval, bool full_planar) {
  if (!std::isfinite(mval) || mval < 0.0)
    throw kitecc::IoError("--m must be a finite non-negative mass");
  run->note("m", kitecc::format_double(mval));
  run->note("full_planar", full_planar ? "1" : "0");
  snapshot_config(run);
  const Interval m(mval);

  std::vector<std::string> sols;
  std::vector<kitecc::BranchRow> rows;
  bool at_fold = false;
  int unresolved = 0;
  std::size_t symmetric_count = 0;

  if (full_planar) {
    kitecc::PlanarSolveResult r = kitecc::solve_planar_for_m(m, run->cfg);
    at_fold = r.at_fold;
    unresolved = r.unresolved;
    std::size_t si = 0, ai = 0;
    for (const kitecc::PlanarSolution& s : r.solutions) {
      std::string branch =
          s.symmetric ? "sym" + std::to_string(++si) : "asym" + std::to_string(++ai);
      if (s.symmetric) ++symmetric_count;
      sols.push_back(solution_json(branch, s.symmetric, s.state));
      rows.push_back(kitecc::branch_row(mval, branch, s));
    }
  } else {
    kitecc::SymmetricSolveResult r = kitecc::solve_symmetric_for_m(m, run->cfg);
    at_fold = r.at_fold;
    unresolved = r.unresolved;
    symmetric_count = r.solutions.size();
    std::size_t si = 0;
    for (const kitecc::SymmetricSolution& s : r.solutions) {
      std::string branch = "sym" + std::to_string(++si);
      sols.push_back(solution_json(branch, true, s.state));
      rows.push_back(
          kitecc::branch_row(mval, branch, kitecc::PlanarSolution{s.state, true}));
    }
  }
  run->write("branches.csv", kitecc::branches_csv(rows));

  std::string rep = "{\n  \"command\": \"solve\",\n";
  rep += "  \"m\": " + kitecc::format_double(mval) + ",\n";
  rep += std::string("  \"full_planar\": ") + (full_planar ? "true" : "false") +
         ",\n";
  rep += "  \"symmetric_count\": " + std::to_string(symmetric_count) + ",\n";
  rep += std::string("  \"at_fold\": ") + (at_fold ? "true" : "false") + ",\n";
  rep += "  \"unresolved\": " + std::to_string(unresolved) + ",\n";
  rep += "  \"solutions\": [";
  for (std::size_t i = 0; i < sols.size(); ++i) {
    rep += i ? ",\n    " : "\n    ";
    rep += sols[i];
  }
  rep += sols.empty() ? "]\n}\n" : "\n  ]\n}\n";
  run->write("report.json", rep);

  std::cout << "solutions: " << sols.size() << " (symmetric " << symmetric_count
            << ")";
  if (at_fold) std::cout << " at fold";
  std::cout << "\n";
  return run->finish(unresolved == 0 ? kOk : kVerdictFailed);
}

// ---- classify -------------------------------------------------------------

int cmd_classify(Run* run, const std::string& at) {
  run->note("at", at);
  snapshot_config(run);

  kitecc::BifurcationReport rep;
  kitecc::BifurcationKind want;
  if (at == "fold") {
    kitecc::CurveExtrema ex = kitecc::find_curve_extrema(run->cfg);
    kitecc::MassBalanceSystem sys{ex.m0};
    rep = kitecc::classify(sys, ex.m_peak, ex.m0);
    want = kitecc::BifurcationKind::Fold;
  } else {
    Box pf = kitecc::locate_pitchfork(run->cfg);
    Box state(5);
    state[0] = Interval(0.0);
    state[1] = pf[0];
    state[2] = Interval(0.0);
    state[3] = pf[1];
    state[4] = pf[2];
    rep = kitecc::classify_symmetric(state, pf[3]);
    want = kitecc::BifurcationKind::PitchforkSuper;
  }
  run->write("report.json", kitecc::to_json(rep));

  std::cout << "kind = " << to_string(rep.kind) << "\n";
  std::cout << "mu = " << kitecc::jsonfmt::interval(rep.mu) << "\n";
  std::cout << "t1 = " << kitecc::jsonfmt::interval(rep.t1)
            << (rep.t1_structural ? " (structural)" : "") << "\n";
  std::cout << "t2 = " << kitecc::jsonfmt::interval(rep.t2) << "\n";
  std::cout << "t3 = " << kitecc::jsonfmt::interval(rep.t3)
            << (rep.t3_structural ? " (structural)" : "") << "\n";
  std::cout << "t4 = " << kitecc::jsonfmt::interval(rep.t4) << "\n";
  return run->finish(rep.kind == want ? kOk : kVerdictFailed);
}

// ---- table1 ---------------------------------------------------------------

int cmd_table1(Run* run) {
  snapshot_config(run);
  std::vector<kitecc::TableRow> rows = kitecc::reference_table(run->cfg);
  run->write("table1.csv", kitecc::table_csv(rows));

  std::string rep = "{\n  \"command\": \"table1\",\n  \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const kitecc::TableRow& r = rows[i];
    rep += i ? ",\n    " : "\n    ";
    rep += "{\"label\": " + kitecc::jsonfmt::quote(r.label) +
           ", \"m\": " + kitecc::format_double(r.mass) +
           ", \"massless_base\": " + (r.massless_base ? "true" : "false") +
           ", \"symmetric\": " + (r.symmetric ? "true" : "false") +
           ", \"state\": " + kitecc::jsonfmt::box(r.state) + "}";
  }
  rep += rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  run->write("report.json", rep);

  std::cout << "rows: " << rows.size() << "\n";
  return run->finish(rows.size() == 14 ? kOk : kVerdictFailed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certified enumeration and classification of concave kite central "
      "configurations"};
  app.require_subcommand(1);

  std::string config_path, out_dir, domain_kind = "d0", at;
  int workers = 0, grid = 0, slices = 100;
  double mval = 0.0;
  bool full_planar = false;

  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--out", out_dir, "output directory (default: out)");
  app.add_option("--workers", workers, "worker thread count")
      ->check(CLI::PositiveNumber);

  CLI::App* certify = app.add_subcommand(
      "certify-max", "certify the mass maximum on the solution curve");
  certify->add_option("--domain", domain_kind, "d0 (fold window) or full strip")
      ->check(CLI::IsMember({"d0", "full"}));
  certify->add_option("--grid", grid, "initial grid cells per dimension")
      ->check(CLI::PositiveNumber);

  CLI::App* exclusion = app.add_subcommand(
      "exclusion", "prove the balance function has no zero above the curve");
  CLI::App* rootb1 = app.add_subcommand(
      "root-b1", "certify the quintic root bracketed in [2.75, 2.76]");
  CLI::App* signs =
      app.add_subcommand("signs", "run the sign certifications behind the "
                                  "curve's graph property");
  CLI::App* trace =
      app.add_subcommand("trace", "trace the solution curve into curve.csv");
  trace->add_option("--slices", slices, "number of slices in a (default 100)")
      ->check(CLI::PositiveNumber);
  CLI::App* extrema = app.add_subcommand(
      "extrema", "certify the three stationary points of the curve");
  CLI::App* solve = app.add_subcommand(
      "solve", "enumerate certified solutions at a given axis mass");
  solve->add_option("--m", mval, "axis mass")->required();
  solve->add_flag("--full-planar", full_planar,
                  "include the asymmetric planar branches");
  CLI::App* classify = app.add_subcommand(
      "classify", "classify a bifurcation point with certified test values");
  classify->add_option("--at", at, "fold or pitchfork")
      ->required()
      ->check(CLI::IsMember({"fold", "pitchfork"}));
  CLI::App* table1 =
      app.add_subcommand("table1", "regenerate the reference solution table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << error_json("bad-input", e.what());
    return kBadInput;
  }

  Run run;
  for (int i = 0; i < argc; ++i) {
    if (i) run.manifest.command += ' ';
    run.manifest.command += argv[i];
  }
  try {
    if (!config_path.empty()) apply_config_file(config_path, &run);
    if (!out_dir.empty()) run.out_dir = out_dir;
    if (workers > 0) run.cfg.worker_count = workers;
    if (grid > 0) run.cfg.initial_grid = grid;
  } catch (const std::exception& e) {
    std::cerr << error_json("bad-input", e.what());
    return kBadInput;
  }

  try {
    if (*certify) return cmd_certify_max(&run, domain_kind);
    if (*exclusion) return cmd_exclusion(&run);
    if (*rootb1) return cmd_root_b1(&run);
    if (*signs) return cmd_signs(&run);
    if (*trace) return cmd_trace(&run, slices);
    if (*extrema) return cmd_extrema(&run);
    if (*solve) return cmd_solve(&run, mval, full_planar);
    if (*classify) return cmd_classify(&run, at);
    if (*table1) return cmd_table1(&run);
  } catch (const kitecc::IoError& e) {
    std::cerr << error_json("bad-input", e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << error_json("verdict-failed", e.what());
    return kVerdictFailed;
  }
  return kBadInput;
}
