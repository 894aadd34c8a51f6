#pragma once

// Serialization for campaign artifacts: certificate JSON, curve and branch
// CSV, bifurcation reports, run manifests. Emission is hand-rolled so the
// byte stream is deterministic; numbers are printed with std::to_chars in
// shortest round-trip form, so every bound re-parses to the same bits.
// Reading goes through the vendored nlohmann parser for structure; number
// tokens re-parse exactly because the emitted form is shortest round-trip.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"

#include "kitecc/bifurcation.hpp"
#include "kitecc/box.hpp"
#include "kitecc/continuation.hpp"
#include "kitecc/interval.hpp"
#include "kitecc/krawczyk.hpp"
#include "kitecc/prover.hpp"

namespace kitecc {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest decimal string that parses back to exactly x. Negative zero is
// widened to "-0.0" so JSON parsers that treat "-0" as the integer zero
// cannot drop the sign bit. Non-finite values have no JSON form and reject.
inline std::string format_double(double x) {
  if (!std::isfinite(x)) throw IoError("non-finite value in output");
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc()) throw IoError("double formatting failed");
  std::string s(buf, res.ptr);
  if (s == "-0") s = "-0.0";
  return s;
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw IoError("bad number: " + std::string(s));
  return x;
}

namespace jsonfmt {

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", c);
          out += esc;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

inline std::string interval(const Interval& iv) {
  return "[" + format_double(iv.lo()) + ", " + format_double(iv.hi()) + "]";
}

inline std::string box(const Box& b) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    if (i) out += ", ";
    out += interval(b[i]);
  }
  out += ']';
  return out;
}

inline std::string matrix(const IntervalMatrix& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r) out += ", ";
    out += '[';
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += interval(m(r, c));
    }
    out += ']';
  }
  out += ']';
  return out;
}

}  // namespace jsonfmt

// A certificate campaign together with the context needed to replay it.
struct CampaignDocument {
  std::string system;
  Box domain;
  CampaignConfig config;
  std::vector<Certificate> certificates;
  std::size_t unique_zeros = 0;
  std::size_t unknown = 0;
};

inline CampaignDocument make_document(std::string system, const Box& domain,
                                      const CampaignConfig& cfg,
                                      const CampaignResult& res) {
  CampaignDocument doc;
  doc.system = std::move(system);
  doc.domain = domain;
  doc.config = cfg;
  doc.certificates = res.certificates;
  doc.unique_zeros = res.unique_zeros;
  doc.unknown = res.unknowns;
  return doc;
}

inline std::string to_json(const CampaignDocument& doc) {
  std::string out = "{\n";
  out += "  \"system\": " + jsonfmt::quote(doc.system) + ",\n";
  out += "  \"domain\": " + jsonfmt::box(doc.domain) + ",\n";
  out += "  \"config\": {\n";
  out += "    \"initial_grid\": " + std::to_string(doc.config.initial_grid) +
         ",\n";
  out += "    \"min_box_width\": " + format_double(doc.config.min_box_width) +
         ",\n";
  out += "    \"refine_width\": " + format_double(doc.config.refine_width) +
         ",\n";
  out += "    \"max_depth\": " + std::to_string(doc.config.max_depth) + ",\n";
  out += "    \"max_boxes\": " + std::to_string(doc.config.max_boxes) + ",\n";
  out +=
      "    \"worker_count\": " + std::to_string(doc.config.worker_count) + "\n";
  out += "  },\n";
  out += "  \"certificates\": [";
  for (std::size_t i = 0; i < doc.certificates.size(); ++i) {
    const Certificate& c = doc.certificates[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"box\": " + jsonfmt::box(c.box) +
           ", \"verdict\": " + jsonfmt::quote(to_string(c.verdict));
    if (c.enclosure) out += ", \"enclosure\": " + jsonfmt::box(*c.enclosure);
    out += '}';
  }
  out += doc.certificates.empty() ? "],\n" : "\n  ],\n";
  out += "  \"summary\": {\"unique_zeros\": " + std::to_string(doc.unique_zeros) +
         ", \"unknown\": " + std::to_string(doc.unknown) + "}\n";
  out += "}\n";
  return out;
}

inline Verdict verdict_from_string(std::string_view s) {
  if (s == "UniqueZero") return Verdict::UniqueZero;
  if (s == "NoZero") return Verdict::NoZero;
  if (s == "Contracted") return Verdict::Contracted;
  if (s == "Unknown") return Verdict::Unknown;
  throw IoError("unknown verdict: " + std::string(s));
}

namespace detail {

inline Interval interval_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw IoError("interval must be a [lo, hi] pair");
  return Interval(j[0].get<double>(), j[1].get<double>());
}

inline Box box_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw IoError("box must be an array of intervals");
  Box b(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    b[static_cast<Eigen::Index>(i)] = interval_from_json(j[i]);
  return b;
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw IoError(std::string("missing field: ") + key);
  return *it;
}

}  // namespace detail

// Parses and validates a certificate document. Checks the summary against
// the actual certificate tallies so a stale or edited file is rejected.
inline CampaignDocument campaign_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("certificate JSON: ") + e.what());
  }
  if (!j.is_object()) throw IoError("certificate JSON: not an object");
  CampaignDocument doc;
  doc.system = detail::field(j, "system").get<std::string>();
  doc.domain = detail::box_from_json(detail::field(j, "domain"));
  const nlohmann::json& cfg = detail::field(j, "config");
  doc.config.initial_grid = detail::field(cfg, "initial_grid").get<int>();
  doc.config.min_box_width = detail::field(cfg, "min_box_width").get<double>();
  doc.config.refine_width = detail::field(cfg, "refine_width").get<double>();
  doc.config.max_depth = detail::field(cfg, "max_depth").get<int>();
  doc.config.max_boxes = detail::field(cfg, "max_boxes").get<std::uint64_t>();
  doc.config.worker_count = detail::field(cfg, "worker_count").get<int>();
  std::size_t unique = 0, unknown = 0;
  for (const nlohmann::json& cj : detail::field(j, "certificates")) {
    Certificate c;
    c.box = detail::box_from_json(detail::field(cj, "box"));
    c.verdict =
        verdict_from_string(detail::field(cj, "verdict").get<std::string>());
    if (auto it = cj.find("enclosure"); it != cj.end())
      c.enclosure = detail::box_from_json(*it);
    if (c.verdict == Verdict::UniqueZero) ++unique;
    if (c.verdict == Verdict::Unknown) ++unknown;
    doc.certificates.push_back(std::move(c));
  }
  const nlohmann::json& summary = detail::field(j, "summary");
  doc.unique_zeros = detail::field(summary, "unique_zeros").get<std::size_t>();
  doc.unknown = detail::field(summary, "unknown").get<std::size_t>();
  if (doc.unique_zeros != unique || doc.unknown != unknown)
    throw IoError("certificate summary disagrees with certificate list");
  return doc;
}

inline std::string to_json(const BifurcationReport& r) {
  std::string out = "{\n";
  out += "  \"kind\": " + jsonfmt::quote(to_string(r.kind)) + ",\n";
  out += "  \"point\": " + jsonfmt::box(r.point) + ",\n";
  out += "  \"mu\": " + jsonfmt::interval(r.mu) + ",\n";
  out += "  \"jacobian\": " + jsonfmt::matrix(r.J) + ",\n";
  out += "  \"v\": " + jsonfmt::box(r.v) + ",\n";
  out += "  \"w\": " + jsonfmt::box(r.w) + ",\n";
  out += "  \"t1\": " + jsonfmt::interval(r.t1) + ",\n";
  out += "  \"t2\": " + jsonfmt::interval(r.t2) + ",\n";
  out += "  \"t3\": " + jsonfmt::interval(r.t3) + ",\n";
  out += "  \"t4\": " + jsonfmt::interval(r.t4) + ",\n";
  out += std::string("  \"t1_structural\": ") +
         (r.t1_structural ? "true" : "false") + ",\n";
  out += std::string("  \"t3_structural\": ") +
         (r.t3_structural ? "true" : "false") + "\n";
  out += "}\n";
  return out;
}

// Curve CSV: one certified sample per row, bounds only, no midpoints.
inline std::string curve_csv(const std::vector<CurveSample>& samples) {
  std::string out = "a_lo,a_hi,b_lo,b_hi,m_lo,m_hi\n";
  for (const CurveSample& s : samples) {
    out += format_double(s.a.lo()) + ',' + format_double(s.a.hi()) + ',';
    out += format_double(s.b.lo()) + ',' + format_double(s.b.hi()) + ',';
    out += format_double(s.m.lo()) + ',' + format_double(s.m.hi()) + '\n';
  }
  return out;
}

// One solution branch at one mass, reduced to configuration midpoints for
// plotting; the rigorous enclosures live in the report and certificate files.
struct BranchRow {
  double m = 0.0;
  std::string branch;
  double q3x = 0.0, q3y = 0.0, q4x = 0.0, q4y = 0.0;
  bool symmetric = false;
};

inline BranchRow branch_row(double m, std::string branch,
                            const PlanarSolution& sol) {
  BranchRow row;
  row.m = m;
  row.branch = std::move(branch);
  row.q3x = sol.state[0].mid();
  row.q3y = sol.state[1].mid();
  row.q4x = sol.state[2].mid();
  row.q4y = sol.state[3].mid();
  row.symmetric = sol.symmetric;
  return row;
}

inline std::string branches_csv(const std::vector<BranchRow>& rows) {
  std::string out = "m,branch,q3x,q3y,q4x,q4y,symmetric\n";
  for (const BranchRow& r : rows) {
    out += format_double(r.m) + ',' + r.branch + ',';
    out += format_double(r.q3x) + ',' + format_double(r.q3y) + ',';
    out += format_double(r.q4x) + ',' + format_double(r.q4y) + ',';
    out += r.symmetric ? '1' : '0';
    out += '\n';
  }
  return out;
}

// Reference table CSV, configuration midpoints per row. The massless_base
// column marks the row solved with zero base mass, where the mass column is
// not meaningful.
inline std::string table_csv(const std::vector<TableRow>& rows) {
  std::string out = "label,m,massless_base,symmetric,q3x,q3y,q4x,q4y,lambda\n";
  for (const TableRow& r : rows) {
    out += r.label + ',' + format_double(r.mass) + ',';
    out += r.massless_base ? '1' : '0';
    out += ',';
    out += r.symmetric ? '1' : '0';
    out += ',';
    out += format_double(r.state[0].mid()) + ',' +
           format_double(r.state[1].mid()) + ',';
    out += format_double(r.state[2].mid()) + ',' +
           format_double(r.state[3].mid()) + ',';
    out += format_double(r.state[4].mid()) + '\n';
  }
  return out;
}

// Content fingerprint for the manifest. FNV-1a is enough for detecting a
// config or input drift between runs; this is bookkeeping, not security.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hash_hex(std::string_view data) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

struct RunManifest {
  std::string command;  // the argv line as invoked
  std::vector<std::pair<std::string, std::string>> config;  // key=value snapshot
  std::vector<std::pair<std::string, std::string>> inputs;  // path -> hash
  std::vector<std::string> outputs;                         // files written
  double wall_seconds = 0.0;
  std::size_t unique_zeros = 0;
  std::size_t no_zeros = 0;
  std::size_t unknown = 0;
};

inline std::string to_json(const RunManifest& m) {
  std::string out = "{\n";
  out += "  \"command\": " + jsonfmt::quote(m.command) + ",\n";
  out += "  \"config\": {";
  for (std::size_t i = 0; i < m.config.size(); ++i) {
    out += i ? ", " : "";
    out += jsonfmt::quote(m.config[i].first) + ": " +
           jsonfmt::quote(m.config[i].second);
  }
  out += "},\n";
  out += "  \"inputs\": {";
  for (std::size_t i = 0; i < m.inputs.size(); ++i) {
    out += i ? ", " : "";
    out += jsonfmt::quote(m.inputs[i].first) + ": " +
           jsonfmt::quote(m.inputs[i].second);
  }
  out += "},\n";
  out += "  \"outputs\": [";
  for (std::size_t i = 0; i < m.outputs.size(); ++i) {
    out += i ? ", " : "";
    out += jsonfmt::quote(m.outputs[i]);
  }
  out += "],\n";
  out += "  \"wall_seconds\": " + format_double(m.wall_seconds) + ",\n";
  out += "  \"summary\": {\"unique_zeros\": " + std::to_string(m.unique_zeros) +
         ", \"no_zeros\": " + std::to_string(m.no_zeros) +
         ", \"unknown\": " + std::to_string(m.unknown) + "}\n";
  out += "}\n";
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

inline void write_file(const std::filesystem::path& path,
                       std::string_view content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("short write to " + path.string());
}

// Checks the manifest invariant: every referenced output exists and parses.
// Certificate files get the full schema check, other JSON must parse, CSV
// must have a header row. Paths resolve relative to the manifest directory.
inline void validate_run_outputs(const std::filesystem::path& manifest_path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("manifest: ") + e.what());
  }
  const std::filesystem::path dir = manifest_path.parent_path();
  for (const nlohmann::json& out : detail::field(j, "outputs")) {
    std::filesystem::path p = out.get<std::string>();
    if (p.is_relative()) p = dir / p;
    if (!std::filesystem::exists(p))
      throw IoError("manifest references missing output " + p.string());
    if (p.extension() == ".json") {
      std::string text = read_file(p);
      if (p.filename().string().rfind("certificates", 0) == 0) {
        campaign_from_json(text);
      } else {
        try {
          auto parsed = nlohmann::json::parse(text);
          (void)parsed;
        } catch (const nlohmann::json::exception& e) {
          throw IoError(p.string() + ": " + e.what());
        }
      }
    } else if (p.extension() == ".csv") {
      std::string text = read_file(p);
      auto nl = text.find('\n');
      if (nl == std::string::npos || text.substr(0, nl).find(',') == std::string::npos)
        throw IoError(p.string() + ": missing CSV header");
    }
  }
}

// key=value configuration, one pair per line. Blank lines and #-comments are
// skipped; whitespace around keys and values is trimmed.
inline std::vector<std::pair<std::string, std::string>> parse_key_values(
    std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
      return s;
    };
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw IoError("config line " + std::to_string(lineno) +
                    ": expected key=value");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      throw IoError("config line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

}  // namespace kitecc
