#include "pbclink/frame_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "pbclink/errors.hpp"

namespace pbclink {

namespace {

constexpr std::string_view kMagic = "pbclink-frame";
constexpr int kVersion = 1;

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line that is neither blank nor a comment, split on whitespace.
  std::vector<std::string> next(std::string_view expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return tokens;
    }
    throw ParseError("unexpected end of file, expected " + std::string(expecting), line_no_ + 1);
  }

  bool at_end() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      std::string t;
      if (ss >> t && t.front() != '#') return false;
    }
    return true;
  }

  int line() const { return line_no_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no_); }

  double real(const std::string& s) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("not a number: '" + s + "'");
    if (!std::isfinite(v)) fail("non-finite number: '" + s + "'");
    return v;
  }

  long long integer(const std::string& s) const {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("not an integer: '" + s + "'");
    return v;
  }

  std::vector<std::string> keyed(std::string_view key, std::size_t values) {
    auto t = next(key);
    if (t.front() != key) fail("expected '" + std::string(key) + "', found '" + t.front() + "'");
    if (t.size() != values + 1)
      fail("'" + std::string(key) + "' needs " + std::to_string(values) + " values, found " +
           std::to_string(t.size() - 1));
    t.erase(t.begin());
    return t;
  }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

// Image step that takes a wrapped bond to its minimum image.
Eigen::Vector3d image_step(const Vec3& from, const Vec3& to, const Vec3& edge) {
  Eigen::Vector3d n;
  for (int a = 0; a < 3; ++a) n[a] = -std::round((to[a] - from[a]) / edge[a]);
  return n;
}

// Unfold a wrapped chain by integer image counts; bonds must be shorter than
// half the box.
Polyline unwrap_chain(const std::vector<Vec3>& wrapped, bool closed, const Vec3& edge, std::size_t chain, int line) {
  const double limit = 0.5 * edge.minCoeff();
  auto check = [&](const Vec3& d, std::size_t k) {
    if (d.norm() >= limit)
      throw ConventionError("chain " + std::to_string(chain) + " bond " + std::to_string(k) +
                            " is not shorter than half the box; wrapped coordinates are ambiguous (line " +
                            std::to_string(line) + ")");
  };
  std::vector<Vec3> out{wrapped.front()};
  Eigen::Vector3d n = Eigen::Vector3d::Zero();
  for (std::size_t k = 1; k < wrapped.size(); ++k) {
    n += image_step(wrapped[k - 1], wrapped[k], edge);
    out.push_back(wrapped[k] + n.cwiseProduct(edge));
    check(out[k] - out[k - 1], k);
  }
  if (closed) {
    const Eigen::Vector3d step = image_step(wrapped.back(), wrapped.front(), edge);
    check(wrapped.front() + step.cwiseProduct(edge) - wrapped.back(), wrapped.size());
    if (!(n + step).isZero())
      throw ConventionError("closed chain " + std::to_string(chain) + " winds around the periodic box");
  }
  try {
    return Polyline(std::move(out), closed);
  } catch (const GeometryError& e) {
    throw ParseError("chain " + std::to_string(chain) + ": " + e.what(), line);
  }
}

std::filesystem::path ensure_parent(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  return path;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(ensure_parent(path), std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void check_written(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string to_string(Convention c) { return c == Convention::wrapped ? "wrapped" : "unwrapped"; }

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

Cell read_frame(std::istream& in) {
  LineReader r(in);
  auto magic = r.next("header");
  if (magic.size() != 2 || magic[0] != kMagic) r.fail("not a pbclink frame (expected '" + std::string(kMagic) + " 1')");
  if (r.integer(magic[1]) != kVersion) r.fail("unsupported frame version " + magic[1]);

  const auto e = r.keyed("edge", 3);
  const Vec3 edge(r.real(e[0]), r.real(e[1]), r.real(e[2]));
  if ((edge.array() <= 0.0).any()) r.fail("box edges must be positive");

  const auto c = r.keyed("convention", 1);
  Convention convention;
  if (c[0] == "unwrapped")
    convention = Convention::unwrapped;
  else if (c[0] == "wrapped")
    convention = Convention::wrapped;
  else
    r.fail("unknown convention '" + c[0] + "'");

  const long long n = r.integer(r.keyed("chains", 1)[0]);
  if (n < 0) r.fail("negative chain count");
  const auto count = static_cast<std::size_t>(n);
  std::vector<std::size_t> beads;
  for (const auto& t : r.keyed("beads", count)) {
    const long long b = r.integer(t);
    if (b < 2) r.fail("a chain needs at least two beads");
    beads.push_back(static_cast<std::size_t>(b));
  }
  std::vector<bool> closed;
  for (const auto& t : r.keyed("closed", count)) {
    if (t != "0" && t != "1") r.fail("closed flags must be 0 or 1");
    closed.push_back(t == "1");
  }

  std::vector<Polyline> chains;
  for (std::size_t k = 0; k < count; ++k) {
    const auto id = r.keyed("chain", 1);
    if (r.integer(id[0]) != static_cast<long long>(k)) r.fail("expected chain " + std::to_string(k));
    const int header_line = r.line();
    std::vector<Vec3> v;
    for (std::size_t b = 0; b < beads[k]; ++b) {
      const auto t = r.next("coordinates of chain " + std::to_string(k));
      if (t.size() != 3) r.fail("expected three coordinates, found " + std::to_string(t.size()) + " values");
      v.emplace_back(r.real(t[0]), r.real(t[1]), r.real(t[2]));
    }
    if (convention == Convention::wrapped) {
      chains.push_back(unwrap_chain(v, closed[k], edge, k, header_line));
    } else {
      try {
        chains.emplace_back(std::move(v), closed[k]);
      } catch (const GeometryError& err) {
        throw ParseError("chain " + std::to_string(k) + ": " + err.what(), header_line);
      }
    }
  }
  if (!r.at_end()) r.fail("unexpected content after the last chain");
  return build_cell(chains, edge);
}

Cell read_frame(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_frame(in);
}

void write_frame(const Cell& cell, std::ostream& out, Convention convention) {
  std::vector<Polyline> chains;
  for (const auto& chain : cell.chains)
    chains.push_back(chain.source ? *chain.source : unfold(cell, chain.id).polyline);

  out << kMagic << ' ' << kVersion << '\n';
  out << "edge " << format_real(cell.edge.x()) << ' ' << format_real(cell.edge.y()) << ' '
      << format_real(cell.edge.z()) << '\n';
  out << "convention " << to_string(convention) << '\n';
  out << "chains " << chains.size() << '\n';
  out << "beads";
  for (const auto& p : chains) out << ' ' << p.vertex_count();
  out << "\nclosed";
  for (const auto& p : chains) out << ' ' << (p.closed() ? 1 : 0);
  out << '\n';
  for (std::size_t k = 0; k < chains.size(); ++k) {
    out << "chain " << k << '\n';
    for (const Vec3& v : chains[k].vertices()) {
      Vec3 w = v;
      if (convention == Convention::wrapped) {
        for (int a = 0; a < 3; ++a) {
          w[a] -= cell.edge[a] * std::floor(w[a] / cell.edge[a]);
          if (w[a] >= cell.edge[a]) w[a] = 0.0;
        }
      }
      out << format_real(w.x()) << ' ' << format_real(w.y()) << ' ' << format_real(w.z()) << '\n';
    }
  }
}

void write_frame(const Cell& cell, const std::filesystem::path& path, Convention convention) {
  auto out = open_out(path);
  write_frame(cell, out, convention);
  check_written(out, path);
}

void write_report(const LinkingReport& report, std::ostream& out) {
  out << "# frame," << report.frame_id << '\n';
  out << "# edge," << format_real(report.edge.x()) << ',' << format_real(report.edge.y()) << ','
      << format_real(report.edge.z()) << '\n';
  out << "# chains," << report.chain_count << '\n';
  out << "# beads";
  for (auto b : report.bead_counts) out << ',' << b;
  out << '\n';
  out << "chain_i,chain_j,lk,status,images\n";
  for (const auto& row : report.rows) {
    const double v = row.status == PairStatus::ok ? row.value : std::nan("");
    out << row.chain_i << ',' << row.chain_j << ',' << format_real(v) << ',' << to_string(row.status) << ','
        << row.image_count << '\n';
  }
}

LinkingReport read_report(std::istream& in) {
  LinkingReport report;
  std::string line;
  int line_no = 0;
  bool header = false;
  auto split = [](const std::string& s) {
    std::vector<std::string> f;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ',');) f.push_back(t);
    return f;
  };
  auto number = [&](const std::string& s) -> double {
    if (s == "nan") return std::nan("");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("not a number: '" + s + "'", line_no);
    return v;
  };
  auto integer = [&](const std::string& s) -> long long {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("not an integer: '" + s + "'", line_no);
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      auto f = split(line.substr(2));
      if (f.empty()) continue;
      if (f[0] == "frame" && f.size() >= 2) {
        report.frame_id = line.substr(2 + 6);
      } else if (f[0] == "edge" && f.size() == 4) {
        report.edge = Vec3(number(f[1]), number(f[2]), number(f[3]));
      } else if (f[0] == "chains" && f.size() == 2) {
        report.chain_count = static_cast<std::size_t>(integer(f[1]));
      } else if (f[0] == "beads") {
        for (std::size_t k = 1; k < f.size(); ++k) report.bead_counts.push_back(static_cast<std::size_t>(integer(f[k])));
      }
      continue;
    }
    if (!header) {
      if (line != "chain_i,chain_j,lk,status,images")
        throw ParseError("expected report header 'chain_i,chain_j,lk,status,images'", line_no);
      header = true;
      continue;
    }
    auto f = split(line);
    if (f.size() != 5) throw ParseError("expected 5 fields, found " + std::to_string(f.size()), line_no);
    PairRow row;
    row.chain_i = static_cast<ChainId>(integer(f[0]));
    row.chain_j = static_cast<ChainId>(integer(f[1]));
    row.value = number(f[2]);
    try {
      row.status = pair_status_from_string(f[3]);
    } catch (const Error&) {
      throw ParseError("unknown status '" + f[3] + "'", line_no);
    }
    row.image_count = static_cast<std::size_t>(integer(f[4]));
    if (row.status == PairStatus::ok && !std::isfinite(row.value))
      throw ParseError("row marked ok has no value", line_no);
    report.rows.push_back(row);
  }
  if (!header) throw ParseError("missing report header", line_no + 1);
  return report;
}

LinkingReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_report(in);
}

void write_summary(const DistributionSummary& summary, std::ostream& out) {
  out << "bin_center,frequency\n";
  for (const auto& bin : summary.histogram) out << format_real(bin.center) << ',' << format_real(bin.frequency) << '\n';
  out << "# count," << summary.count << '\n';
  out << "# mean," << format_real(summary.mean) << '\n';
  out << "# mean_abs," << format_real(summary.mean_abs) << '\n';
  out << "# std," << format_real(summary.std) << '\n';
}

}  // namespace pbclink
