#include "pbclink/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pbclink/compensated_sum.hpp"
#include "pbclink/errors.hpp"
#include "pbclink/gauss.hpp"

namespace pbclink {

DistributionSummary summarize(std::vector<double> values, double bin_width) {
  if (!(bin_width > 0.0)) throw Error("bin width must be positive");
  if (values.empty()) throw EmptyInput("no values to summarize");
  std::sort(values.begin(), values.end());

  DistributionSummary out;
  out.count = values.size();
  const auto n = static_cast<double>(values.size());

  CompensatedSum sum;
  CompensatedSum sum_abs;
  for (double v : values) {
    sum.add(v);
    sum_abs.add(std::fabs(v));
  }
  out.mean = sum.value() / n;
  out.mean_abs = sum_abs.value() / n;
  CompensatedSum sq;
  for (double v : values) sq.add((v - out.mean) * (v - out.mean));
  out.std = std::sqrt(sq.value() / n);

  auto bin_of = [&](double v) { return static_cast<long long>(std::floor(v / bin_width + 0.5)); };
  const long long lo = bin_of(values.front());
  const long long hi = bin_of(values.back());
  std::vector<std::size_t> counts(static_cast<std::size_t>(hi - lo + 1), 0);
  for (double v : values) ++counts[static_cast<std::size_t>(bin_of(v) - lo)];
  for (std::size_t k = 0; k < counts.size(); ++k)
    out.histogram.push_back(
        {static_cast<double>(lo + static_cast<long long>(k)) * bin_width, static_cast<double>(counts[k]) / n});
  return out;
}

std::vector<double> pair_differences(const LinkingReport& a, const LinkingReport& b) {
  using Key = std::pair<ChainId, ChainId>;
  auto key = [](const PairRow& r) { return Key{std::min(r.chain_i, r.chain_j), std::max(r.chain_i, r.chain_j)}; };
  std::map<Key, const PairRow*> rows_b;
  for (const auto& r : b.rows) rows_b[key(r)] = &r;
  if (rows_b.size() != a.rows.size() || b.rows.size() != a.rows.size())
    throw MismatchedFrames("reports hold different pair sets (" + std::to_string(a.rows.size()) + " vs " +
                           std::to_string(b.rows.size()) + " rows)");
  std::map<Key, const PairRow*> rows_a;
  for (const auto& r : a.rows) rows_a[key(r)] = &r;

  std::vector<double> d;
  for (const auto& [k, ra] : rows_a) {
    const auto it = rows_b.find(k);
    if (it == rows_b.end())
      throw MismatchedFrames("pair (" + std::to_string(k.first) + ", " + std::to_string(k.second) +
                             ") missing from second report");
    if (ra->status != PairStatus::ok || it->second->status != PairStatus::ok) continue;
    d.push_back(ra->value - it->second->value);
  }
  return d;
}

DistributionSummary difference_report(const LinkingReport& a, const LinkingReport& b, double bin_width) {
  return summarize(pair_differences(a, b), bin_width);
}

ClosedCell close_all_chains(const Cell& cell) {
  ClosedCell out;
  std::vector<Polyline> raw;
  for (const auto& chain : cell.chains) {
    const Polyline p = chain.source ? *chain.source : unfold(cell, chain.id).polyline;
    std::string err;
    if (p.closed()) {
      raw.push_back(p);
    } else {
      try {
        raw.push_back(close_chain(p));
      } catch (const DegenerateClosure& e) {
        err = e.what();
        raw.push_back(p);
      }
    }
    out.closure_errors.push_back(err);
  }
  out.cell = build_cell(raw, cell.edge);
  // build_cell numbers chains by position; keep the original ids.
  for (std::size_t k = 0; k < cell.chains.size(); ++k) out.cell.chains[k].id = cell.chains[k].id;
  return out;
}

OpenClosedReport open_closed_report(const Cell& cell, double bin_width, Execution exec) {
  for (const auto& c : cell.chains)
    if (c.closed) throw Error("open/closed comparison needs open chains; chain " + std::to_string(c.id) + " is closed");
  OpenClosedReport out;
  out.open = pairwise_lk(cell, exec);
  const ClosedCell closed = close_all_chains(cell);
  out.closed = pairwise_lk(closed.cell, exec);
  for (auto& row : out.closed.rows) {
    for (std::size_t k = 0; k < cell.chains.size(); ++k) {
      const ChainId id = cell.chains[k].id;
      if (!closed.closure_errors[k].empty() && (row.chain_i == id || row.chain_j == id)) {
        row.status = PairStatus::degenerate_closure;
        row.message = closed.closure_errors[k];
      }
    }
  }
  out.difference = difference_report(out.open, out.closed, bin_width);
  return out;
}

}  // namespace pbclink
