#pragma once

#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "pbclink/linking.hpp"

namespace pbclink {

struct HistogramBin {
  double center = 0.0;
  double frequency = 0.0;  // normalized: all bins sum to one
};

struct DistributionSummary {
  std::vector<HistogramBin> histogram;
  double mean = 0.0;
  double mean_abs = 0.0;
  double std = 0.0;  // population standard deviation
  std::size_t count = 0;
};

inline constexpr double kDefaultBinWidth = 1.0;

/// Histogram with bins centred on integer multiples of bin_width spanning the
/// data, plus mean, mean |v| and population std. The values are sorted before
/// accumulation so the result does not depend on input order. Throws
/// EmptyInput on an empty list.
DistributionSummary summarize(std::vector<double> values, double bin_width = kDefaultBinWidth);

/// Pair-matched differences D = LK_a - LK_b over pairs valid in both reports.
std::vector<double> pair_differences(const LinkingReport& a, const LinkingReport& b);

/// summarize(pair_differences(a, b)). Throws MismatchedFrames when the pair
/// keys of the two reports differ.
DistributionSummary difference_report(const LinkingReport& a, const LinkingReport& b,
                                      double bin_width = kDefaultBinWidth);

struct ClosedCell {
  Cell cell;
  /// Per chain (by position): empty, or why the chain could not be closed
  /// and was kept open.
  std::vector<std::string> closure_errors;
};

/// End-to-end closure of every open chain on its unwrapped coordinates, then
/// re-ingestion into a new cell with the same box.
ClosedCell close_all_chains(const Cell& cell);

struct OpenClosedReport {
  LinkingReport open;
  LinkingReport closed;
  DistributionSummary difference;  // LK_open - LK_closed
};

/// Pairwise LK before and after end-to-end closure of every chain, and the
/// pair-matched difference distribution. Pairs touching a chain that could
/// not be closed are marked degenerate_closure in the closed report.
OpenClosedReport open_closed_report(const Cell& cell, double bin_width = kDefaultBinWidth,
                                    Execution exec = Execution::parallel);

}  // namespace pbclink
