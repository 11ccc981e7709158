#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pbclink/analysis.hpp"
#include "pbclink/pbc.hpp"

namespace pbclink {

/// Coordinate convention of a frame file: chains with continuous
/// coordinates, or every bead folded into the box.
enum class Convention { unwrapped, wrapped };

std::string to_string(Convention c);

/// Frame text format:
///
///     pbclink-frame 1
///     edge <Lx> <Ly> <Lz>
///     convention unwrapped|wrapped
///     chains <n>
///     beads <b0> ... <b(n-1)>
///     closed <0|1> ...
///     chain <k>          (then b_k lines of "x y z", for each chain in order)
///
/// Blank lines and lines starting with '#' are ignored. Numbers are written
/// with 17 significant digits. Wrapped frames are unfolded bond by bond with
/// the minimum-image convention.
Cell read_frame(std::istream& in);
Cell read_frame(const std::filesystem::path& path);

void write_frame(const Cell& cell, std::ostream& out, Convention convention = Convention::unwrapped);
void write_frame(const Cell& cell, const std::filesystem::path& path, Convention convention = Convention::unwrapped);

/// Shortest form of a number with 17 significant digits.
std::string format_real(double v);

/// Report CSV: '#' metadata lines (frame, edge, chains, beads), then the
/// header chain_i,chain_j,lk,status,images and one row per pair. Rows that
/// failed carry "nan" as value.
void write_report(const LinkingReport& report, std::ostream& out);
LinkingReport read_report(std::istream& in);
LinkingReport read_report(const std::filesystem::path& path);

/// Summary CSV: header bin_center,frequency, one row per bin, then footer
/// lines "# count,n", "# mean,x", "# mean_abs,x", "# std,x".
void write_summary(const DistributionSummary& summary, std::ostream& out);

}  // namespace pbclink
