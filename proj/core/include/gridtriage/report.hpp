#pragma once

#include <filesystem>
#include <iosfwd>

#include "gridtriage/scenario.hpp"
#include "gridtriage/valuation.hpp"

namespace gridtriage {

enum class RankingFormat { csv, json };

/// Ranking table, one row per line, ordered by feeder rank then line rank.
/// CSV header: line_id,feeder_id,damaged_poles,t_rep_h,v_dyn,v_line_dyn,rank,tier
/// Numbers are serialized shortest-round-trip, so repeated runs are
/// byte-identical.
void write_ranking(const Assessment& assessment, std::ostream& out,
                   RankingFormat format);
void export_ranking(const Assessment& assessment,
                    const std::filesystem::path& path, RankingFormat format);

/// DOT digraph of the network: buses as nodes, lines as edges colored
/// red/orange/green by tier and labeled with their rank.
void write_heatmap_dot(const Assessment& assessment, const Network& net,
                       std::ostream& out);
void export_heatmap(const Assessment& assessment, const Network& net,
                    const std::filesystem::path& path);

/// Sweep table as CSV: v, then per feeder one column per class plus a feeder
/// total, then the grand total.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void export_sweep(const std::vector<SweepRow>& rows,
                  const std::filesystem::path& path);

}  // namespace gridtriage
