#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "gridtriage/damage.hpp"
#include "gridtriage/network.hpp"

namespace gridtriage {

/// How a line's dynamic value aggregates over its downstream subtree.
///
/// `literal` sums each downstream line's own dynamic value (its static value
/// times its own repair time). Under it a parent line always outranks its
/// children. `line_trep` applies the line's own repair time to all static
/// value it cuts off, which can rank a badly damaged child above its parent.
enum class Mode { literal, line_trep };

enum class Tier { high, medium, low };

const char* to_string(Mode mode);
const char* to_string(Tier tier);
const char* to_string(Rounding rounding);

/// Annualized outage value of the bus's load: load * 8760 * load factor *
/// value of lost load.
double static_load_value(const Bus& bus);

/// Outage value of the bus's load over a repair lasting repair_time_h.
double dynamic_load_value(const Bus& bus, double repair_time_h);

/// Dynamic value of every line: its own dynamic value plus the sum over its
/// downstream set, computed in one bottom-up pass. `dynamic_values` must
/// cover every line.
std::unordered_map<LineId, double> line_dynamic_values(
    const Network& net,
    const std::unordered_map<LineId, double>& dynamic_values);

/// Single-line variant of the above.
double line_dynamic_value(const Network& net,
                          const std::unordered_map<LineId, double>& dynamic_values,
                          LineId line);

/// Sum of line dynamic values over one feeder.
double feeder_value(const Network& net,
                    const std::unordered_map<LineId, double>& line_values,
                    const FeederId& feeder);

struct LineValuation {
  LineId line_id = 0;
  FeederId feeder_id;
  int damaged_poles = 0;
  double repair_time_h = 0.0;
  double static_value = 0.0;
  double dynamic_value = 0.0;  // own outage value
  double line_value = 0.0;     // aggregated over the downstream subtree
  int rank = 0;                // 1-based within the feeder
  Tier tier = Tier::low;
};

struct FeederValuation {
  FeederId feeder_id;
  double value = 0.0;
  int rank = 0;
};

struct AssessmentMeta {
  double v_real = 0.0;
  Rounding rounding = Rounding::nearest;
  Mode mode = Mode::literal;
  double average_pole_repair_h = 4.0;
  DamageSource damage_source = DamageSource::estimated;
};

struct Assessment {
  std::vector<LineValuation> lines;      // ordered by feeder rank, then rank
  std::vector<FeederValuation> feeders;  // ordered by rank
  AssessmentMeta meta;
};

/// Per-line inputs to ranking.
struct LineValueRecord {
  double static_value = 0.0;
  double dynamic_value = 0.0;
  double line_value = 0.0;
  double repair_time_h = 0.0;
  int damaged_poles = 0;
};

/// Ranks lines within each feeder by line value (descending), breaking ties
/// by shorter repair time, then smaller line id. Tiers split each feeder's
/// ranked list into three equal-as-possible contiguous bands (high = first
/// ceil(N/3)), except that lines with zero line value always land in `low`.
/// Feeders are ranked by value, ties by id.
Assessment rank_assessment(
    const Network& net,
    const std::unordered_map<LineId, LineValueRecord>& line_records,
    const std::unordered_map<FeederId, double>& feeder_values,
    const AssessmentMeta& meta = {});

}  // namespace gridtriage
