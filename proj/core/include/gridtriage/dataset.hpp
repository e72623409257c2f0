#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gridtriage/fragility.hpp"
#include "gridtriage/network.hpp"

namespace gridtriage {

struct ObservedDamage {
  LineId line = 0;
  std::map<ClassId, int> by_class;
};

/// A fully validated scenario dataset: class table, network, and optional
/// field-observed damage records.
struct Dataset {
  std::string name;
  std::vector<std::string> notes;
  ClassTable classes;
  Network network;
  std::vector<ObservedDamage> observed_damage;  // sorted by line id

  bool has_observed() const { return !observed_damage.empty(); }

  /// Pole count per class on each feeder, summed from the line inventories.
  std::map<FeederId, std::map<ClassId, int>> feeder_class_poles() const;

  int total_poles() const;
};

/// Loads and validates a dataset document.
///
/// Schema (JSON): top-level object with
///   classes[{id, years:[lo,hi], p0, v_th, v_max}]
///   buses[{id, load_kw, load_factor, voll}]
///   lines[{id, from, to, feeder, travel_time_h, poles:{class_id:count}}]
///   observed_damage[{line, by_class:{class_id:count}}]   (optional)
/// plus optional name, notes[] and slack_bus. When slack_bus is absent it is
/// inferred as the one bus that feeds lines but is never fed. Unknown keys
/// ("comment", ...) are ignored.
///
/// Throws ParseError (unreadable or malformed JSON), SchemaError (wrong
/// shape), or the
/// concrete ValidationError subtype of the first violated domain rule, with
/// file/record context in the message.
Dataset load_dataset(const std::filesystem::path& path);
Dataset load_dataset(std::istream& in, const std::string& origin);

/// Reads just observed-damage records ({"observed_damage": [...]}) and
/// validates them against the network.
std::vector<ObservedDamage> load_observed_damage(
    const std::filesystem::path& path, const Network& net);

/// Writes a dataset back out as a canonical JSON document.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);
void write_dataset_json(const Dataset& dataset, std::ostream& out);

/// Assembles a dataset from the flat per-table CSV layout:
///   classes.csv   id,years_lo,years_hi,p0,v_th,v_max
///   buses.csv     id,load_kw,load_factor,voll
///   lines.csv     id,from,to,feeder,travel_time_h
///   poles.csv     line,class,count
///   observed.csv  line,class,damaged          (optional)
///   notes.txt     one note per line           (optional)
/// Validation and errors are identical to load_dataset.
Dataset import_csv_tables(const std::filesystem::path& dir,
                          const std::string& name = {});

}  // namespace gridtriage
