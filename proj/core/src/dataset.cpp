#include "gridtriage/dataset.hpp"

#include "gridtriage/damage.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gridtriage {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Re-throws domain errors with the dataset origin prepended, preserving the
/// concrete type so callers can still catch the specific violation.
template <typename F>
auto with_context(const std::string& origin, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const DuplicateId& e) {
    throw DuplicateId(origin + ": " + e.what());
  } catch (const DanglingReference& e) {
    throw DanglingReference(origin + ": " + e.what());
  } catch (const CycleDetected& e) {
    throw CycleDetected(origin + ": " + e.what());
  } catch (const DisconnectedBus& e) {
    throw DisconnectedBus(origin + ": " + e.what());
  } catch (const UnknownLine& e) {
    throw UnknownLine(origin + ": " + e.what());
  } catch (const UnknownFeeder& e) {
    throw UnknownFeeder(origin + ": " + e.what());
  } catch (const InvalidLifetimeClass& e) {
    throw InvalidLifetimeClass(origin + ": " + e.what());
  } catch (const NonMonotoneP0& e) {
    throw NonMonotoneP0(origin + ": " + e.what());
  } catch (const NonMonotoneThreshold& e) {
    throw NonMonotoneThreshold(origin + ": " + e.what());
  } catch (const OverlappingLifetimes& e) {
    throw OverlappingLifetimes(origin + ": " + e.what());
  } catch (const EmptyClassOnFeeder& e) {
    throw EmptyClassOnFeeder(origin + ": " + e.what());
  } catch (const DamageExceedsInventory& e) {
    throw DamageExceedsInventory(origin + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
}

const json& require_field(const json& obj, const char* key,
                          const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(where + ": missing required field \"" + key + "\"");
  }
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) {
    throw SchemaError(where + ": expected a number");
  }
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw SchemaError(where + ": expected an integer");
  }
  return v.get<std::int64_t>();
}

FeederId as_feeder(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) {
    return std::to_string(v.get<std::int64_t>());
  }
  throw SchemaError(where + ": feeder must be a string or integer");
}

ClassId as_class_key(const std::string& key, const std::string& where) {
  ClassId cls = 0;
  auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), cls);
  if (ec != std::errc{} || ptr != key.data() + key.size()) {
    throw SchemaError(where + ": class key \"" + key +
                      "\" is not an integer id");
  }
  return cls;
}

std::map<ClassId, int> as_class_counts(const json& obj,
                                       const std::string& where) {
  if (!obj.is_object()) {
    throw SchemaError(where + ": expected an object of class id -> count");
  }
  std::map<ClassId, int> counts;
  for (const auto& [key, value] : obj.items()) {
    const ClassId cls = as_class_key(key, where);
    counts[cls] = static_cast<int>(as_integer(value, where + "." + key));
  }
  return counts;
}

struct RawDataset {
  std::string name;
  std::vector<std::string> notes;
  std::vector<LifetimeClass> classes;
  std::vector<Bus> buses;
  std::vector<Line> lines;
  std::optional<BusId> slack;
  std::vector<ObservedDamage> observed;
};

BusId resolve_slack(const RawDataset& raw, const std::string& origin) {
  if (raw.slack) return *raw.slack;
  std::set<BusId> fed;
  for (const Line& l : raw.lines) fed.insert(l.to_bus);
  std::vector<BusId> roots;
  for (const Line& l : raw.lines) {
    if (!fed.count(l.from_bus)) roots.push_back(l.from_bus);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  if (raw.lines.empty()) {
    if (raw.buses.size() == 1) return raw.buses.front().id;
    throw ValidationError(origin +
                          ": cannot infer the slack bus of a network without "
                          "lines; set \"slack_bus\"");
  }
  if (roots.size() != 1) {
    std::string msg = origin + ": cannot infer a unique slack bus (candidates:";
    for (BusId b : roots) msg += " " + std::to_string(b);
    msg += "); set \"slack_bus\"";
    throw ValidationError(msg);
  }
  return roots.front();
}

Dataset finalize(RawDataset raw, const std::string& origin) {
  const BusId slack = resolve_slack(raw, origin);

  return with_context(origin, [&]() -> Dataset {
    ClassTable table = validate_class_table(std::move(raw.classes));

    // Lines may only reference classes the table knows.
    for (const Line& l : raw.lines) {
      for (const auto& [cls, count] : l.poles_by_class) {
        if (!table.contains(cls)) {
          throw DanglingReference("line " + std::to_string(l.id) +
                                  " references unknown class " +
                                  std::to_string(cls));
        }
      }
    }

    Network net = build_network(std::move(raw.buses), std::move(raw.lines), slack);

    std::sort(raw.observed.begin(), raw.observed.end(),
              [](const ObservedDamage& a, const ObservedDamage& b) {
                return a.line < b.line;
              });
    for (std::size_t i = 1; i < raw.observed.size(); ++i) {
      if (raw.observed[i].line == raw.observed[i - 1].line) {
        throw DuplicateId("duplicate observed-damage record for line " +
                          std::to_string(raw.observed[i].line));
      }
    }
    for (const ObservedDamage& od : raw.observed) {
      for (const auto& [cls, count] : od.by_class) {
        if (!table.contains(cls)) {
          throw DanglingReference("observed damage for line " +
                                  std::to_string(od.line) +
                                  " references unknown class " +
                                  std::to_string(cls));
        }
      }
      ingest_observed_damage(net, od.line, od.by_class);  // range checks
    }

    return Dataset{std::move(raw.name), std::move(raw.notes), std::move(table),
                   std::move(net), std::move(raw.observed)};
  });
}

std::vector<ObservedDamage> parse_observed_array(const json& arr,
                                                 const std::string& where) {
  if (!arr.is_array()) {
    throw SchemaError(where + ": expected an array");
  }
  std::vector<ObservedDamage> records;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string rec = where + "[" + std::to_string(i) + "]";
    const json& entry = arr[i];
    if (!entry.is_object()) throw SchemaError(rec + ": expected an object");
    ObservedDamage od;
    od.line = as_integer(require_field(entry, "line", rec), rec + ".line");
    od.by_class =
        as_class_counts(require_field(entry, "by_class", rec), rec + ".by_class");
    records.push_back(std::move(od));
  }
  return records;
}

RawDataset parse_document(const json& doc, const std::string& origin) {
  if (!doc.is_object()) {
    throw SchemaError(origin + ": top level must be an object");
  }
  RawDataset raw;

  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw SchemaError(origin + ": \"name\" must be a string");
    raw.name = it->get<std::string>();
  }
  if (auto it = doc.find("notes"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError(origin + ": \"notes\" must be an array");
    for (const json& n : *it) {
      if (!n.is_string()) throw SchemaError(origin + ": notes must be strings");
      raw.notes.push_back(n.get<std::string>());
    }
  }
  if (auto it = doc.find("slack_bus"); it != doc.end()) {
    raw.slack = as_integer(*it, origin + ".slack_bus");
  }

  const json& classes = require_field(doc, "classes", origin);
  if (!classes.is_array()) throw SchemaError(origin + ": \"classes\" must be an array");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::string rec = "classes[" + std::to_string(i) + "]";
    const json& c = classes[i];
    if (!c.is_object()) throw SchemaError(rec + ": expected an object");
    LifetimeClass cls;
    cls.id = static_cast<ClassId>(as_integer(require_field(c, "id", rec), rec + ".id"));
    const json& years = require_field(c, "years", rec);
    if (!years.is_array() || years.size() != 2) {
      throw SchemaError(rec + ".years: expected [low, high]");
    }
    cls.lifetime_low_y = as_number(years[0], rec + ".years[0]");
    cls.lifetime_high_y = as_number(years[1], rec + ".years[1]");
    cls.p0 = as_number(require_field(c, "p0", rec), rec + ".p0");
    cls.v_th = as_number(require_field(c, "v_th", rec), rec + ".v_th");
    cls.v_max = as_number(require_field(c, "v_max", rec), rec + ".v_max");
    raw.classes.push_back(cls);
  }

  const json& buses = require_field(doc, "buses", origin);
  if (!buses.is_array()) throw SchemaError(origin + ": \"buses\" must be an array");
  for (std::size_t i = 0; i < buses.size(); ++i) {
    const std::string rec = "buses[" + std::to_string(i) + "]";
    const json& b = buses[i];
    if (!b.is_object()) throw SchemaError(rec + ": expected an object");
    Bus bus;
    bus.id = as_integer(require_field(b, "id", rec), rec + ".id");
    bus.load_kw = as_number(require_field(b, "load_kw", rec), rec + ".load_kw");
    bus.load_factor =
        as_number(require_field(b, "load_factor", rec), rec + ".load_factor");
    bus.voll = as_number(require_field(b, "voll", rec), rec + ".voll");
    raw.buses.push_back(bus);
  }

  const json& lines = require_field(doc, "lines", origin);
  if (!lines.is_array()) throw SchemaError(origin + ": \"lines\" must be an array");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string rec = "lines[" + std::to_string(i) + "]";
    const json& l = lines[i];
    if (!l.is_object()) throw SchemaError(rec + ": expected an object");
    Line line;
    line.id = as_integer(require_field(l, "id", rec), rec + ".id");
    line.from_bus = as_integer(require_field(l, "from", rec), rec + ".from");
    line.to_bus = as_integer(require_field(l, "to", rec), rec + ".to");
    line.feeder_id = as_feeder(require_field(l, "feeder", rec), rec + ".feeder");
    if (auto it = l.find("travel_time_h"); it != l.end()) {
      line.travel_time_h = as_number(*it, rec + ".travel_time_h");
    }
    line.poles_by_class =
        as_class_counts(require_field(l, "poles", rec), rec + ".poles");
    raw.lines.push_back(std::move(line));
  }

  if (auto it = doc.find("observed_damage"); it != doc.end()) {
    raw.observed = parse_observed_array(*it, "observed_damage");
  }
  return raw;
}

json parse_json_stream(std::istream& in, const std::string& origin) {
  try {
    return json::parse(in, nullptr, true, true);  // allow // comments
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  return in;
}

// --- minimal CSV support (no quoting; values never contain commas) ---

std::vector<std::string> split_csv_row(const std::string& row) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(row);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!row.empty() && row.back() == ',') fields.push_back("");
  return fields;
}

struct CsvTable {
  std::vector<std::vector<std::string>> rows;  // header excluded
};

CsvTable read_csv(const std::filesystem::path& path,
                  const std::string& expected_header) {
  std::ifstream in = open_input(path);
  std::string row;
  if (!std::getline(in, row)) {
    throw ParseError(path.string() + ": empty file");
  }
  if (!row.empty() && row.back() == '\r') row.pop_back();
  if (row != expected_header) {
    throw SchemaError(path.string() + ": expected header \"" +
                      expected_header + "\", got \"" + row + "\"");
  }
  CsvTable table;
  const std::size_t columns = split_csv_row(expected_header).size();
  std::size_t line_no = 1;
  while (std::getline(in, row)) {
    ++line_no;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    auto fields = split_csv_row(row);
    if (fields.size() != columns) {
      throw SchemaError(path.string() + ":" + std::to_string(line_no) +
                        ": expected " + std::to_string(columns) +
                        " fields, got " + std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

double csv_number(const std::string& field, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw SchemaError(where + ": \"" + field + "\" is not a number");
  }
  return value;
}

std::int64_t csv_integer(const std::string& field, const std::string& where) {
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw SchemaError(where + ": \"" + field + "\" is not an integer");
  }
  return value;
}

}  // namespace

std::map<FeederId, std::map<ClassId, int>> Dataset::feeder_class_poles() const {
  std::map<FeederId, std::map<ClassId, int>> result;
  for (const FeederId& feeder : network.feeders()) {
    auto& per_class = result[feeder];
    for (const LifetimeClass& cls : classes.classes()) {
      per_class[cls.id] = 0;
    }
    for (LineId id : network.lines_of_feeder(feeder)) {
      for (const auto& [cls, count] : network.line(id).poles_by_class) {
        per_class[cls] += count;
      }
    }
  }
  return result;
}

int Dataset::total_poles() const {
  int total = 0;
  for (const Line& l : network.lines()) total += l.total_poles();
  return total;
}

Dataset load_dataset(std::istream& in, const std::string& origin) {
  const json doc = parse_json_stream(in, origin);
  return finalize(parse_document(doc, origin), origin);
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  Dataset ds = load_dataset(in, path.filename().string());
  if (ds.name.empty()) ds.name = path.stem().string();
  return ds;
}

std::vector<ObservedDamage> load_observed_damage(
    const std::filesystem::path& path, const Network& net) {
  std::ifstream in = open_input(path);
  const std::string origin = path.filename().string();
  const json doc = parse_json_stream(in, origin);
  if (!doc.is_object()) {
    throw SchemaError(origin + ": top level must be an object");
  }
  auto records = parse_observed_array(
      require_field(doc, "observed_damage", origin), "observed_damage");
  return with_context(origin, [&] {
    std::sort(records.begin(), records.end(),
              [](const ObservedDamage& a, const ObservedDamage& b) {
                return a.line < b.line;
              });
    for (std::size_t i = 1; i < records.size(); ++i) {
      if (records[i].line == records[i - 1].line) {
        throw DuplicateId("duplicate observed-damage record for line " +
                          std::to_string(records[i].line));
      }
    }
    for (const ObservedDamage& od : records) {
      ingest_observed_damage(net, od.line, od.by_class);
    }
    return records;
  });
}

void write_dataset_json(const Dataset& dataset, std::ostream& out) {
  ordered_json doc;
  if (!dataset.name.empty()) doc["name"] = dataset.name;
  if (!dataset.notes.empty()) doc["notes"] = dataset.notes;
  doc["slack_bus"] = dataset.network.slack_bus();

  ordered_json classes = ordered_json::array();
  for (const LifetimeClass& c : dataset.classes.classes()) {
    classes.push_back(ordered_json{{"id", c.id},
                                   {"years", {c.lifetime_low_y, c.lifetime_high_y}},
                                   {"p0", c.p0},
                                   {"v_th", c.v_th},
                                   {"v_max", c.v_max}});
  }
  doc["classes"] = std::move(classes);

  ordered_json buses = ordered_json::array();
  for (const Bus& b : dataset.network.buses()) {
    buses.push_back(ordered_json{{"id", b.id},
                                 {"load_kw", b.load_kw},
                                 {"load_factor", b.load_factor},
                                 {"voll", b.voll}});
  }
  doc["buses"] = std::move(buses);

  ordered_json lines = ordered_json::array();
  for (const Line& l : dataset.network.lines()) {
    ordered_json poles = ordered_json::object();
    for (const auto& [cls, count] : l.poles_by_class) {
      if (count > 0) poles[std::to_string(cls)] = count;
    }
    lines.push_back(ordered_json{{"id", l.id},
                                 {"from", l.from_bus},
                                 {"to", l.to_bus},
                                 {"feeder", l.feeder_id},
                                 {"travel_time_h", l.travel_time_h},
                                 {"poles", std::move(poles)}});
  }
  doc["lines"] = std::move(lines);

  if (!dataset.observed_damage.empty()) {
    ordered_json observed = ordered_json::array();
    for (const ObservedDamage& od : dataset.observed_damage) {
      ordered_json by_class = ordered_json::object();
      for (const auto& [cls, count] : od.by_class) {
        if (count > 0) by_class[std::to_string(cls)] = count;
      }
      observed.push_back(
          ordered_json{{"line", od.line}, {"by_class", std::move(by_class)}});
    }
    doc["observed_damage"] = std::move(observed);
  }

  out << doc.dump(2) << '\n';
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_dataset_json(dataset, out);
  if (!out) throw IoError("failed while writing " + path.string());
}

Dataset import_csv_tables(const std::filesystem::path& dir,
                          const std::string& name) {
  RawDataset raw;
  raw.name = name.empty() ? dir.filename().string() : name;

  const CsvTable classes =
      read_csv(dir / "classes.csv", "id,years_lo,years_hi,p0,v_th,v_max");
  for (const auto& row : classes.rows) {
    LifetimeClass cls;
    cls.id = static_cast<ClassId>(csv_integer(row[0], "classes.csv id"));
    cls.lifetime_low_y = csv_number(row[1], "classes.csv years_lo");
    cls.lifetime_high_y = csv_number(row[2], "classes.csv years_hi");
    cls.p0 = csv_number(row[3], "classes.csv p0");
    cls.v_th = csv_number(row[4], "classes.csv v_th");
    cls.v_max = csv_number(row[5], "classes.csv v_max");
    raw.classes.push_back(cls);
  }

  const CsvTable buses = read_csv(dir / "buses.csv", "id,load_kw,load_factor,voll");
  for (const auto& row : buses.rows) {
    Bus bus;
    bus.id = csv_integer(row[0], "buses.csv id");
    bus.load_kw = csv_number(row[1], "buses.csv load_kw");
    bus.load_factor = csv_number(row[2], "buses.csv load_factor");
    bus.voll = csv_number(row[3], "buses.csv voll");
    raw.buses.push_back(bus);
  }

  const CsvTable lines = read_csv(dir / "lines.csv", "id,from,to,feeder,travel_time_h");
  std::map<LineId, std::size_t> line_pos;
  for (const auto& row : lines.rows) {
    Line line;
    line.id = csv_integer(row[0], "lines.csv id");
    line.from_bus = csv_integer(row[1], "lines.csv from");
    line.to_bus = csv_integer(row[2], "lines.csv to");
    line.feeder_id = row[3];
    line.travel_time_h = csv_number(row[4], "lines.csv travel_time_h");
    line_pos[line.id] = raw.lines.size();
    raw.lines.push_back(std::move(line));
  }

  const CsvTable poles = read_csv(dir / "poles.csv", "line,class,count");
  for (const auto& row : poles.rows) {
    const LineId line = csv_integer(row[0], "poles.csv line");
    auto it = line_pos.find(line);
    if (it == line_pos.end()) {
      throw DanglingReference("poles.csv references unknown line " +
                              std::to_string(line));
    }
    const ClassId cls = static_cast<ClassId>(csv_integer(row[1], "poles.csv class"));
    raw.lines[it->second].poles_by_class[cls] +=
        static_cast<int>(csv_integer(row[2], "poles.csv count"));
  }

  if (std::filesystem::exists(dir / "observed.csv")) {
    const CsvTable observed = read_csv(dir / "observed.csv", "line,class,damaged");
    std::map<LineId, ObservedDamage> by_line;
    for (const auto& row : observed.rows) {
      const LineId line = csv_integer(row[0], "observed.csv line");
      const ClassId cls =
          static_cast<ClassId>(csv_integer(row[1], "observed.csv class"));
      ObservedDamage& od = by_line[line];
      od.line = line;
      od.by_class[cls] +=
          static_cast<int>(csv_integer(row[2], "observed.csv damaged"));
    }
    for (auto& [line, od] : by_line) raw.observed.push_back(std::move(od));
  }

  if (std::filesystem::exists(dir / "notes.txt")) {
    std::ifstream notes = open_input(dir / "notes.txt");
    std::string note;
    while (std::getline(notes, note)) {
      if (!note.empty() && note.back() == '\r') note.pop_back();
      if (!note.empty()) raw.notes.push_back(note);
    }
  }

  return finalize(std::move(raw), dir.string());
}

}  // namespace gridtriage
