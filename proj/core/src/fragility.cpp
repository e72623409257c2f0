#include "gridtriage/fragility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gridtriage {

namespace {

void check_class_fields(const LifetimeClass& c, std::size_t position) {
  const std::string where = "class at position " + std::to_string(position) +
                            " (id " + std::to_string(c.id) + "): ";
  if (!(c.p0 > 0.0 && c.p0 < 1.0)) {
    throw InvalidLifetimeClass(where + "p0 must be in (0, 1), got " +
                               std::to_string(c.p0));
  }
  if (!(c.v_th > 0.0)) {
    throw InvalidLifetimeClass(where + "v_th must be positive");
  }
  if (!(c.v_max > c.v_th)) {
    throw InvalidLifetimeClass(where + "v_max must exceed v_th");
  }
  if (!(c.lifetime_low_y >= 0.0) || !(c.lifetime_high_y > c.lifetime_low_y)) {
    throw InvalidLifetimeClass(where +
                               "lifetime range must satisfy 0 <= low < high");
  }
  if (!std::isfinite(c.p0) || !std::isfinite(c.v_th) || !std::isfinite(c.v_max) ||
      !std::isfinite(c.lifetime_low_y) || !std::isfinite(c.lifetime_high_y)) {
    throw InvalidLifetimeClass(where + "fields must be finite");
  }
}

}  // namespace

bool ClassTable::contains(ClassId id) const {
  return std::any_of(classes_.begin(), classes_.end(),
                     [id](const LifetimeClass& c) { return c.id == id; });
}

const LifetimeClass& ClassTable::by_id(ClassId id) const {
  for (const LifetimeClass& c : classes_) {
    if (c.id == id) return c;
  }
  throw InvalidLifetimeClass("no lifetime class with id " + std::to_string(id));
}

ClassTable validate_class_table(std::vector<LifetimeClass> classes) {
  if (classes.empty()) {
    throw InvalidLifetimeClass("class table must not be empty");
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    check_class_fields(classes[i], i + 1);
    if (classes[i].id != static_cast<ClassId>(i + 1)) {
      throw InvalidLifetimeClass(
          "class ids must be 1..k in age order; position " +
          std::to_string(i + 1) + " has id " + std::to_string(classes[i].id));
    }
  }
  for (std::size_t i = 1; i < classes.size(); ++i) {
    const LifetimeClass& prev = classes[i - 1];
    const LifetimeClass& cur = classes[i];
    if (cur.lifetime_low_y != prev.lifetime_high_y) {
      throw OverlappingLifetimes(
          "lifetime ranges must be contiguous and ascending: class " +
          std::to_string(prev.id) + " ends at " +
          std::to_string(prev.lifetime_high_y) + " but class " +
          std::to_string(cur.id) + " starts at " +
          std::to_string(cur.lifetime_low_y));
    }
    if (!(cur.p0 > prev.p0)) {
      throw NonMonotoneP0("p0 must strictly increase with age: class " +
                          std::to_string(prev.id) + " has " +
                          std::to_string(prev.p0) + ", class " +
                          std::to_string(cur.id) + " has " +
                          std::to_string(cur.p0));
    }
    if (cur.v_th > prev.v_th) {
      throw NonMonotoneThreshold(
          "v_th must not increase with age: class " + std::to_string(cur.id) +
          " has " + std::to_string(cur.v_th) + " after " +
          std::to_string(prev.v_th));
    }
    if (!(cur.v_max < prev.v_max)) {
      throw NonMonotoneThreshold(
          "v_max must strictly decrease with age: class " +
          std::to_string(cur.id) + " has " + std::to_string(cur.v_max) +
          " after " + std::to_string(prev.v_max));
    }
  }
  return ClassTable(std::move(classes));
}

double slope(const LifetimeClass& cls) {
  return (1.0 - cls.p0) / (cls.v_max - cls.v_th);
}

double failure_probability(const LifetimeClass& cls, double v_real) {
  if (v_real < cls.v_th) return cls.p0;
  if (v_real > cls.v_max) return 1.0;
  const double q = slope(cls) * (v_real - cls.v_th) + cls.p0;
  return std::clamp(q, cls.p0, 1.0);
}

}  // namespace gridtriage
