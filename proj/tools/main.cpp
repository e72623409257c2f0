#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gridtriage/dataset.hpp"
#include "gridtriage/report.hpp"
#include "gridtriage/scenario.hpp"

namespace gt = gridtriage;

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kIoFailure = 2;

gt::Rounding parse_rounding(const std::string& name) {
  if (name == "nearest") return gt::Rounding::nearest;
  if (name == "ceil") return gt::Rounding::ceil;
  throw CLI::ValidationError("--rounding", "must be nearest or ceil");
}

gt::Mode parse_mode(const std::string& name) {
  if (name == "literal") return gt::Mode::literal;
  if (name == "line-trep") return gt::Mode::line_trep;
  throw CLI::ValidationError("--mode", "must be literal or line-trep");
}

void print_summary(const gt::Dataset& ds) {
  std::cout << "dataset:     " << (ds.name.empty() ? "(unnamed)" : ds.name) << '\n'
            << "buses:       " << ds.network.bus_count() << " (slack "
            << ds.network.slack_bus() << ")\n"
            << "lines:       " << ds.network.line_count() << '\n'
            << "classes:     " << ds.classes.size() << '\n'
            << "total poles: " << ds.total_poles() << '\n';
  for (const auto& [feeder, per_class] : ds.feeder_class_poles()) {
    std::cout << "feeder " << feeder << ":";
    int total = 0;
    for (const auto& [cls, count] : per_class) {
      std::cout << "  class " << cls << " = " << count;
      total += count;
    }
    std::cout << "  (total " << total << ")\n";
  }
  if (ds.has_observed()) {
    std::cout << "observed damage records: " << ds.observed_damage.size() << '\n';
  }
  for (const std::string& note : ds.notes) {
    std::cout << "note: " << note << '\n';
  }
}

void print_assessment(const gt::Assessment& assessment) {
  std::cout << "scenario: v_real = " << assessment.meta.v_real << " m/s, "
            << gt::to_string(assessment.meta.rounding) << " rounding, "
            << gt::to_string(assessment.meta.mode) << " mode, damage "
            << (assessment.meta.damage_source == gt::DamageSource::observed
                    ? "observed"
                    : "estimated")
            << '\n';
  std::cout << "feeder priority:\n";
  for (const auto& fv : assessment.feeders) {
    std::cout << "  " << fv.rank << ". feeder " << fv.feeder_id
              << "  w_f = " << fv.value << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Repair prioritization for storm-damaged radial distribution "
               "networks"};
  app.require_subcommand(1);

  std::string dataset_path;
  std::string damage_path;
  std::string rounding = "nearest";
  std::string mode = "literal";
  std::string out_ranking;
  std::string out_dot;
  std::string out_path;
  std::string csv_dir;
  std::string name;
  double wind = 80.0;
  double t_rep_av = 4.0;
  double v_min = 0.0;
  double v_max = 130.0;
  double step = 5.0;

  auto* validate = app.add_subcommand("validate", "load a dataset and report its shape");
  validate->add_option("dataset", dataset_path, "dataset JSON file")->required();

  auto* assess = app.add_subcommand(
      "assess", "rank lines and feeders for repair under a wind scenario");
  assess->add_option("--dataset", dataset_path, "dataset JSON file")->required();
  assess->add_option("--wind", wind, "wind speed v_real [m/s]")->required();
  assess->add_option("--rounding", rounding, "nearest|ceil (default nearest)");
  assess->add_option("--mode", mode, "literal|line-trep (default literal)");
  assess->add_option("--damage", damage_path,
                     "observed-damage JSON; switches the damage source from "
                     "fragility estimates to field records");
  assess->add_flag("--use-observed", "use the dataset's embedded "
                                     "observed-damage records");
  assess->add_option("--t-rep-av", t_rep_av, "average pole repair time [h]");
  assess->add_option("--out-ranking", out_ranking,
                     "ranking table path (.json for JSON, otherwise CSV)");
  assess->add_option("--out-dot", out_dot, "heat-map DOT graph path");

  auto* sweep = app.add_subcommand(
      "sweep", "damaged-pole counts over a range of wind speeds");
  sweep->add_option("--dataset", dataset_path, "dataset JSON file")->required();
  sweep->add_option("--v-min", v_min, "lowest wind speed")->required();
  sweep->add_option("--v-max", v_max, "highest wind speed")->required();
  sweep->add_option("--step", step, "wind speed increment")->required();
  sweep->add_option("--rounding", rounding, "nearest|ceil (default nearest)");
  sweep->add_option("--out", out_path, "sweep CSV path")->required();

  auto* import = app.add_subcommand(
      "import-csv", "assemble a dataset JSON from per-table CSV files");
  import->add_option("--dir", csv_dir, "directory with classes.csv, buses.csv, "
                                       "lines.csv, poles.csv [, observed.csv, "
                                       "notes.txt]")->required();
  import->add_option("--out", out_path, "dataset JSON path")->required();
  import->add_option("--name", name, "dataset name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kIoFailure;
  }

  if (validate->parsed()) {
    const gt::Dataset ds = gt::load_dataset(dataset_path);
    print_summary(ds);
    std::cout << "dataset is valid\n";
    return kOk;
  }

  if (assess->parsed()) {
    gt::Dataset ds = gt::load_dataset(dataset_path);
    gt::ScenarioConfig config;
    config.v_real = wind;
    config.rounding = parse_rounding(rounding);
    config.mode = parse_mode(mode);
    config.average_pole_repair_h = t_rep_av;
    if (!damage_path.empty()) {
      ds.observed_damage = gt::load_observed_damage(damage_path, ds.network);
      config.use_observed = true;
    }
    if (assess->count("--use-observed") > 0) {
      config.use_observed = true;
    }

    const gt::Assessment assessment = gt::run_assessment(ds, config);
    print_assessment(assessment);
    if (!out_ranking.empty()) {
      const auto format = std::filesystem::path(out_ranking).extension() == ".json"
                              ? gt::RankingFormat::json
                              : gt::RankingFormat::csv;
      gt::export_ranking(assessment, out_ranking, format);
      std::cout << "ranking written to " << out_ranking << '\n';
    }
    if (!out_dot.empty()) {
      gt::export_heatmap(assessment, ds.network, out_dot);
      std::cout << "heat map written to " << out_dot << '\n';
    }
    return kOk;
  }

  if (sweep->parsed()) {
    const gt::Dataset ds = gt::load_dataset(dataset_path);
    const auto rows =
        gt::wind_sweep(ds, v_min, v_max, step, parse_rounding(rounding));
    gt::export_sweep(rows, out_path);
    std::cout << rows.size() << " sweep rows written to " << out_path << '\n';
    return kOk;
  }

  if (import->parsed()) {
    const gt::Dataset ds = gt::import_csv_tables(csv_dir, name);
    gt::save_dataset(ds, out_path);
    print_summary(ds);
    std::cout << "dataset written to " << out_path << '\n';
    return kOk;
  }

  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gt::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const gt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const gt::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const gt::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoFailure;
  }
}
