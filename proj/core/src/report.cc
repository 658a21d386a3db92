#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "tmo/experiment.h"

namespace tmo {

namespace {

using Json = nlohmann::ordered_json;

std::string Percent(double mean, double std) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%6.2f ± %5.2f", 100.0 * mean, 100.0 * std);
  return buffer;
}

std::string BaseName(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::vector<double> Column(const RunReport& report, double SeedResult::*field) {
  std::vector<double> values;
  for (const auto& r : report.seeds) values.push_back(r.*field);
  return values;
}

void AppendRow(std::string& out, const std::string& dataset, const std::string& algo,
               int depth, std::size_t seeds, const std::string& train,
               const std::string& test, double seconds) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, "%-20s %-5s %5d %5zu  %-16s %-16s %9.2f\n",
                dataset.c_str(), algo.c_str(), depth, seeds, train.c_str(),
                test.c_str(), seconds);
  out += buffer;
}

void AppendHeader(std::string& out) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, "%-20s %-5s %5s %5s  %-15s %-15s %9s\n",
                "dataset", "algo", "depth", "seeds", "train %", "test %", "seconds");
  out += buffer;
}

void AppendSummaryRow(std::string& out, const RunReport& report) {
  const auto [train_mean, train_std] = MeanAndStd(Column(report, &SeedResult::train_accuracy));
  double seconds = 0.0;
  for (const auto& r : report.seeds) seconds += r.seconds;
  AppendRow(out, BaseName(report.dataset), std::string(AlgorithmName(report.algorithm)),
            report.max_depth, report.seeds.size(), Percent(train_mean, train_std),
            Percent(report.mean_test_accuracy, report.std_test_accuracy), seconds);
}

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "records") return ReportFormat::kRecords;
  if (name == "table") return ReportFormat::kTable;
  throw std::invalid_argument("unknown report format '" + std::string(name) +
                              "' (expected records or table)");
}

std::string EmitReport(const RunReport& report, ReportFormat format) {
  if (report.seeds.empty()) throw std::invalid_argument("report has no seeds");
  if (format == ReportFormat::kTable) {
    std::string out;
    AppendHeader(out);
    for (const auto& r : report.seeds) {
      AppendRow(out, "  seed " + std::to_string(r.seed), "", report.max_depth, 1,
                Percent(r.train_accuracy, 0.0), Percent(r.test_accuracy, 0.0), r.seconds);
    }
    AppendSummaryRow(out, report);
    out += "(std is the population standard deviation over seeds)\n";
    return out;
  }

  std::ostringstream out;
  Json config;
  config["record"] = "config";
  config["dataset"] = report.dataset;
  config["algorithm"] = AlgorithmName(report.algorithm);
  config["max_depth"] = report.max_depth;
  config["split"] = {report.split.train_fraction, report.split.val_fraction,
                     report.split.test_fraction};
  config["population_size"] = report.tmo.population_size;
  config["cross_rate"] = report.tmo.cross_rate;
  config["generations"] = report.tmo.generations;
  config["time_limit_seconds"] = report.tmo.time_limit_seconds;
  config["tao_max_passes"] = report.tmo.tao_max_passes;
  config["std"] = "population";
  out << config.dump() << '\n';
  for (const auto& r : report.seeds) {
    Json seed;
    seed["record"] = "seed";
    seed["seed"] = r.seed;
    seed["train_rows"] = r.train_rows;
    seed["validation_rows"] = r.validation_rows;
    seed["test_rows"] = r.test_rows;
    seed["train_accuracy"] = r.train_accuracy;
    seed["validation_accuracy"] = r.validation_accuracy;
    seed["test_accuracy"] = r.test_accuracy;
    seed["timed_out"] = r.timed_out;
    out << seed.dump() << '\n';
  }
  Json summary;
  summary["record"] = "summary";
  summary["seeds"] = report.seeds.size();
  summary["mean_test_accuracy"] = report.mean_test_accuracy;
  summary["std_test_accuracy"] = report.std_test_accuracy;
  out << summary.dump() << '\n';
  return out.str();
}

std::string EmitComparisonTable(std::span<const RunReport> reports) {
  std::string out;
  AppendHeader(out);
  for (const auto& report : reports) AppendSummaryRow(out, report);
  out += "(std is the population standard deviation over seeds)\n";
  return out;
}

RunReport ParseReportRecords(std::istream& in) {
  RunReport report;
  bool have_config = false;
  bool have_summary = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    const std::string kind = j.at("record").get<std::string>();
    if (kind == "config") {
      if (have_config) throw std::runtime_error("duplicate config record");
      have_config = true;
      report.dataset = j.at("dataset").get<std::string>();
      report.algorithm = ParseAlgorithm(j.at("algorithm").get<std::string>());
      report.max_depth = j.at("max_depth").get<int>();
      const auto& split = j.at("split");
      report.split.train_fraction = split.at(0).get<double>();
      report.split.val_fraction = split.at(1).get<double>();
      report.split.test_fraction = split.at(2).get<double>();
      report.tmo.population_size = j.at("population_size").get<std::size_t>();
      report.tmo.cross_rate = j.at("cross_rate").get<double>();
      report.tmo.generations = j.at("generations").get<int>();
      report.tmo.time_limit_seconds = j.at("time_limit_seconds").get<double>();
      report.tmo.tao_max_passes = j.at("tao_max_passes").get<int>();
      report.tmo.max_depth = report.max_depth;
    } else if (kind == "seed") {
      SeedResult r;
      r.seed = j.at("seed").get<std::uint64_t>();
      r.train_rows = j.at("train_rows").get<std::size_t>();
      r.validation_rows = j.at("validation_rows").get<std::size_t>();
      r.test_rows = j.at("test_rows").get<std::size_t>();
      r.train_accuracy = j.at("train_accuracy").get<double>();
      r.validation_accuracy = j.at("validation_accuracy").get<double>();
      r.test_accuracy = j.at("test_accuracy").get<double>();
      r.timed_out = j.at("timed_out").get<bool>();
      report.seeds.push_back(r);
    } else if (kind == "summary") {
      have_summary = true;
      report.mean_test_accuracy = j.at("mean_test_accuracy").get<double>();
      report.std_test_accuracy = j.at("std_test_accuracy").get<double>();
      if (j.at("seeds").get<std::size_t>() != report.seeds.size()) {
        throw std::runtime_error("report summary seed count does not match records");
      }
      break;
    } else {
      throw std::runtime_error("unknown report record '" + kind + "'");
    }
  }
  if (!have_config || !have_summary) throw std::runtime_error("incomplete report records");
  return report;
}

}  // namespace tmo
