// Command-line harness: trains CART, TAO or TMO trees on a LIBSVM dataset
// over several seeds and prints per-seed records and a summary table.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tmo/dataset.h"
#include "tmo/experiment.h"

namespace {

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<std::uint64_t> ParseSeeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : SplitList(text)) {
    std::size_t used = 0;
    const unsigned long long value = std::stoull(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad seed '" + item + "'");
    seeds.push_back(value);
  }
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memetic learning of bounded-depth classification trees"};

  tmo::ExperimentSpec defaults;
  std::string dataset;
  std::string algos = "tmo";
  int depth = defaults.max_depth;
  std::string seeds = "0,1,2,3,4";
  double cr = defaults.tmo.cross_rate;
  std::size_t pop_size = defaults.tmo.population_size;
  int generations = defaults.tmo.generations;
  double time_limit = defaults.tmo.time_limit_seconds;
  int tao_passes = defaults.tmo.tao_max_passes;
  std::string out_path;
  std::string format = "both";

  app.add_option("--dataset", dataset, "LIBSVM data file")->required();
  app.add_option("--algo", algos, "cart, tao, tmo or a comma-separated list")
      ->capture_default_str();
  app.add_option("--depth", depth, "maximum tree depth (1-8)")->capture_default_str();
  app.add_option("--seeds", seeds, "comma-separated seeds")->capture_default_str();
  app.add_option("--cr", cr, "TMO cross rate")->capture_default_str();
  app.add_option("--pop-size", pop_size, "TMO population size")->capture_default_str();
  app.add_option("--generations", generations, "TMO generations")->capture_default_str();
  app.add_option("--time-limit", time_limit, "TMO wall-clock limit per run, seconds")
      ->capture_default_str();
  app.add_option("--tao-passes", tao_passes, "TAO pass budget")->capture_default_str();
  app.add_option("--format", format, "records, table or both")
      ->check(CLI::IsMember({"records", "table", "both"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "write output here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    const tmo::Dataset data = tmo::LoadLibsvm(dataset);

    std::vector<tmo::RunReport> reports;
    for (const auto& name : SplitList(algos)) {
      tmo::ExperimentSpec spec;
      spec.dataset_path = dataset;
      spec.algorithm = tmo::ParseAlgorithm(name);
      spec.max_depth = depth;
      spec.seeds = ParseSeeds(seeds);
      spec.tmo.cross_rate = cr;
      spec.tmo.population_size = pop_size;
      spec.tmo.generations = generations;
      spec.tmo.time_limit_seconds = time_limit;
      spec.tmo.tao_max_passes = tao_passes;
      reports.push_back(tmo::RunExperiment(spec, data));
    }
    if (reports.empty()) throw std::invalid_argument("no algorithm selected");

    std::ostringstream text;
    if (format != "table") {
      for (const auto& r : reports) {
        text << tmo::EmitReport(r, tmo::ReportFormat::kRecords);
      }
    }
    if (format != "records") {
      if (format == "both") text << '\n';
      text << tmo::EmitComparisonTable(reports);
    }

    if (out_path.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream out(out_path);
      if (!(out << text.str())) {
        throw std::runtime_error("cannot write '" + out_path + "'");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "tmo: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
