#include "tmo/experiment.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "tmo/greedy.h"
#include "tmo/tao.h"

namespace tmo {

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kCart:
      return "cart";
    case Algorithm::kTao:
      return "tao";
    case Algorithm::kTmo:
      return "tmo";
  }
  return "?";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "cart") return Algorithm::kCart;
  if (name == "tao") return Algorithm::kTao;
  if (name == "tmo") return Algorithm::kTmo;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (expected cart, tao or tmo)");
}

void ExperimentSpec::Validate() const {
  if (seeds.empty()) throw std::invalid_argument("experiment needs at least one seed");
  if (max_depth < 1 || max_depth > 8) throw std::invalid_argument("depth must be in [1, 8]");
  split.Validate();
  TmoConfig check = tmo;
  check.max_depth = max_depth;
  check.Validate();
}

TrainedModel TrainModel(Algorithm algorithm, const Dataset& train, int max_depth,
                        const TmoConfig& tmo, std::uint64_t seed) {
  if (algorithm == Algorithm::kTmo) {
    TmoConfig config = tmo;
    config.max_depth = max_depth;
    config.seed = seed;
    Population population = InitPopulation(train, config.population_size, max_depth,
                                           seed, config.tao_max_passes);
    TmoResult result = TmoRun(train, config, std::move(population));
    return {std::move(result.best_tree), result.timed_out};
  }
  GreedyOptions options;
  options.max_depth = max_depth;
  Rng rng(seed);
  Tree tree = GrowGreedyTree(train, options, rng);
  if (algorithm == Algorithm::kTao) tree = TaoOptimize(std::move(tree), train, tmo.tao_max_passes);
  return {std::move(tree), false};
}

std::pair<double, double> MeanAndStd(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of an empty list");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double squares = 0.0;
  for (double v : values) squares += (v - mean) * (v - mean);
  return {mean, std::sqrt(squares / static_cast<double>(values.size()))};
}

RunReport RunExperiment(const ExperimentSpec& spec) {
  spec.Validate();
  return RunExperiment(spec, LoadLibsvm(spec.dataset_path));
}

RunReport RunExperiment(const ExperimentSpec& spec, const Dataset& data) {
  spec.Validate();
  RunReport report;
  report.dataset = spec.dataset_path;
  report.algorithm = spec.algorithm;
  report.max_depth = spec.max_depth;
  report.split = spec.split;
  report.split.seed = 0;
  report.tmo = spec.tmo;
  report.tmo.max_depth = spec.max_depth;
  report.tmo.seed = 0;

  for (std::uint64_t seed : spec.seeds) {
    try {
      const auto start = std::chrono::steady_clock::now();
      SplitSpec split = spec.split;
      split.seed = seed;
      const DatasetSplit parts = SplitDataset(data, split);
      TrainedModel model =
          TrainModel(spec.algorithm, parts.train, spec.max_depth, spec.tmo, seed);
      SeedResult r;
      r.seed = seed;
      r.train_rows = parts.train.size();
      r.validation_rows = parts.validation.size();
      r.test_rows = parts.test.size();
      r.train_accuracy = EvaluateAccuracy(model.tree, parts.train);
      r.validation_accuracy = EvaluateAccuracy(model.tree, parts.validation);
      r.test_accuracy = EvaluateAccuracy(model.tree, parts.test);
      r.timed_out = model.timed_out;
      r.seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      report.seeds.push_back(r);
    } catch (const std::exception& e) {
      throw std::runtime_error("seed " + std::to_string(seed) + ": " + e.what());
    }
  }

  std::vector<double> test;
  for (const auto& r : report.seeds) test.push_back(r.test_accuracy);
  std::tie(report.mean_test_accuracy, report.std_test_accuracy) = MeanAndStd(test);
  return report;
}

}  // namespace tmo
