#ifndef TMO_EXPERIMENT_H_
#define TMO_EXPERIMENT_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmo/dataset.h"
#include "tmo/memetic.h"
#include "tmo/tree.h"

namespace tmo {

enum class Algorithm { kCart, kTao, kTmo };

std::string_view AlgorithmName(Algorithm algorithm);
// Accepts "cart", "tao", "tmo". Throws std::invalid_argument otherwise.
Algorithm ParseAlgorithm(std::string_view name);

struct ExperimentSpec {
  std::string dataset_path;
  Algorithm algorithm = Algorithm::kTmo;
  int max_depth = 2;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  // The seed field is ignored; each experiment seed drives its own split.
  SplitSpec split;
  // population_size, cross_rate, generations, time_limit_seconds and
  // tao_max_passes are used; max_depth and seed come from this spec.
  TmoConfig tmo;

  // Throws std::invalid_argument: empty seed list, depth outside [1, 8],
  // bad split fractions or TMO settings.
  void Validate() const;
};

// Trains `algorithm` on `train` with the given seed: cart grows a greedy tree
// on all features without bootstrap; tao runs TAO on that tree; tmo builds
// the random-forest population and evolves it.
struct TrainedModel {
  Tree tree;
  bool timed_out = false;
};
TrainedModel TrainModel(Algorithm algorithm, const Dataset& train, int max_depth,
                        const TmoConfig& tmo, std::uint64_t seed);

struct SeedResult {
  std::uint64_t seed = 0;
  std::size_t train_rows = 0;
  std::size_t validation_rows = 0;
  std::size_t test_rows = 0;
  double train_accuracy = 0.0;
  double validation_accuracy = 0.0;
  double test_accuracy = 0.0;
  bool timed_out = false;
  double seconds = 0.0;  // wall clock; not part of the record stream
};

struct RunReport {
  std::string dataset;
  Algorithm algorithm = Algorithm::kTmo;
  int max_depth = 2;
  SplitSpec split;
  TmoConfig tmo;
  std::vector<SeedResult> seeds;
  double mean_test_accuracy = 0.0;
  double std_test_accuracy = 0.0;  // population std over seeds
};

// Mean and population standard deviation. Throws on an empty list.
std::pair<double, double> MeanAndStd(std::span<const double> values);

// Splits 64/16/20 (by default) per seed, trains, and evaluates on every part.
// Per-seed failures are rethrown with the seed in the message.
RunReport RunExperiment(const ExperimentSpec& spec);
RunReport RunExperiment(const ExperimentSpec& spec, const Dataset& data);

enum class ReportFormat { kRecords, kTable };
// "records" or "table"; throws std::invalid_argument otherwise.
ReportFormat ParseReportFormat(std::string_view name);

// records: one JSON object per line (config, one per seed, summary), free of
// wall-clock values so identical runs give identical bytes.
// table: aligned human-readable table with accuracies as mean ± std in %.
std::string EmitReport(const RunReport& report, ReportFormat format);
std::string EmitComparisonTable(std::span<const RunReport> reports);

// Inverse of the records format for a single report.
RunReport ParseReportRecords(std::istream& in);

}  // namespace tmo

#endif  // TMO_EXPERIMENT_H_
