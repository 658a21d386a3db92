#include "tmo/experiment.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "support/synthetic.h"

namespace tmo {
namespace {

// x0 alone separates the classes.
Dataset Separable(std::size_t n) {
  std::vector<double> x;
  std::vector<int> y;
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(static_cast<double>(i));
    x.push_back(static_cast<double>((i * 7) % 5));
    y.push_back(i < n / 2 ? 0 : 1);
  }
  return Dataset(std::move(x), std::move(y), 2, 2);
}

ExperimentSpec SmallSpec(Algorithm algorithm) {
  ExperimentSpec spec;
  spec.dataset_path = "memory";
  spec.algorithm = algorithm;
  spec.seeds = {0, 1, 2};
  spec.tmo.population_size = 6;
  spec.tmo.generations = 2;
  return spec;
}

TEST(ExperimentTest, AlgorithmNames) {
  for (Algorithm a : {Algorithm::kCart, Algorithm::kTao, Algorithm::kTmo}) {
    EXPECT_EQ(ParseAlgorithm(AlgorithmName(a)), a);
  }
  EXPECT_THROW(ParseAlgorithm("forest"), std::invalid_argument);
}

TEST(ExperimentTest, SeparableDataIsLearnedExactly) {
  const Dataset data = Separable(100);
  for (Algorithm a : {Algorithm::kCart, Algorithm::kTao, Algorithm::kTmo}) {
    const RunReport report = RunExperiment(SmallSpec(a), data);
    ASSERT_EQ(report.seeds.size(), 3u);
    for (const auto& r : report.seeds) {
      EXPECT_EQ(r.train_rows, 64u);
      EXPECT_EQ(r.validation_rows, 16u);
      EXPECT_EQ(r.test_rows, 20u);
      EXPECT_EQ(r.test_accuracy, 1.0);
    }
    EXPECT_EQ(report.mean_test_accuracy, 1.0);
    EXPECT_EQ(report.std_test_accuracy, 0.0);
  }
}

TEST(ExperimentTest, TaoNeverTrainsWorseThanCart) {
  const Dataset data = testing::MakeSynthetic({.n = 300, .p = 6, .noise = 0.2}, 9);
  for (int depth : {1, 2, 3}) {
    ExperimentSpec cart = SmallSpec(Algorithm::kCart);
    cart.max_depth = depth;
    ExperimentSpec tao = cart;
    tao.algorithm = Algorithm::kTao;
    const RunReport a = RunExperiment(cart, data);
    const RunReport b = RunExperiment(tao, data);
    for (std::size_t s = 0; s < a.seeds.size(); ++s) {
      EXPECT_GE(b.seeds[s].train_accuracy, a.seeds[s].train_accuracy);
    }
  }
}

TEST(ExperimentTest, MeanAndPopulationStd) {
  const std::vector<double> v{0.70, 0.72};
  const auto [mean, std] = MeanAndStd(v);
  EXPECT_NEAR(mean, 0.71, 1e-12);
  EXPECT_NEAR(std, 0.01, 1e-12);
  const std::vector<double> one{0.5};
  EXPECT_EQ(MeanAndStd(one).second, 0.0);
  EXPECT_THROW(MeanAndStd(std::vector<double>{}), std::invalid_argument);
}

TEST(ExperimentTest, SpecValidation) {
  const Dataset data = Separable(50);
  ExperimentSpec spec = SmallSpec(Algorithm::kCart);
  spec.seeds.clear();
  EXPECT_THROW(RunExperiment(spec, data), std::invalid_argument);
  for (int depth : {0, 9}) {
    spec = SmallSpec(Algorithm::kCart);
    spec.max_depth = depth;
    EXPECT_THROW(RunExperiment(spec, data), std::invalid_argument);
  }
  spec = SmallSpec(Algorithm::kTmo);
  spec.tmo.cross_rate = -0.1;
  EXPECT_THROW(RunExperiment(spec, data), std::invalid_argument);
  EXPECT_THROW(ParseReportFormat("xml"), std::invalid_argument);
  EXPECT_EQ(ParseReportFormat("table"), ReportFormat::kTable);
}

TEST(ExperimentTest, SeedFailureNamesTheSeed) {
  const Dataset tiny(std::vector<double>{0.0, 1.0, 2.0, 3.0}, std::vector<int>{0, 1, 0, 1}, 1, 2);
  ExperimentSpec spec = SmallSpec(Algorithm::kCart);
  spec.seeds = {42};
  try {
    RunExperiment(spec, tiny);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("seed 42"), std::string::npos);
  }
}

TEST(ExperimentTest, MissingFile) {
  ExperimentSpec spec = SmallSpec(Algorithm::kCart);
  spec.dataset_path = "/nonexistent/data.libsvm";
  EXPECT_THROW(RunExperiment(spec), std::runtime_error);
}

TEST(ReportTest, RecordsRoundTripAndSummaryIsConsistent) {
  const Dataset data = testing::MakeSynthetic({.n = 150, .p = 4, .noise = 0.25}, 4);
  const RunReport report = RunExperiment(SmallSpec(Algorithm::kTmo), data);
  std::istringstream in(EmitReport(report, ReportFormat::kRecords));
  const RunReport back = ParseReportRecords(in);

  EXPECT_EQ(back.dataset, report.dataset);
  EXPECT_EQ(back.algorithm, report.algorithm);
  EXPECT_EQ(back.max_depth, report.max_depth);
  EXPECT_EQ(back.tmo.population_size, report.tmo.population_size);
  EXPECT_EQ(back.tmo.cross_rate, report.tmo.cross_rate);
  ASSERT_EQ(back.seeds.size(), report.seeds.size());
  std::vector<double> test;
  for (std::size_t s = 0; s < report.seeds.size(); ++s) {
    EXPECT_EQ(back.seeds[s].seed, report.seeds[s].seed);
    EXPECT_EQ(back.seeds[s].test_accuracy, report.seeds[s].test_accuracy);
    EXPECT_EQ(back.seeds[s].train_accuracy, report.seeds[s].train_accuracy);
    test.push_back(back.seeds[s].test_accuracy);
  }
  double mean = 0.0;
  for (double t : test) mean += t;
  mean /= static_cast<double>(test.size());
  double var = 0.0;
  for (double t : test) var += (t - mean) * (t - mean);
  EXPECT_NEAR(back.mean_test_accuracy, mean, 1e-12);
  EXPECT_NEAR(back.std_test_accuracy, std::sqrt(var / static_cast<double>(test.size())), 1e-12);
}

TEST(ReportTest, RecordsAreDeterministic) {
  const Dataset data = testing::MakeSynthetic({.n = 150, .p = 4, .noise = 0.25}, 5);
  const auto a = EmitReport(RunExperiment(SmallSpec(Algorithm::kTmo), data), ReportFormat::kRecords);
  const auto b = EmitReport(RunExperiment(SmallSpec(Algorithm::kTmo), data), ReportFormat::kRecords);
  EXPECT_EQ(a, b);
}

TEST(ReportTest, TableMentionsEveryReport) {
  const Dataset data = Separable(60);
  std::vector<RunReport> reports;
  for (Algorithm a : {Algorithm::kCart, Algorithm::kTao}) reports.push_back(RunExperiment(SmallSpec(a), data));
  const std::string table = EmitComparisonTable(reports);
  EXPECT_NE(table.find("cart"), std::string::npos);
  EXPECT_NE(table.find("tao"), std::string::npos);
  EXPECT_NE(table.find("100.00"), std::string::npos);
  EXPECT_NE(EmitReport(reports[0], ReportFormat::kTable).find("seed 2"), std::string::npos);
}

TEST(ReportTest, MalformedRecords) {
  std::istringstream empty("");
  EXPECT_THROW(ParseReportRecords(empty), std::runtime_error);
  std::istringstream unknown("{\"record\":\"other\"}\n");
  EXPECT_THROW(ParseReportRecords(unknown), std::runtime_error);
}

}  // namespace
}  // namespace tmo
