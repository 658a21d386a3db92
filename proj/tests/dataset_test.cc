#include "tmo/dataset.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "support/synthetic.h"

namespace tmo {
namespace {

TEST(ParseLibsvmTest, DenseRowsAndAscendingLabelMapping) {
  const Dataset d = ParseLibsvm("+1 1:0.5 3:2.0\n-1 2:1.0");
  ASSERT_EQ(d.size(), 2u);
  ASSERT_EQ(d.feature_count(), 3u);
  EXPECT_EQ(d.class_count(), 2);
  const std::vector<double> row0(d.row(0).begin(), d.row(0).end());
  const std::vector<double> row1(d.row(1).begin(), d.row(1).end());
  EXPECT_EQ(row0, (std::vector<double>{0.5, 0.0, 2.0}));
  EXPECT_EQ(row1, (std::vector<double>{0.0, 1.0, 0.0}));
  EXPECT_EQ(d.labels(), (std::vector<int>{1, 0}));
}

TEST(ParseLibsvmTest, MulticlassLabelsNumberedByRawValue) {
  const Dataset d = ParseLibsvm("7 1:1\n3 1:2\n5 1:3\n3 1:4\n");
  EXPECT_EQ(d.class_count(), 3);
  EXPECT_EQ(d.labels(), (std::vector<int>{2, 0, 1, 0}));
}

TEST(ParseLibsvmTest, SingleClassIsRejected) {
  EXPECT_THROW(ParseLibsvm("0 1:1.0\n0 1:1.0\n0 1:1.0\n"), std::invalid_argument);
}

TEST(ParseLibsvmTest, NonIncreasingIndexReportsLine) {
  try {
    ParseLibsvm("-1 1:0\n+1 3:1 2:4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseLibsvmTest, MalformedTokens) {
  EXPECT_THROW(ParseLibsvm("x 1:1\n"), ParseError);
  EXPECT_THROW(ParseLibsvm("1 1:abc\n"), ParseError);
  EXPECT_THROW(ParseLibsvm("1 0:1\n"), ParseError);
  EXPECT_THROW(ParseLibsvm("1 2\n"), ParseError);
  EXPECT_THROW(ParseLibsvm("1 1:1 1:2\n"), ParseError);
}

TEST(ParseLibsvmTest, EmptyInput) {
  EXPECT_THROW(ParseLibsvm(""), ParseError);
  EXPECT_THROW(ParseLibsvm("\n  \n# only a comment\n"), ParseError);
}

TEST(ParseLibsvmTest, CommentsAndBlankLinesIgnored) {
  const Dataset d = ParseLibsvm("# header\n1 1:2 # trailing\n\n0 2:3\n");
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.feature_count(), 2u);
}

TEST(ParseLibsvmTest, WriteThenParseRoundTrips) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    testing::SyntheticOptions opt;
    opt.n = 30;
    opt.p = 4;
    opt.classes = 3;
    opt.levels = seed % 2 == 0 ? 3 : 0;  // grids put exact zeros in the data
    const Dataset d = testing::MakeSynthetic(opt, seed);
    const auto counts = d.ClassCounts();
    if (std::count(counts.begin(), counts.end(), 0u) > 0) {
      continue;  // ids would be renumbered when a class is missing
    }
    std::ostringstream out;
    WriteLibsvm(d, out);
    const Dataset back = ParseLibsvm(out.str());
    ASSERT_EQ(back.size(), d.size());
    ASSERT_EQ(back.feature_count(), d.feature_count());
    EXPECT_EQ(back.labels(), d.labels());
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t f = 0; f < d.feature_count(); ++f) {
        EXPECT_EQ(back.value(i, f), d.value(i, f));
      }
    }
  }
}

TEST(DatasetTest, RejectsBadShapes) {
  EXPECT_THROW(Dataset({}, {}, 1, 2), std::invalid_argument);
  EXPECT_THROW(Dataset({1.0, 2.0}, {0}, 1, 2), std::invalid_argument);
  EXPECT_THROW(Dataset({1.0}, {2}, 1, 2), std::invalid_argument);
  EXPECT_THROW(Dataset({1.0}, {0}, 1, 1), std::invalid_argument);
}

Dataset Sequential(std::size_t n) {
  std::vector<double> x(n);
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(i);
    y[i] = static_cast<int>(i % 2);
  }
  return Dataset(std::move(x), std::move(y), 1, 2);
}

TEST(SplitDatasetTest, PaperFractionsOnHundredRows) {
  const auto parts = SplitDataset(Sequential(100), SplitSpec{});
  EXPECT_EQ(parts.train.size(), 64u);
  EXPECT_EQ(parts.validation.size(), 16u);
  EXPECT_EQ(parts.test.size(), 20u);
}

TEST(SplitDatasetTest, FloorForTrainAndValidationRemainderToTest) {
  const auto parts = SplitDataset(Sequential(10), SplitSpec{});
  EXPECT_EQ(parts.train.size(), 6u);
  EXPECT_EQ(parts.validation.size(), 1u);
  EXPECT_EQ(parts.test.size(), 3u);
}

TEST(SplitDatasetTest, SameSeedSamePartition) {
  SplitSpec spec;
  spec.seed = 42;
  const auto a = SplitDataset(Sequential(50), spec);
  const auto b = SplitDataset(Sequential(50), spec);
  EXPECT_EQ(a.train_rows, b.train_rows);
  EXPECT_EQ(a.validation_rows, b.validation_rows);
  EXPECT_EQ(a.test_rows, b.test_rows);
  spec.seed = 43;
  EXPECT_NE(SplitDataset(Sequential(50), spec).train_rows, a.train_rows);
}

TEST(SplitDatasetTest, PartsAreDisjointAndCover) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.UniformIndex(300);
    const double train = rng.Uniform(0.3, 0.7);
    const double val = rng.Uniform(0.05, 0.2);
    SplitSpec spec{train, val, 1.0 - train - val, rng.NextU64()};
    std::optional<DatasetSplit> split;
    try {
      split = SplitDataset(Sequential(n), spec);
    } catch (const std::invalid_argument&) {
      continue;  // tiny n can leave a part empty
    }
    const DatasetSplit& parts = *split;
    ASSERT_EQ(parts.train.size() + parts.validation.size() + parts.test.size(), n);
    std::vector<std::size_t> all;
    for (const auto* rows : {&parts.train_rows, &parts.validation_rows, &parts.test_rows}) {
      all.insert(all.end(), rows->begin(), rows->end());
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(all[i], i);
    // Subsets carry the rows they name.
    for (std::size_t k = 0; k < parts.train_rows.size(); ++k) {
      ASSERT_EQ(parts.train.value(k, 0), static_cast<double>(parts.train_rows[k]));
    }
  }
}

TEST(SplitDatasetTest, EmptyPartAndBadFractions) {
  EXPECT_THROW(SplitDataset(Sequential(3), SplitSpec{}), std::invalid_argument);
  EXPECT_THROW(SplitDataset(Sequential(2), SplitSpec{0.4, 0.3, 0.3, 0}), std::invalid_argument);
  EXPECT_THROW(SplitDataset(Sequential(100), SplitSpec{0.5, 0.5, 0.1, 0}), std::invalid_argument);
  EXPECT_THROW(SplitDataset(Sequential(100), SplitSpec{1.0, 0.0, 0.0, 0}), std::invalid_argument);
}

TEST(BootstrapTest, SingleRow) {
  const Dataset d({3.5}, {1}, 1, 2);
  const Dataset b = BootstrapSample(d, 9);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.value(0, 0), 3.5);
  EXPECT_EQ(b.label(0), 1);
}

TEST(BootstrapTest, DeterministicAndSameSize) {
  const Dataset d = Sequential(5);
  const Dataset a = BootstrapSample(d, 11);
  const Dataset b = BootstrapSample(d, 11);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(a.value(i, 0), b.value(i, 0));
  for (std::size_t n : {1u, 2u, 17u, 300u}) {
    EXPECT_EQ(BootstrapSample(Sequential(n), n).size(), n);
  }
}

TEST(BootstrapTest, ClassCountInherited) {
  std::vector<double> x{0, 1, 2, 3};
  const Dataset d(x, {0, 0, 0, 1}, 1, 3);
  EXPECT_EQ(BootstrapSample(d, 1).class_count(), 3);
}

TEST(BootstrapTest, DistinctFractionNearOneMinusInverseE) {
  const Dataset d = Sequential(1000);
  double total = 0.0;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) {
    const Dataset b = BootstrapSample(d, static_cast<std::uint64_t>(s));
    std::set<double> distinct;
    for (std::size_t i = 0; i < b.size(); ++i) distinct.insert(b.value(i, 0));
    total += static_cast<double>(distinct.size()) / 1000.0;
  }
  EXPECT_NEAR(total / draws, 0.632, 0.03);
}

}  // namespace
}  // namespace tmo
