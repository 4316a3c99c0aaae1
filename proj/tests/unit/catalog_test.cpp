#include "logicmine/catalog.hpp"

#include <gtest/gtest.h>

#include <set>

#include "logicmine/sop.hpp"

namespace logicmine::catalog {
namespace {

TEST(Catalog, SixteenRowsInCountOrder) {
  const auto rows = top_functions();
  ASSERT_EQ(rows.size(), 16u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].index, static_cast<int>(i + 1));
    if (i > 0) EXPECT_LE(rows[i].count, rows[i - 1].count);
  }
  EXPECT_EQ(entry(1).count, kNandCount);
  EXPECT_EQ(entry("F9").count, kOrCount);
  EXPECT_THROW(entry(17), std::out_of_range);
  EXPECT_THROW(entry("G3"), std::out_of_range);
}

TEST(Catalog, GateRows) {
  EXPECT_EQ(table_of(entry(1)).id(), 32767);
  EXPECT_EQ(table_of(entry(9)).id(), 65534);
  EXPECT_EQ(table_of(entry(6)).id(), 2048);
  EXPECT_EQ(table_of(entry(8)).id(), 4096);
  EXPECT_EQ(table_of(entry(11)).id(), 256);
}

TEST(Catalog, RunOnRowsAreFlagged) {
  for (const auto& e : top_functions()) {
    const auto row = import_entry(e);
    if (e.index == 13 || e.index == 15) {
      EXPECT_TRUE(row.flagged()) << e.index;
      EXPECT_GE(row.readings.size(), 2u);
    } else {
      EXPECT_TRUE(row.ok()) << e.index << ": " << row.error;
    }
  }
  EXPECT_EQ(table_of(entry(13)).id(), 32746);
  EXPECT_EQ(table_of(entry(15)).id(), 32763);
}

TEST(Catalog, RowsAreCoversOfPrimeImplicants) {
  for (const auto& e : top_functions()) {
    const auto row = import_entry(e);
    const auto expr = row.ok() ? *row.expr : row.readings.front();
    const auto tt = sop::to_truth_table(expr);
    std::set<std::string> primes;
    const auto implicants = sop::prime_implicants(tt);
    for (const auto& t : implicants.terms()) primes.insert(t.to_string());
    for (const auto& t : expr.terms()) EXPECT_TRUE(primes.count(t.to_string())) << e.index;
  }
}

TEST(Catalog, DistinctFunctions) {
  std::set<std::uint16_t> ids;
  for (const auto& e : top_functions()) ids.insert(table_of(e).id());
  EXPECT_EQ(ids.size(), 16u);
}

TEST(Catalog, ScatterOmissions) {
  int omitted = 0;
  for (const auto& e : top_functions()) omitted += omitted_from_scatter(e) ? 1 : 0;
  EXPECT_EQ(omitted, 4);
  EXPECT_TRUE(omitted_from_scatter(entry(1)));
  EXPECT_FALSE(omitted_from_scatter(entry(13)));
}

TEST(Catalog, CampaignTotals) {
  EXPECT_EQ(kRepeats * 7 * kThresholds, kTruthTables);
  EXPECT_EQ(kRepeats * kThresholds, kStateGraphs);
}

}  // namespace
}  // namespace logicmine::catalog
