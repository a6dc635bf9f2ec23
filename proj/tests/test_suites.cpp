#include "ltk/suites.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace ltk;

namespace {

RunConfig small(int samples, int threads) {
  RunConfig cfg;
  cfg.seed = 5;
  cfg.samples = samples;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

TEST(Seeds, DerivedStreamsDiffer) {
  EXPECT_EQ(derive_seed(7, "levi", 3), derive_seed(7, "levi", 3));
  EXPECT_NE(derive_seed(7, "levi", 3), derive_seed(7, "levi", 4));
  EXPECT_NE(derive_seed(7, "levi", 3), derive_seed(7, "moment", 3));
  EXPECT_NE(derive_seed(7, "levi", 3), derive_seed(8, "levi", 3));
}

TEST(Suites, ReportIndependentOfWorkerCount) {
  for (const char* name : {"invariance", "levi", "radical-lemmas", "cartan-path"}) {
    const json one = to_json(run_suite(name, small(40, 1)));
    const json four = to_json(run_suite(name, small(40, 4)));
    EXPECT_EQ(one.dump(), four.dump()) << name;
  }
}

TEST(Suites, UnknownNameThrows) { EXPECT_THROW(run_suite("nope", RunConfig{}), PreconditionError); }

TEST(Suites, NamesAreComplete) { EXPECT_EQ(suite_names().size(), 10u); }

TEST(Suites, ChecksCarryMeasurements) {
  const SuiteReport rep = run_suite("levi", small(30, 2));
  ASSERT_FALSE(rep.checks.empty());
  for (const auto& c : rep.checks) {
    EXPECT_FALSE(c.id.empty());
    EXPECT_GT(c.cases, 0);
  }
  EXPECT_TRUE(rep.passed());
  EXPECT_NE(rep.find("levi-worked"), nullptr);
}
