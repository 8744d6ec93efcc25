#include <gtest/gtest.h>

#include <cmath>

#include "opradius/harness.hpp"
#include "test_util.hpp"

using namespace opradius;
using testutil::code_of;

namespace {

FuzzConfig small(std::size_t trials, std::uint64_t seed = 42) {
  FuzzConfig c;
  c.ensemble.dim_min = 2;
  c.ensemble.dim_max = 4;
  c.ensemble.trials = trials;
  c.ensemble.seed = seed;
  return c;
}

bool same(const FuzzReport& a, const FuzzReport& b) {
  if (a.entries.size() != b.entries.size() || a.violations.size() != b.violations.size() ||
      a.flagged.size() != b.flagged.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const EntryAggregate& x = a.entries[i];
    const EntryAggregate& y = b.entries[i];
    if (x.id != y.id || x.applicable != y.applicable || x.violations != y.violations ||
        x.min_margin != y.min_margin || x.mean_margin != y.mean_margin || x.min_ratio != y.min_ratio) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.flagged.size(); ++i) {
    if (a.flagged[i].report.fingerprint != b.flagged[i].report.fingerprint) return false;
  }
  return true;
}

TEST(Fuzz, ZeroTrials) {
  const FuzzReport r = run_fuzz(small(0));
  EXPECT_TRUE(r.ok());
  for (const auto& e : r.entries) EXPECT_EQ(e.trials, 0u);
}

TEST(Fuzz, BadConfiguration) {
  FuzzConfig c = small(5);
  c.ensemble.dim_min = 0;
  EXPECT_EQ(code_of([&] { run_fuzz(c); }), Errc::config_error);
  c = small(5);
  c.ensemble.dim_max = 1;
  EXPECT_EQ(code_of([&] { run_fuzz(c); }), Errc::config_error);
  c = small(5);
  c.entries = {"NOPE"};
  EXPECT_EQ(code_of([&] { run_fuzz(c); }), Errc::config_error);
}

TEST(Fuzz, DeterministicAndScheduleIndependent) {
  const FuzzConfig c = small(60, 7);
  const FuzzReport a = run_fuzz(c);
  const FuzzReport b = run_fuzz(c);
  const FuzzReport s = run_fuzz_serial(c);
  EXPECT_TRUE(same(a, b));
  EXPECT_TRUE(same(a, s));
  EXPECT_FALSE(same(a, run_fuzz(small(60, 8))));
}

TEST(Fuzz, CountsAddUpAndNoUnflaggedViolations) {
  const FuzzReport r = run_fuzz(small(200, 3));
  EXPECT_TRUE(r.ok()) << (r.violations.empty() ? r.error_messages.front() : r.violations.front().id);
  EXPECT_EQ(r.entries.size(), list_catalog().size());
  for (const auto& e : r.entries) {
    EXPECT_EQ(e.trials, 200u) << e.id;
    EXPECT_EQ(e.applicable + e.inapplicable + e.errors, e.trials) << e.id;
    if (!e.flagged) EXPECT_EQ(e.violations, 0u) << e.id;
  }
  // Nilpotent rank-one draws put NORM-EQUIV on its lower branch.
  EXPECT_LT(r.norm_equiv_min_lower, 0.05);
  EXPECT_GE(r.qa1_min_ratio, 1.0);
}

TEST(Fuzz, EntrySelection) {
  FuzzConfig c = small(30);
  c.entries = {"QA1", "TD1.stated"};
  const FuzzReport r = run_fuzz(c);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.entries[0].id, "TD1.stated");  // catalog order
  EXPECT_EQ(r.entries[1].id, "QA1");
  EXPECT_TRUE(std::isnan(run_fuzz([] {
                             FuzzConfig k = small(5);
                             k.entries = {"CSTAR"};
                             return k;
                           }())
                             .qa1_min_ratio));
}

TEST(Fuzz, VerboseLinesOnePerTrialAndEntry) {
  FuzzConfig c = small(10);
  c.entries = {"CSTAR", "QA1"};
  c.verbose = true;
  const FuzzReport r = run_fuzz(c);
  EXPECT_EQ(r.verbose_lines.size(), 20u);
  for (const auto& l : r.verbose_lines) EXPECT_TRUE(json::accept(l)) << l;
}

class Replay : public ::testing::Test {
 protected:
  void SetUp() override {
    FuzzConfig c = small(100, 5);
    c.entries = {"TD1.stated"};
    report_ = run_fuzz(c);
    ASSERT_FALSE(report_.flagged.empty());
  }
  FuzzReport report_;
};

TEST_F(Replay, ReproducesTheStoredVerdict) {
  for (const ViolationRecord& rec : report_.flagged) {
    const ViolationRecord back = record_from_json(json::parse(to_json(rec).dump()));
    const MarginReport m = replay(back);
    EXPECT_EQ(m.status, Status::violated);
    EXPECT_EQ(m.lhs, rec.report.lhs);
    EXPECT_EQ(m.rhs, rec.report.rhs);
    EXPECT_EQ(m.fingerprint, rec.report.fingerprint);
  }
}

TEST_F(Replay, LooserToleranceFlipsTheVerdict) {
  const ViolationRecord& rec = report_.flagged.front();
  const double excess = rec.report.lhs - rec.report.rhs;
  ASSERT_GT(excess, 0.0);
  const MarginReport m = replay(rec, Tolerance{2.0 * excess, 0.0});
  EXPECT_EQ(m.status, Status::satisfied);
}

TEST_F(Replay, TamperedRecordIsRejected) {
  json j = to_json(report_.flagged.front());
  j["report"]["fingerprint"] = "0000000000000000";
  EXPECT_EQ(code_of([&] { replay(record_from_json(j)); }), Errc::corrupt_record);
  json k = to_json(report_.flagged.front());
  k.erase("operands");
  EXPECT_EQ(code_of([&] { record_from_json(k); }), Errc::corrupt_record);
}

TEST(FuzzJson, Shape) {
  FuzzConfig c = small(10);
  c.entries = {"CSTAR"};
  const json j = to_json(run_fuzz(c));
  EXPECT_TRUE(j.contains("entries"));
  EXPECT_EQ(j["entries"].size(), 1u);
}

}  // namespace
