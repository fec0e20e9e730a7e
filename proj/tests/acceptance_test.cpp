// Acceptance gate: the full verification battery must pass at the stated
// tolerances.  Prints one summary line per criterion group.
#include <gtest/gtest.h>

#include <cstdio>
#include <map>

#include "equiforms/verify.hpp"

using namespace equiforms;

TEST(Acceptance, FullBattery) {
  VerifyOptions opt;  // suite "all", fixed seed, stated tolerances
  auto results = run_verification(opt);
  ASSERT_FALSE(results.empty());

  std::map<int, std::pair<int, int>> tally;  // group -> (passed, total)
  for (const auto& r : results) {
    tally[r.group].second++;
    if (r.pass) tally[r.group].first++;
  }
  for (const auto& [g, pt] : tally)
    std::printf("[%s] %-48s %d/%d checks\n",
                pt.first == pt.second ? "PASS" : "FAIL", group_title(g).c_str(),
                pt.first, pt.second);
  std::fflush(stdout);

  for (const auto& r : results)
    EXPECT_TRUE(r.pass) << r.name << " [" << r.params << "] value=" << r.value
                        << " reference=" << r.reference
                        << " deviation=" << r.deviation
                        << " tolerance=" << r.tolerance;
}
