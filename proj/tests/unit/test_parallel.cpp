#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "qndbec/parallel.hpp"

using namespace qndbec;

TEST(Parallel, EveryIndexOnce) {
  for (unsigned w : {1u, 2u, 7u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, w);
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(Parallel, EmptyRangeIsFine) {
  parallel_for(0, [](std::size_t) { FAIL(); }, 3);
}

TEST(Parallel, RethrowsFirstError) {
  EXPECT_THROW(parallel_for(
                   50,
                   [](std::size_t i) {
                     if (i == 17) throw std::domain_error("boom");
                   },
                   4),
               std::domain_error);
}

TEST(Parallel, WorkersFromEnvironment) {
  setenv("QNDBEC_WORKERS", "3", 1);
  EXPECT_EQ(default_workers(), 3u);
  unsetenv("QNDBEC_WORKERS");
  EXPECT_GE(default_workers(), 1u);
}
