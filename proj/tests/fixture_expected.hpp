#pragma once

// Expected feature vectors for fixture_corpus(), recomputed independently by
// tests/oracle/feature_fixture_oracle.py and frozen here as shortest
// round-trip literals. Comparison in the tests is exact (==), not approximate.

#include <array>

namespace sieve::testfix {

// alice
constexpr std::array<double, 52> kAliceExpected = {
    120.0, 80.0, 3.0, 15.0, 0.3333333333333333, 0.6666666666666666, 1.0, 4.0,
    4.666666666666668, 0.6666666666666666, 0.5, 1.0, 1.3333333333333333,
    1.2472191289246473, 0.0, 3.0, 0.6666666666666666, 5.0, 1.5, 0.25, 44500.0,
    41500.0, 3000.0, 86000.0, 172800.0, 172800.0, 172800.0, 172800.0, 3000.0,
    0.0, 3000.0, 3000.0, 12.0, 0.0, 12.0, 12.0, 31.0, 0.0, 31.0, 31.0, 338.0,
    461.033621333629, 12.0, 990.0, 37.333333333333336, 8.956685895029587, 31.0,
    50.0, 1.0, 0.0, 1.0, 1.0};

// bob
constexpr std::array<double, 52> kBobExpected = {
    10.0, 30.0, 2.0, 2.0, 1.0, 1.0, 0.0, 0.5, 0.25, 1.0, 0.0, 0.0, 0.0, 0.0,
    0.0, 0.0, 0.0, 3.0, 1.0, 0.0, 70000.0, 0.0, 70000.0, 70000.0, 70000.0,
    0.0, 70000.0, 70000.0, 70000.0, 0.0, 70000.0, 70000.0, 0.0, 0.0, 0.0, 0.0,
    0.0, 0.0, 0.0, 0.0, 560.0, 430.0, 130.0, 990.0, 66.0, 16.0, 50.0, 82.0,
    0.0, 0.0, 0.0, 0.0};

// eve
constexpr std::array<double, 52> kEveExpected = {
    1000.0, 50.0, 1.0, 7.0, 0.0, 1.0, 5.0, 1.0, 0.0, 2.0, 2.0, 2.0, 2.0, 0.0,
    2.0, 2.0, 1.0, 3.0, 0.5, 0.25, 172800.0, 172800.0, 172800.0, 172800.0,
    172800.0, 172800.0, 172800.0, 172800.0, 172800.0, 172800.0, 172800.0,
    172800.0, 130.0, 0.0, 130.0, 130.0, 82.0, 0.0, 82.0, 82.0, 130.0, 0.0,
    130.0, 130.0, 82.0, 0.0, 82.0, 82.0, 1.0, 0.0, 1.0, 1.0};

// ghost: all zero except the four gap-stat blocks, which report the window
// length when fewer than two qualifying events exist.
constexpr std::array<double, 52> kGhostExpected = {
    0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
    0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 172800.0, 172800.0, 172800.0, 172800.0,
    172800.0, 172800.0, 172800.0, 172800.0, 172800.0, 172800.0, 172800.0,
    172800.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
    0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};

// alice again, with retweet counts taken from observed graph edges instead
// of the platform field: two incoming retweets, one per original.
constexpr double kAliceObservedRtAvg = 1.0;
constexpr double kAliceObservedRtVar = 0.0;

}  // namespace sieve::testfix
