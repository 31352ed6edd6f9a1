#include <cmath>

#include "doctest.h"
#include "treeval/bounds.hpp"
#include "treeval/compile.hpp"

using namespace treeval;

TEST_CASE("program counting formulas at tiny parameters") {
  BoundModel det{MachineModel::DetKway, BoundProblem::BT};
  CHECK(count_programs(det, 1, 1, 2).to_string() == "9");  // 1^1 (1+2)^2
  BoundModel nondet{MachineModel::NondetKway, BoundProblem::BT};
  CHECK(count_programs(nondet, 1, 1, 2).to_string() == "36");  // 3^2 * 2^2
}

TEST_CASE("program counts grow strictly in s") {
  uint64_t state = 12345;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  };
  for (int trial = 0; trial < 100; ++trial) {
    BoundModel model{static_cast<MachineModel>(next() % 4),
                     next() % 2 ? BoundProblem::FT : BoundProblem::BT};
    long long s = 1 + next() % 20;
    long long v = 1 + next() % 10;
    int k = 2 + next() % 7;
    CHECK(count_programs(model, s + 1, v, k) > count_programs(model, s, v, k));
  }
}

TEST_CASE("minimal state count agrees with a linear scan oracle") {
  auto scan = [](const BoundModel& model, long long v, int k, const BigInt& required) {
    for (long long s = 1;; ++s)
      if (count_programs(model, s, v, k) >= required) return s;
  };
  BoundModel nondet{MachineModel::NondetKway, BoundProblem::FT};
  BoundModel det{MachineModel::DetKway, BoundProblem::BT};
  BoundModel det_bin{MachineModel::DetBinary, BoundProblem::FT};
  for (auto [model, v, k, required] : {
           std::tuple{nondet, 2ll, 16, BigInt::pow(BigInt(16), 256)},  // FT litters
           {det, 2ll, 8, BigInt::pow2(64)},                            // BT litters
           {det, 1ll, 2, BigInt(1)},
           {nondet, 3ll, 4, BigInt::pow(BigInt(10), 40)},
           {det_bin, 2ll, 8, BigInt::pow(BigInt(10), 120)},
           {det, 4ll, 3, BigInt::pow(BigInt(7), 77)},
       }) {
    long long got = min_states_for_restrictions(model, v, k, required);
    CHECK(got == scan(model, v, k, required));
  }
}

TEST_CASE("minimal state count respects the paper's closed-form threshold") {
  // Nondet k-way against k^(k^d) litter restrictions, d=2, k=16:
  // s >= (k^((d-1)/2) sqrt(log2 k))/2 = 4.
  BoundModel nondet{MachineModel::NondetKway, BoundProblem::FT};
  long long s = min_states_for_restrictions(nondet, 2, 16, BigInt::pow(BigInt(16), 256));
  CHECK(s >= 4);
  CHECK(min_states_for_restrictions(nondet, 2, 16, BigInt(1)) == 1);
}

TEST_CASE("table spot values at d=2 h=3 k=4") {
  BoundTable t = neciporuk_table(2, 3, 4);
  REQUIRE(t.entries[2][1].exact.has_value());  // nondet k-way BT
  CHECK(*t.entries[2][1].exact == Rational(16));
  REQUIRE(t.entries[0][0].exact.has_value());  // det k-way FT
  CHECK(*t.entries[0][0].exact == Rational(16));
  CHECK(!t.vacuous);
  CHECK(t.tight_at_h3[0][0]);
  CHECK(t.tight_at_h3[2][1]);
  CHECK(!t.tight_at_h3[3][1]);
  CHECK(t.litter_count.to_string() == "16");  // k^d * (d^(h-2)-1)/(d-1)
}

TEST_CASE("height-2 tables are flagged vacuous") {
  BoundTable t = neciporuk_table(3, 2, 5);
  CHECK(t.vacuous);
  for (int row = 0; row < 4; ++row)
    for (int col = 0; col < 2; ++col) CHECK(t.entries[row][col].approx == 0.0);
  CHECK(t.to_markdown().find("vacuous") != std::string::npos);
}

TEST_CASE("entries scale as the stated powers of k") {
  // entry(2k)/entry(k) ~ 2^exponent within 1% for large k, pure formulas.
  struct Case {
    int row, col;
    double exponent;  // of k
    double log_power; // exponent of log2 k
  };
  for (const Case& c : {Case{0, 0, 3, 0}, Case{0, 1, 3, -1}, Case{1, 0, 4, 0},
                        Case{2, 0, 2.5, 0.5}, Case{2, 1, 2.5, 0}, Case{3, 1, 3, 0}}) {
    int k = 64;
    BoundTable small = neciporuk_table(2, 3, k);
    BoundTable big = neciporuk_table(2, 3, 2 * k);
    double ratio = big.entries[c.row][c.col].approx / small.entries[c.row][c.col].approx;
    double want = std::pow(2.0, c.exponent) *
                  std::pow(std::log2(2.0 * k) / std::log2(static_cast<double>(k)), c.log_power);
    CHECK(std::abs(ratio / want - 1.0) < 0.01);
  }
}

TEST_CASE("consistency between compiled programs and the table") {
  for (int k : {2, 4, 8}) {
    ConsistencyReport r = consistency_check(2, 3, k);
    CHECK(r.pass);
    CHECK(r.det_states >= r.det_bound);
    CHECK(r.nondet_states >= r.nondet_bound);
  }
  ConsistencyReport r = consistency_check(2, 3, 4);
  CHECK(r.nondet_states >= 16);
  CHECK(r.det_states >= 2);
}

TEST_CASE("csv layout mirrors the table") {
  BoundTable t = neciporuk_table(2, 3, 4);
  std::string csv = t.to_csv();
  CHECK(csv.find("model,ft,bt") == 0);
  CHECK(csv.find("nondeterministic k-way BP,") != std::string::npos);
}
