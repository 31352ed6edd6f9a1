#include "treeval/bounds.hpp"

#include <cmath>
#include <sstream>

#include "treeval/compile.hpp"

namespace treeval {

BigInt count_programs(const BoundModel& model, long long s, long long v, int k) {
  if (s < 1 || v < 1) throw std::invalid_argument("count_programs: s, v >= 1 required");
  long long r = model.output_range(k);
  bool nondet =
      model.machine == MachineModel::NondetKway || model.machine == MachineModel::NondetBinary;
  int ways = model.machine == MachineModel::DetBinary || model.machine == MachineModel::NondetBinary
                 ? 2
                 : k;
  unsigned long long sk = static_cast<unsigned long long>(s) * ways;
  BigInt n = BigInt::pow(BigInt(v), static_cast<unsigned long long>(s));
  if (!nondet) {
    n = n * BigInt::pow(BigInt(s + r), sk);
  } else {
    n = n * BigInt::pow(BigInt(r + 1), sk);
    n = n * BigInt::pow2(static_cast<unsigned long long>(s) * sk);
  }
  return n;
}

long long min_states_for_restrictions(const BoundModel& model, long long v, int k,
                                      const BigInt& required) {
  if (required <= BigInt(1)) return 1;
  long long hi = 1;
  while (count_programs(model, hi, v, k) < required) {
    hi *= 2;
    if (hi > (1ll << 22)) throw std::runtime_error("min_states_for_restrictions: runaway search");
  }
  long long lo = hi / 2;  // count(lo) < required or lo = 0
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (count_programs(model, mid, v, k) >= required)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

std::optional<long long> exact_sqrt(long long x) {
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(x)));
  for (long long c = std::max(0ll, r - 2); c <= r + 2; ++c)
    if (c * c == x) return c;
  return std::nullopt;
}

std::optional<long long> exact_log2(int k) {
  long long l = 0;
  long long p = 1;
  while (p < k) {
    p *= 2;
    ++l;
  }
  if (p == k) return l;
  return std::nullopt;
}

// k^(e/2) exactly, when possible.
std::optional<Rational> exact_half_power(int k, long long e_num) {
  if (e_num % 2 == 0) return Rational(BigInt::pow(BigInt(k), e_num / 2), BigInt(1));
  auto root = exact_sqrt(k);
  if (!root) return std::nullopt;
  return Rational(BigInt::pow(BigInt(*root), e_num), BigInt(1));
}

BoundEntry make_entry(const Rational& coefficient, int k, long long half_exponent,
                      int log_direction, bool sqrt_log, const std::string& formula) {
  // Entry = coefficient * k^(half_exponent/2) * (log2 k)^(log_direction) or
  // with sqrt(log2 k) when sqrt_log is set.
  BoundEntry e;
  e.formula = formula;
  double logk = std::log2(static_cast<double>(k));
  e.approx = coefficient.to_double() *
             std::pow(static_cast<double>(k), static_cast<double>(half_exponent) / 2.0);
  if (log_direction < 0) e.approx /= logk;
  if (sqrt_log) e.approx *= std::sqrt(logk);
  auto power = exact_half_power(k, half_exponent);
  if (!power) return e;
  Rational v = coefficient * *power;
  if (log_direction == 0 && !sqrt_log) {
    e.exact = v;
    return e;
  }
  auto l2 = exact_log2(k);
  if (!l2) return e;
  if (sqrt_log) {
    auto root = exact_sqrt(*l2);
    if (!root) return e;
    e.exact = v * Rational(*root);
    return e;
  }
  e.exact = v / Rational(*l2);
  return e;
}

}  // namespace

std::string BoundEntry::value_string() const {
  if (exact) return exact->to_string();
  std::ostringstream out;
  out.precision(6);
  out << approx;
  return out.str();
}

BoundTable neciporuk_table(int d, int h, int k) {
  if (d < 2 || h < 2 || k < 2) throw std::invalid_argument("neciporuk_table: d,h,k >= 2");
  BoundTable t;
  t.d = d;
  t.h = h;
  t.k = k;
  long long tree_coef = TreeShape::pow_ll(d, h - 2) - 1;  // d^(h-2) - 1
  t.vacuous = tree_coef == 0;
  t.litter_count =
      BigInt::pow(BigInt(k), static_cast<unsigned long long>(d)) * BigInt(tree_coef) / BigInt(d - 1);

  Rational det_k_coef(tree_coef, 4ll * (d - 1) * (d - 1));
  Rational det_k_bt_coef(tree_coef, 3ll * (d - 1) * (d - 1));
  Rational det_bin_coef(tree_coef, 5ll * (d - 1) * (d - 1));
  Rational det_bin_bt_coef(tree_coef, 4ll * d * (d - 1));
  Rational nondet_coef(tree_coef, 2ll * d - 2);

  auto name = [&](const std::string& c, const std::string& power, const std::string& extra) {
    return c + " * k^" + power + extra;
  };
  t.entries[0][0] = make_entry(det_k_coef, k, 2 * (2 * d - 1), 0, false,
                               name(det_k_coef.to_string(), std::to_string(2 * d - 1), ""));
  t.entries[0][1] = make_entry(det_k_bt_coef, k, 2 * (2 * d - 1), -1, false,
                               name(det_k_bt_coef.to_string(), std::to_string(2 * d - 1), " / log2 k"));
  t.entries[1][0] = make_entry(det_bin_coef, k, 4ll * d, 0, false,
                               name(det_bin_coef.to_string(), std::to_string(2 * d), ""));
  t.entries[1][1] = make_entry(det_bin_bt_coef, k, 4ll * d, -1, false,
                               name(det_bin_bt_coef.to_string(), std::to_string(2 * d), " / log2 k"));
  t.entries[2][0] = make_entry(nondet_coef, k, 3 * d - 1, 0, true,
                               name(nondet_coef.to_string(), "(3d-1)/2", " * sqrt(log2 k)"));
  t.entries[2][1] = make_entry(nondet_coef, k, 3 * d - 1, 0, false,
                               name(nondet_coef.to_string(), "(3d-1)/2", ""));
  t.entries[3][0] = make_entry(nondet_coef, k, 3ll * d, 0, true,
                               name(nondet_coef.to_string(), "3d/2", " * sqrt(log2 k)"));
  t.entries[3][1] = make_entry(nondet_coef, k, 3ll * d, 0, false,
                               name(nondet_coef.to_string(), "3d/2", ""));
  t.tight_at_h3[0][0] = true;
  t.tight_at_h3[0][1] = true;
  t.tight_at_h3[2][1] = true;
  return t;
}

namespace {

const char* kModelNames[4] = {"deterministic k-way BP", "deterministic binary BP",
                              "nondeterministic k-way BP", "nondeterministic binary BP"};

}  // namespace

std::string BoundTable::to_markdown() const {
  std::ostringstream out;
  out << "# State lower bounds (d=" << d << ", h=" << h << ", k=" << k << ")\n\n";
  if (vacuous)
    out << "Height 2 trees have no internal non-root nodes, so the litter method is vacuous;"
           " every entry below is 0.\n\n";
  out << "| Model | FT lower bound | BT lower bound |\n|---|---|---|\n";
  for (int row = 0; row < 4; ++row) {
    out << "| " << kModelNames[row];
    for (int col = 0; col < 2; ++col) {
      out << " | " << entries[row][col].value_string();
      if (tight_at_h3[row][col]) out << " (tight at h=3)";
    }
    out << " |\n";
  }
  out << "\nlitters: " << litter_count.to_string() << "\n";
  return out.str();
}

std::string BoundTable::to_csv() const {
  std::ostringstream out;
  out << "model,ft,bt\n";
  for (int row = 0; row < 4; ++row)
    out << kModelNames[row] << "," << entries[row][0].value_string() << ","
        << entries[row][1].value_string() << "\n";
  return out.str();
}

ConsistencyReport consistency_check(int d, int h, int k) {
  BoundTable table = neciporuk_table(d, h, k);
  ConsistencyReport report;
  report.det_states = compile_black_det_default(d, h, k, ProblemKind::Function).bp.size();
  report.nondet_states = compile_fractional_nondet_default(d, h, k).bp.size();
  report.det_bound = table.entries[0][0].approx;
  report.nondet_bound = table.entries[2][1].approx;
  bool det_ok = table.entries[0][0].exact
                    ? Rational(report.det_states) >= *table.entries[0][0].exact
                    : static_cast<double>(report.det_states) >= report.det_bound;
  bool nondet_ok = table.entries[2][1].exact
                       ? Rational(report.nondet_states) >= *table.entries[2][1].exact
                       : static_cast<double>(report.nondet_states) >= report.nondet_bound;
  report.pass = det_ok && nondet_ok;
  if (!report.pass)
    throw ConsistencyViolation("compiled state counts fall below the counting lower bound at d=" +
                               std::to_string(d) + " h=" + std::to_string(h) +
                               " k=" + std::to_string(k));
  return report;
}

}  // namespace treeval
