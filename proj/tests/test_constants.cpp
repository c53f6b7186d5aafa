#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lab/constants.hpp"
#include "lab/rational.hpp"
#include "lab/weight.hpp"
#include "oracles.hpp"

using namespace lab;

namespace {

oracle::Rational power3_rational(const GroupModel& z9, ElementId x) {
  oracle::Rational v = 1;
  for (int k = 0; k < z9.valuation(x); ++k) v /= 3;
  return v;
}

}  // namespace

TEST_CASE("ap_constant: unit weight and frozen Z/9 value") {
  GroupModel z9 = GroupModel::padic(3, 2);
  Weight one(z9, std::vector<double>(9, 1.0));
  for (double p : {1.0, 1.5, 2.0, 3.0, 8.0})
    CHECK(ap_constant(z9, one, p).value == doctest::Approx(1.0).epsilon(1e-12));

  // frozen exact value 427/243 attained at the whole group
  Weight w = power_weight(z9, 1.0);
  const ConstantValue ap2 = ap_constant(z9, w, 2.0);
  CHECK(ap2.value == doctest::Approx(427.0 / 243.0).epsilon(1e-14));
  CHECK(ap2.witness == BaseSetKey{2, 0});
}

TEST_CASE("ap_constant matches the raw-pair oracle") {
  for (const GroupModel& g : {GroupModel::padic(3, 2), GroupModel::integer_window(4)}) {
    for (std::uint64_t seed : {1u, 2u}) {
      Weight w = random_weight(g, {-2.0, 2.0}, seed);
      for (double p : {1.5, 2.0, 3.0})
        CHECK(ap_constant(g, w, p).value ==
              doctest::Approx(oracle::ap_constant(g, w.values(), p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("ap and fw against the exact rational oracle (Z/9, power a=1)") {
  GroupModel z9 = GroupModel::padic(3, 2);
  Weight w = power_weight(z9, 1.0);
  std::vector<oracle::Rational> rw(9);
  for (int x = 0; x < 9; ++x) rw[static_cast<size_t>(x)] = power3_rational(z9, x);

  const oracle::Rational exact_ap2 = oracle::rational_ap2(z9, rw);
  const oracle::Rational exact_fw = oracle::rational_fw(z9, rw);
  CHECK(exact_ap2 == oracle::Rational(427) / 243);
  CHECK(exact_fw == oracle::Rational(223) / 183);

  CHECK(std::abs(ap_constant(z9, w, 2.0).value - 427.0 / 243.0) <= 1e-12 * (427.0 / 243.0));
  CHECK(std::abs(ainfty_fw(z9, w).value - 223.0 / 183.0) <= 1e-12 * (223.0 / 183.0));

  // the library's own rational mode agrees with the independent oracle
  rational::RationalValues lw(rw.begin(), rw.end());
  CHECK(rational::ap2_constant(z9, lw) == exact_ap2);
  CHECK(rational::ainfty_fw(z9, lw) == exact_fw);
}

TEST_CASE("ap duality identity and monotonicity in p") {
  GroupModel z9 = GroupModel::padic(3, 2);
  for (double a : {-2.0, -1.0, 1.0, 2.0}) {
    Weight w = power_weight(z9, a);
    for (double p : {1.5, 2.0, 3.0}) {
      const double pprime = p / (p - 1.0);
      const double lhs = ap_constant(z9, dual_weight(z9, w, p), pprime).value;
      const double rhs = std::pow(ap_constant(z9, w, p).value, pprime - 1.0);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
    double prev = ap_constant(z9, w, 1.0).value;
    for (double p : {1.2, 1.5, 2.0, 3.0, 5.0, 9.0}) {
      const double cur = ap_constant(z9, w, p).value;
      CHECK(cur <= prev * (1 + 1e-12));
      prev = cur;
    }
  }
}

TEST_CASE("ainfty_exp: unit weight, two-point closed form, Jensen bound") {
  GroupModel z9 = GroupModel::padic(3, 2);
  Weight one(z9, std::vector<double>(9, 1.0));
  CHECK(ainfty_exp(z9, one).value == doctest::Approx(1.0).epsilon(1e-14));

  GroupModel z2 = GroupModel::padic(2, 1);
  Weight w2(z2, std::vector<double>{1.0, std::exp(2.0)});
  CHECK(ainfty_exp(z2, w2).value == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));

  // Jensen: the exponential constant never exceeds any A_p constant.
  for (const GroupModel& g : {GroupModel::padic(3, 2), GroupModel::integer_window(4)})
    for (std::uint64_t seed : {4u, 5u, 6u}) {
      Weight w = random_weight(g, {-3.0, 3.0}, seed);
      const double e = ainfty_exp(g, w).value;
      for (double p : {1.3, 2.0, 4.0, 10.0})
        CHECK(e <= ap_constant(g, w, p).value * (1 + 1e-12));
    }
}

TEST_CASE("ainfty_fw: unit weight, lower bound, frozen Z/9 value") {
  GroupModel z9 = GroupModel::padic(3, 2);
  Weight one(z9, std::vector<double>(9, 1.0));
  CHECK(ainfty_fw(z9, one).value == doctest::Approx(1.0).epsilon(1e-14));

  for (std::uint64_t seed : {7u, 8u}) {
    Weight w = random_weight(z9, {-3.0, 3.0}, seed);
    CHECK(ainfty_fw(z9, w).value >= 1.0 - 1e-12);
  }
  CHECK(ainfty_fw(z9, power_weight(z9, 1.0)).value == doctest::Approx(223.0 / 183.0).epsilon(1e-14));
}

TEST_CASE("fw never exceeds the A_1 constant") {
  // Provable at constant 1: M(w chi_U) <= Mw <= [w]_{A_1} w pointwise, so the
  // Fujii-Wilson integral is at most [w]_{A_1} w(U).
  for (const GroupModel& g : {GroupModel::padic(3, 2), GroupModel::padic(3, 3),
                              GroupModel::integer_window(8)}) {
    for (double a : {-2.0, -1.0, 1.0, 2.0}) {
      Weight w = power_weight(g, a);
      CHECK(ainfty_fw(g, w).value <= ap_constant(g, w, 1.0).value * (1 + 1e-12));
    }
    for (std::uint64_t seed : {14u, 15u, 16u}) {
      Weight w = random_weight(g, {-3.0, 3.0}, seed);
      CHECK(ainfty_fw(g, w).value <= ap_constant(g, w, 1.0).value * (1 + 1e-12));
    }
  }
}

TEST_CASE("fw vs ap: holds on ultrametric power weights, fails in general") {
  // On the p-adic models the shipped power family keeps the Fujii-Wilson
  // constant below every tested A_p constant.
  for (const GroupModel& g : {GroupModel::padic(3, 2), GroupModel::padic(3, 3)}) {
    for (double a : {-2.0, -1.0, 1.0, 2.0}) {
      Weight w = power_weight(g, a);
      const double fw = ainfty_fw(g, w).value;
      for (double p : {1.5, 2.0, 3.0}) CHECK(fw <= ap_constant(g, w, p).value * (1 + 1e-9));
    }
  }
  // There is no constant-1 comparison in general: the overlapping intervals
  // of the window model push the Fujii-Wilson constant of the decaying
  // weight (1+|k|)^(-1) above its A_2 constant. Frozen counterexample.
  GroupModel win = GroupModel::integer_window(8);
  Weight w = power_weight(win, -1.0);
  const double fw = ainfty_fw(win, w).value;
  CHECK(fw > ap_constant(win, w, 2.0).value);
  CHECK(fw > ap_constant(win, w, 3.0).value);
  CHECK(fw <= ap_constant(win, w, 1.5).value);
}

TEST_CASE("scaling invariance of all constants") {
  GroupModel z9 = GroupModel::padic(3, 2);
  Weight w = random_weight(z9, {-2.0, 2.0}, 12);
  std::vector<double> scaled(w.values());
  for (auto& v : scaled) v *= 37.5;
  Weight sw(z9, std::move(scaled));
  for (double p : {1.0, 1.7, 2.0})
    CHECK(ap_constant(z9, sw, p).value ==
          doctest::Approx(ap_constant(z9, w, p).value).epsilon(1e-12));
  CHECK(ainfty_exp(z9, sw).value == doctest::Approx(ainfty_exp(z9, w).value).epsilon(1e-12));
  CHECK(ainfty_fw(z9, sw).value == doctest::Approx(ainfty_fw(z9, w).value).epsilon(1e-12));
}

TEST_CASE("rhi_exponent closed form and monotonicity") {
  CHECK(rhi_exponent(1.0, 1.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(rhi_exponent(2.0, 1.0) == doctest::Approx(1.0 + 1.0 / 4095.0).epsilon(1e-15));
  double prev = rhi_exponent(2.0, 1.0);
  for (double fw : {1.5, 2.0, 4.0}) {
    const double cur = rhi_exponent(2.0, fw);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(rhi_exponent(3.0, 2.0) < rhi_exponent(2.0, 2.0));
}

TEST_CASE("open_epsilon closed form") {
  CHECK(open_epsilon(2.0, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(open_epsilon(2.0, 2.0, 1.0) == doctest::Approx(1.0 / 4096.0).epsilon(1e-15));
  for (double p : {1.2, 2.0, 6.0})
    for (double d : {1.0, 2.0, 3.0})
      for (double fw : {1.0, 1.7, 5.0}) {
        const double eps = open_epsilon(p, d, fw);
        CHECK(eps < p - 1.0);
        CHECK(eps * 4.0 * std::pow(d, 10.0) * fw / (p - 1.0) == doctest::Approx(1.0).epsilon(1e-12));
      }
}

TEST_CASE("buckley_explicit_constant: value, monotonicity, grid boundedness") {
  CHECK(buckley_explicit_constant(2.0, 1.0) == doctest::Approx(8.0).epsilon(1e-15));
  for (double p : {1.5, 2.0, 4.0})
    CHECK(buckley_explicit_constant(p, 2.0) < buckley_explicit_constant(p, 3.0));
  // numeric sweep over p in [1.1, 16]: finite and bounded by the p = 1.1 value
  for (double d : {1.0, 2.0, 3.0}) {
    const double cap = buckley_explicit_constant(1.1, d);
    for (double p = 1.1; p <= 16.0; p += 0.1) {
      const double c = buckley_explicit_constant(p, d);
      CHECK(std::isfinite(c));
      CHECK(c <= cap * (1 + 1e-12));
    }
  }
}
