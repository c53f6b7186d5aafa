#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lab/constants.hpp"
#include "lab/maximal.hpp"
#include "lab/weight.hpp"
#include "oracles.hpp"

using namespace lab;

TEST_CASE("maximal: constants are fixed points") {
  for (const GroupModel& g : {GroupModel::padic(3, 2), GroupModel::integer_window(4)}) {
    GroupFunction f(g, std::vector<double>(static_cast<size_t>(g.size()), 2.5));
    GroupFunction mf = maximal(g, f);
    for (int x = 0; x < g.size(); ++x) CHECK(mf(x) == doctest::Approx(2.5).epsilon(1e-15));
  }
}

TEST_CASE("maximal: Z/9 spike frozen values") {
  GroupModel z9 = GroupModel::padic(3, 2);
  GroupFunction f = GroupFunction::indicator(z9, {0});
  GroupFunction mf = maximal(z9, f);
  CHECK(mf(0) == 1.0);
  CHECK(mf(3) == doctest::Approx(1.0 / 3.0));
  CHECK(mf(6) == doctest::Approx(1.0 / 3.0));
  for (ElementId x : {1, 2, 4, 5, 7, 8}) CHECK(mf(x) == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("maximal: window spike against the brute-force oracle") {
  GroupModel win = GroupModel::integer_window(4);
  GroupFunction f = GroupFunction::indicator(win, {0});
  GroupFunction mf = maximal(win, f);
  const std::vector<double> ref = oracle::maximal(win, f.values());
  for (int x = 0; x < win.size(); ++x)
    CHECK(mf(x) == doctest::Approx(ref[static_cast<size_t>(x)]).epsilon(1e-12));
  // frozen: nearest intervals centered between the spike and the point
  CHECK(mf(win.element_of(1)) == doctest::Approx(1.0 / 3.0));
  CHECK(mf(win.element_of(2)) == doctest::Approx(1.0 / 3.0));
  CHECK(mf(win.element_of(4)) == doctest::Approx(1.0 / 5.0));
  CHECK(mf(win.element_of(16)) == doctest::Approx(1.0 / 17.0));
}

TEST_CASE("maximal agrees with the oracle on every structure") {
  const GroupModel models[] = {GroupModel::padic(2, 3), GroupModel::padic(5, 2),
                               GroupModel::integer_window(8),
                               GroupModel::from_family("z6", std::vector<double>(6, 1.0),
                                                       {{0}, {0, 3}, {0, 1, 2, 3, 4, 5}},
                                                       std::vector<int>{1, 2, 2})};
  for (const GroupModel& g : models) {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      GroupFunction f = random_function(g, seed);
      GroupFunction mf = maximal(g, f);
      const std::vector<double> ref = oracle::maximal(g, f.values());
      for (int x = 0; x < g.size(); ++x)
        CHECK(mf(x) == doctest::Approx(ref[static_cast<size_t>(x)]).epsilon(1e-12));
    }
  }
  // non-counting measure as well
  std::vector<double> masses(9);
  GroupModel haar = GroupModel::padic(3, 2);
  for (int x = 0; x < 9; ++x) masses[static_cast<size_t>(x)] = 1.0 + haar.valuation(x);
  GroupModel z9m = GroupModel::padic(3, 2, masses);
  GroupFunction f = random_function(z9m, 5);
  GroupFunction mf = maximal(z9m, f);
  const std::vector<double> ref = oracle::maximal(z9m, f.values());
  for (int x = 0; x < 9; ++x)
    CHECK(mf(x) == doctest::Approx(ref[static_cast<size_t>(x)]).epsilon(1e-12));
}

TEST_CASE("maximal_with_witness: values match and ties break to smallest key") {
  GroupModel z9 = GroupModel::padic(3, 2);
  GroupFunction f = GroupFunction::indicator(z9, {0});
  const auto witnesses = maximal_with_witness(z9, f);
  GroupFunction mf = maximal(z9, f);
  for (int x = 0; x < 9; ++x)
    CHECK(witnesses[static_cast<size_t>(x)].value == doctest::Approx(mf(x)).epsilon(1e-12));
  CHECK(witnesses[0].set == BaseSetKey{0, 0});  // the singleton {0} wins at x = 0

  // constant function: every set ties, the smallest (index, center) wins
  GroupFunction c(z9, std::vector<double>(9, 1.0));
  const auto tied = maximal_with_witness(z9, c);
  for (int x = 0; x < 9; ++x) CHECK(tied[static_cast<size_t>(x)].set == BaseSetKey{0, x});
}

TEST_CASE("truncated_maximal: bottom is |f|, top is M, monotone in K") {
  GroupModel win = GroupModel::integer_window(4);
  GroupFunction f = random_function(win, 21);
  GroupFunction bottom = truncated_maximal(win, f, 0);
  for (int x = 0; x < win.size(); ++x) CHECK(bottom(x) == doctest::Approx(f(x)).epsilon(1e-15));

  GroupFunction top = truncated_maximal(win, f, win.index_max());
  GroupFunction mf = maximal(win, f);
  for (int x = 0; x < win.size(); ++x) CHECK(top(x) == doctest::Approx(mf(x)).epsilon(1e-15));

  GroupFunction prev = bottom;
  for (int k = win.index_min() + 1; k <= win.index_max(); ++k) {
    GroupFunction cur = truncated_maximal(win, f, k);
    for (int x = 0; x < win.size(); ++x) CHECK(cur(x) >= prev(x) - 1e-15);
    prev = cur;
  }
  CHECK_THROWS_AS(truncated_maximal(win, f, 99), std::invalid_argument);
}

TEST_CASE("truncated_maximal: window spike frozen pattern") {
  GroupModel win = GroupModel::integer_window(4);
  GroupFunction f = GroupFunction::indicator(win, {0});
  GroupFunction m1 = truncated_maximal(win, f, 1);
  CHECK(m1(win.element_of(0)) == 1.0);
  CHECK(m1(win.element_of(1)) == doctest::Approx(1.0 / 3.0));
  CHECK(m1(win.element_of(-1)) == doctest::Approx(1.0 / 3.0));
  CHECK(m1(win.element_of(2)) == doctest::Approx(1.0 / 3.0));
  CHECK(m1(win.element_of(3)) == 0.0);
  CHECK(m1(win.element_of(-5)) == 0.0);
}

TEST_CASE("level_set: strict inequality and domain restriction") {
  GroupModel z9 = GroupModel::padic(3, 2);
  GroupFunction g(z9, std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9});
  const ElementSet all = z9.unit_set(2);
  CHECK(level_set(z9, g, 9.0, all).empty());
  CHECK(level_set(z9, g, 0.5, all).size() == 9);
  CHECK(level_set(z9, g, 4.0, all) == (ElementSet{4, 5, 6, 7, 8}));  // g(3) = 4 excluded
  CHECK(level_set(z9, g, 4.0, {0, 1, 2, 3, 4}) == ElementSet{4});
}

TEST_CASE("local_maximal: identity weight and domination by w") {
  GroupModel z9 = GroupModel::padic(3, 2);
  const BaseSet u = z9.base_set(0, 1);
  Weight one(z9, std::vector<double>(9, 1.0));
  GroupFunction m = local_maximal(z9, one, u);
  for (ElementId x : u.points) CHECK(m(x) == 1.0);
  CHECK(m(1) == 0.0);  // off U-hat

  // pointwise domination w <= M_U w on U via singletons
  Weight w = random_weight(z9, {-2.0, 2.0}, 33);
  GroupFunction mw = local_maximal(z9, w, u);
  for (ElementId x : u.points) CHECK(mw(x) >= w(x) - 1e-15);
}

TEST_CASE("local_maximal: frozen power-weight values on the coset") {
  GroupModel z9 = GroupModel::padic(3, 2);
  Weight w = power_weight(z9, 1.0);
  GroupFunction m = local_maximal(z9, w, z9.base_set(0, 1));
  CHECK(m(0) == doctest::Approx(7.0 / 27.0));
  CHECK(m(3) == doctest::Approx(1.0 / 3.0));
  CHECK(m(6) == doctest::Approx(1.0 / 3.0));
  for (ElementId x : {1, 2, 4, 5, 7, 8}) CHECK(m(x) == 0.0);
}

TEST_CASE("sublinearity and homogeneity of M") {
  for (const GroupModel& g : {GroupModel::padic(3, 2), GroupModel::integer_window(4)}) {
    GroupFunction f = random_function(g, 44);
    GroupFunction h = random_function(g, 45);
    std::vector<double> sum(f.values());
    for (int x = 0; x < g.size(); ++x) sum[static_cast<size_t>(x)] += h(x);
    GroupFunction mf = maximal(g, f), mh = maximal(g, h),
                  msum = maximal(g, GroupFunction(g, std::move(sum)));
    for (int x = 0; x < g.size(); ++x) CHECK(msum(x) <= mf(x) + mh(x) + 1e-12);

    std::vector<double> scaled(f.values());
    for (auto& v : scaled) v *= 7.5;
    GroupFunction mscaled = maximal(g, GroupFunction(g, std::move(scaled)));
    for (int x = 0; x < g.size(); ++x)
      CHECK(mscaled(x) == doctest::Approx(7.5 * mf(x)).epsilon(1e-12));
  }
}

TEST_CASE("M_U w is dominated by M(w chi_hat) on U-hat") {
  for (const GroupModel& g : {GroupModel::padic(3, 3), GroupModel::integer_window(4)}) {
    Weight w = random_weight(g, {-2.0, 2.0}, 55);
    for (const BaseSetKey& key : g.distinct_base_sets()) {
      const BaseSet u = g.base_set(key.center, key.index);
      const ElementSet h = hat(g, u);
      GroupFunction mu = local_maximal(g, w, u);
      std::vector<double> wh(static_cast<size_t>(g.size()), 0.0);
      for (ElementId x : h) wh[static_cast<size_t>(x)] = w(x);
      GroupFunction mg = maximal(g, GroupFunction(g, std::move(wh)));
      for (ElementId x : h) CHECK(mu(x) <= mg(x) + 1e-12);
    }
  }
}

TEST_CASE("A_1 characterization: max Mw/w equals the A_1 constant") {
  for (const GroupModel& g : {GroupModel::padic(3, 2), GroupModel::integer_window(8)}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      Weight w = random_weight(g, {-3.0, 3.0}, seed);
      GroupFunction mw = maximal(g, GroupFunction(g, w.values()));
      double lhs = 0;
      for (int x = 0; x < g.size(); ++x) lhs = std::max(lhs, mw(x) / w(x));
      CHECK(lhs == doctest::Approx(ap_constant(g, w, 1.0).value).epsilon(1e-9));
    }
  }
}

TEST_CASE("truncation inclusion {Mf > 2t} inside {Mf_t > t}") {
  for (const GroupModel& g : {GroupModel::padic(3, 2), GroupModel::integer_window(4)}) {
    GroupFunction f = random_function(g, 66);
    GroupFunction mf = maximal(g, f);
    for (double t : {0.05, 0.2, 0.35, 0.5, 0.8}) {
      std::vector<double> ft(static_cast<size_t>(g.size()), 0.0);
      for (int x = 0; x < g.size(); ++x)
        if (f(x) > t) ft[static_cast<size_t>(x)] = f(x);
      GroupFunction mft = maximal(g, GroupFunction(g, std::move(ft)));
      for (int x = 0; x < g.size(); ++x)
        if (mf(x) > 2 * t) CHECK(mft(x) > t);
    }
  }
}
