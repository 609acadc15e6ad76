#include <algorithm>
#include <cmath>
#include <vector>

#include "causorbit/errors.hpp"
#include "causorbit/oracle.hpp"
#include "causorbit/screening.hpp"
#include "doctest.h"

using namespace causorbit;

namespace {

// Raw-sum route, independent of the centred two-pass implementation.
double pearson_raw_sums(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sx += x[k];
    sy += y[k];
    sxx += x[k] * x[k];
    syy += y[k] * y[k];
    sxy += x[k] * y[k];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

// Contingency counts straight from the definition.
std::pair<double, double> conditional_by_counting(const std::vector<bool>& a, const std::vector<bool>& b) {
  int ab = 0, a_only = 0, nab = 0, na = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t] && b[t]) ++ab;
    if (a[t] && !b[t]) ++a_only;
    if (!a[t] && b[t]) ++nab;
    if (!a[t] && !b[t]) ++na;
  }
  return {double(ab) / (ab + a_only), double(nab) / (nab + na)};
}

BinaryEventTable events_of(std::vector<std::vector<bool>> columns) {
  std::vector<std::string> names;
  for (std::size_t v = 0; v < columns.size(); ++v) names.push_back("e" + std::to_string(v + 1));
  BinaryEventTable t{VariableCatalog(names), {}, std::move(columns)};
  for (std::size_t k = 0; k < t.events.front().size(); ++k) t.periods.push_back({2000, static_cast<int>(k % 12) + 1});
  return t;
}

TimeSeriesTable table_of(std::vector<std::vector<double>> columns) {
  TimeSeriesTable t{oracle::synthetic_catalog(columns.size()), {}, std::move(columns)};
  for (std::size_t k = 0; k < t.columns.front().size(); ++k) {
    t.periods.push_back({2000 + static_cast<int>(k / 12), static_cast<int>(k % 12) + 1});
  }
  return t;
}

}  // namespace

TEST_CASE("pearson analytic cases") {
  CHECK(*pearson(std::vector{1.0, 2.0, 3.0}, std::vector{2.0, 4.0, 6.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*pearson(std::vector{1.0, 2.0, 3.0}, std::vector{3.0, 2.0, 1.0}) == doctest::Approx(-1.0).epsilon(1e-12));

  const std::vector x{1.0, 2.0, 3.0, 4.0};
  const std::vector y{1.0, 3.0, 2.0, 4.0};
  // Centred cross-products sum to 4 over sqrt(5 * 5).
  CHECK(pearson_raw_sums(x, y) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(std::abs(*pearson(x, y) - 0.8) < 1e-9);

  CHECK_FALSE(pearson(std::vector{5.0, 5.0, 5.0}, std::vector{1.0, 2.0, 3.0}));
  CHECK_FALSE(pearson(std::vector{0.1, 0.1, 0.1}, std::vector{1.0, 2.0, 3.0}));
}

TEST_CASE("pearson errors") {
  CHECK_THROWS_AS(pearson(std::vector{1.0, 2.0}, std::vector{1.0, 2.0, 3.0}), DomainError);
  CHECK_THROWS_AS(pearson(std::vector{1.0}, std::vector{1.0}), DomainError);
}

TEST_CASE("pearson is symmetric and affine invariant") {
  oracle::Rng rng(7);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + rng.below(60);
    std::vector<double> x(n), y(n), ax(n), by(n);
    const double a = rng.uniform(0.01, 100), b = rng.uniform(-1e3, 1e3);
    const double c = rng.uniform(0.01, 100), d = rng.uniform(-1e3, 1e3);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = rng.normal();
      y[k] = 0.5 * x[k] + rng.normal();
      ax[k] = a * x[k] + b;
      by[k] = c * y[k] + d;
    }
    const double r = *pearson(x, y);
    CHECK(*pearson(y, x) == doctest::Approx(r).epsilon(1e-12));
    CHECK(std::abs(*pearson(ax, by) - r) < 1e-9);
    CHECK(std::abs(r - pearson_raw_sums(x, y)) < 1e-9);
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("correlation_matrix shape, diagonal and undefined entries") {
  const auto t = table_of({{1, 2, 3, 4}, {1, 3, 2, 4}, {7, 7, 7, 7}, {4, 3, 2, 1}});
  const auto m = correlation_matrix(t);
  REQUIRE(m.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(m.at(i, j) == m.at(j, i));
  }
  CHECK(m.at(0, 0) == 1.0);
  CHECK(m.at(1, 1) == 1.0);
  CHECK(std::abs(*m.at(0, 1) - 0.8) < 1e-9);
  CHECK(*m.at(0, 3) == doctest::Approx(-1.0));
  for (std::size_t k = 0; k < 4; ++k) CHECK_FALSE(m.at(2, k));

  oracle::PlantedModel model = oracle::planted_groups(std::vector<std::size_t>{3, 3, 2, 2, 2, 1, 1}, 3);
  const auto m14 = correlation_matrix(oracle::synth_series(model, 144));
  CHECK(m14.size() == 14);
}

TEST_CASE("select_pairs threshold semantics") {
  CorrelationMatrix m(VariableCatalog({"x1", "x2", "x3"}));
  for (std::size_t i = 0; i < 3; ++i) m.set(i, i, 1.0);
  m.set(0, 1, 0.71);
  m.set(0, 2, 0.69);
  m.set(1, 2, -0.9);

  const auto pairs = select_pairs(m, 0.7);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == CandidatePair{0, 1, 0.71});

  const auto abs_pairs = select_pairs(m, 0.7, true);
  REQUIRE(abs_pairs.size() == 2);
  CHECK(abs_pairs[1].i == 1);
  CHECK(abs_pairs[1].j == 2);

  m.set(0, 1, 0.7);
  REQUIRE(select_pairs(m, 0.7).size() == 1);  // inclusive boundary

  m.set(0, 1, 0.5);
  CHECK(select_pairs(m, 0.7).empty());

  m.set(0, 1, std::nullopt);
  CHECK(select_pairs(m, 0.01, true).size() == 2);

  CHECK_THROWS_AS(select_pairs(m, 0.0), ConfigError);
  CHECK_THROWS_AS(select_pairs(m, 1.5), ConfigError);
  CHECK_NOTHROW(select_pairs(m, 1.0));
}

TEST_CASE("select_pairs is monotone in the threshold") {
  oracle::Rng rng(11);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 2 + rng.below(10);
    CorrelationMatrix m(oracle::synthetic_catalog(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.chance(0.9)) m.set(i, j, rng.uniform(-1, 1));
      }
    }
    const double lo = rng.uniform(0.01, 1.0);
    const double hi = rng.uniform(lo, 1.0);
    for (bool absolute : {false, true}) {
      const auto wide = select_pairs(m, lo, absolute);
      for (const auto& p : select_pairs(m, hi, absolute)) {
        CHECK(std::ranges::find(wide, p) != wide.end());
      }
    }
  }
}

TEST_CASE("binarize rules") {
  SUBCASE("above median, even length") {
    const auto e = binarize(table_of({{10, 20, 30, 40}}), BinarizeRule::AboveMedian);
    CHECK(e.events[0] == std::vector<bool>{false, false, true, true});
  }
  SUBCASE("above median, odd length") {
    const auto e = binarize(table_of({{1, 2, 3}}), BinarizeRule::AboveMedian);
    CHECK(e.events[0] == std::vector<bool>{false, false, true});
  }
  SUBCASE("above mean") {
    const auto e = binarize(table_of({{1, 1, 1, 5}}), BinarizeRule::AboveMean);
    CHECK(e.events[0] == std::vector<bool>{false, false, false, true});
  }
  SUBCASE("positive difference drops the first period") {
    const auto t = table_of({{3, 1, 4}, {1, 2, 3}});
    const auto e = binarize(t, BinarizeRule::PositiveDiff);
    CHECK(e.events[0] == std::vector<bool>{false, true});
    CHECK(e.events[1] == std::vector<bool>{true, true});
    CHECK(e.num_periods() == 2);
    CHECK(e.periods.front() == t.periods[1]);
  }
  SUBCASE("too few periods") {
    CHECK_THROWS_AS(binarize(table_of({{3}}), BinarizeRule::PositiveDiff), DomainError);
  }
  CHECK(parse_binarize_rule("median") == BinarizeRule::AboveMedian);
  CHECK(parse_binarize_rule("positive-diff") == BinarizeRule::PositiveDiff);
  CHECK_FALSE(parse_binarize_rule("quartile"));
}

TEST_CASE("conditioning statistics") {
  const std::vector<bool> a{true, true, true, false, false, false};
  const std::vector<bool> b{true, true, false, true, false, false};
  const auto [given, given_not] = conditional_by_counting(a, b);
  CHECK(given == 2.0 / 3.0);
  CHECK(given_not == 1.0 / 3.0);

  const auto s = conditioning(events_of({a, b}), 0, 1);
  CHECK(*s.p_given == given);
  CHECK(*s.p_given_not == given_not);
  CHECK(s.n_a == 3);
  CHECK(s.n_not_a == 3);

  const auto same = conditioning(events_of({{true, false, true, false}, {true, false, true, false}}), 0, 1);
  CHECK(*same.p_given == 1.0);
  CHECK(*same.p_given_not == 0.0);

  const auto all_true = conditioning(events_of({{true, true, true}, {true, false, true}}), 0, 1);
  CHECK(all_true.n_not_a == 0);
  CHECK_FALSE(all_true.p_given_not);
  CHECK(all_true.p_given);

  CHECK_THROWS_AS(conditioning(events_of({a, b}), 1, 1), DomainError);
}

TEST_CASE("conditioning counts are consistent on random events") {
  oracle::Rng rng(5);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 1 + rng.below(30);
    std::vector<bool> a(n), b(n);
    for (std::size_t t = 0; t < n; ++t) {
      a[t] = rng.chance(0.5);
      b[t] = rng.chance(0.5);
    }
    const auto s = conditioning(events_of({a, b}), 0, 1);
    CHECK(s.n_a + s.n_not_a == n);
    CHECK(s.p_given.has_value() == (s.n_a > 0));
    CHECK(s.p_given_not.has_value() == (s.n_not_a > 0));
    for (const auto& p : {s.p_given, s.p_given_not}) {
      if (p) CHECK((*p >= 0.0 && *p <= 1.0));
    }
  }
}

TEST_CASE("orient tests both directions") {
  const std::vector<bool> a{true, true, true, false, false, false};
  const std::vector<bool> b{true, true, false, true, false, false};
  const auto ev = events_of({a, b, {true, false, false, true, false, false}, {true, true, true, true, true, true}});

  SUBCASE("positive association yields a bidirectional edge") {
    const std::vector<CandidatePair> pairs{{0, 1, 0.9}};
    const auto o = orient(pairs, ev);
    REQUIRE(o.edges.size() == 2);
    CHECK(o.edges[0].source == 0);
    CHECK(o.edges[0].target == 1);
    CHECK(*o.edges[0].stats.p_given - *o.edges[0].stats.p_given_not == doctest::Approx(1.0 / 3.0));
    CHECK(o.edges[1].source == 1);
    CHECK(o.edges[1].target == 0);
    CHECK(*o.edges[1].stats.p_given - *o.edges[1].stats.p_given_not == doctest::Approx(1.0 / 3.0));
    CHECK(o.warnings.empty());
  }
  SUBCASE("margin above the difference removes both") {
    const std::vector<CandidatePair> pairs{{0, 1, 0.9}};
    CHECK(orient(pairs, ev, 0.34).edges.empty());
    CHECK(orient(pairs, ev, 0.33).edges.size() == 2);
  }
  SUBCASE("ties give no edge") {
    const auto [g, gn] = conditional_by_counting(a, ev.events[2]);
    REQUIRE(g == gn);
    const std::vector<CandidatePair> pairs{{0, 2, 0.8}};
    CHECK(orient(pairs, ev).edges.empty());
  }
  SUBCASE("constant events produce warnings, not edges") {
    const std::vector<CandidatePair> pairs{{0, 3, 0.8}};
    const auto o = orient(pairs, ev);
    // e4 -> e1 has no P(e1 | not e4); e1 -> e4 is a defined tie (1 vs 1).
    CHECK(o.edges.empty());
    REQUIRE(o.warnings.size() == 1);
    CHECK(o.warnings[0].find("4 -> 1") != std::string::npos);
  }
  CHECK_THROWS_AS(orient(std::vector<CandidatePair>{}, ev, -0.1), ConfigError);
}

TEST_CASE("orient stays inside the candidate pairs and is symmetric at margin 0") {
  oracle::Rng rng(99);
  for (int round = 0; round < 100; ++round) {
    const std::size_t vars = 2 + rng.below(6);
    const std::size_t periods = 2 + rng.below(30);
    std::vector<std::vector<bool>> cols(vars, std::vector<bool>(periods));
    for (auto& col : cols) {
      for (std::size_t t = 0; t < periods; ++t) col[t] = rng.chance(0.5);
    }
    const auto ev = events_of(cols);
    std::vector<CandidatePair> pairs;
    for (std::size_t i = 0; i < vars; ++i) {
      for (std::size_t j = i + 1; j < vars; ++j) {
        if (rng.chance(0.5)) pairs.push_back({i, j, 0.8});
      }
    }
    const auto o = orient(pairs, ev);
    for (const auto& e : o.edges) {
      const auto lo = std::min(e.source, e.target), hi = std::max(e.source, e.target);
      CHECK(std::ranges::any_of(pairs, [&](const CandidatePair& p) { return p.i == lo && p.j == hi; }));
      // P(B|A) > P(B|not A) iff P(AB) > P(A)P(B), which is symmetric in A and B.
      CHECK(std::ranges::any_of(o.edges, [&](const DirectedEdge& r) {
        return r.source == e.target && r.target == e.source;
      }));
    }
    CHECK(std::ranges::is_sorted(o.edges, {}, [](const DirectedEdge& e) { return std::pair(e.source, e.target); }));
  }
}

TEST_CASE("screening config validation") {
  CHECK_NOTHROW(ScreeningConfig{}.check());
  CHECK_THROWS_AS((ScreeningConfig{1.1}.check()), ConfigError);
  CHECK_THROWS_AS((ScreeningConfig{0.0}.check()), ConfigError);
  CHECK_THROWS_AS((ScreeningConfig{0.7, BinarizeRule::AboveMedian, -1.0}.check()), ConfigError);
}
