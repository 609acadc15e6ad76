#include "causorbit/screening.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "causorbit/errors.hpp"

namespace causorbit {

CorrelationMatrix::CorrelationMatrix(VariableCatalog catalog)
    : catalog_(std::move(catalog)), r_(catalog_.size() * catalog_.size()) {}

void CorrelationMatrix::set(std::size_t i, std::size_t j, std::optional<double> r) {
  r_[i * size() + j] = r;
  r_[j * size() + i] = r;
}

std::string_view to_string(BinarizeRule rule) {
  switch (rule) {
    case BinarizeRule::AboveMedian:
      return "above-median";
    case BinarizeRule::AboveMean:
      return "above-mean";
    case BinarizeRule::PositiveDiff:
      return "positive-diff";
  }
  return "?";
}

std::optional<BinarizeRule> parse_binarize_rule(std::string_view text) {
  if (text == "median" || text == "above-median") return BinarizeRule::AboveMedian;
  if (text == "mean" || text == "above-mean") return BinarizeRule::AboveMean;
  if (text == "diff" || text == "positive-diff") return BinarizeRule::PositiveDiff;
  return std::nullopt;
}

void ScreeningConfig::check() const {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError(fmt::format("threshold must be in (0, 1], got {}", threshold));
  }
  if (!(margin >= 0.0) || !std::isfinite(margin)) {
    throw ConfigError(fmt::format("margin must be >= 0, got {}", margin));
  }
}

namespace {

double mean_of(std::span<const double> x) {
  double sum = 0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

bool is_constant(std::span<const double> x) {
  return std::ranges::all_of(x, [&](double v) { return v == x.front(); });
}

}  // namespace

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DomainError(fmt::format("pearson: length mismatch ({} vs {})", x.size(), y.size()));
  }
  if (x.size() < 2) throw DomainError("pearson: need at least two observations");
  if (is_constant(x) || is_constant(y)) return std::nullopt;

  // Two-pass centred sums.
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix correlation_matrix(const TimeSeriesTable& table) {
  CorrelationMatrix m(table.catalog);
  const std::size_t n = table.num_variables();
  for (std::size_t i = 0; i < n; ++i) {
    const bool varies = table.num_periods() >= 2 && !is_constant(table.column(i));
    m.set(i, i, varies ? std::optional<double>(1.0) : std::nullopt);
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, pearson(table.column(i), table.column(j)));
  }
  return m;
}

std::vector<CandidatePair> select_pairs(const CorrelationMatrix& m, double threshold, bool absolute) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError(fmt::format("threshold must be in (0, 1], got {}", threshold));
  }
  std::vector<CandidatePair> pairs;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const auto r = m.at(i, j);
      if (!r) continue;
      const double score = absolute ? std::abs(*r) : *r;
      if (score >= threshold) pairs.push_back({i, j, *r});
    }
  }
  return pairs;
}

namespace {

double median_of(std::span<const double> x) {
  std::vector<double> sorted(x.begin(), x.end());
  std::ranges::sort(sorted);
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

}  // namespace

BinaryEventTable binarize(const TimeSeriesTable& table, BinarizeRule rule) {
  const std::size_t n = table.num_periods();
  const std::size_t needed = rule == BinarizeRule::PositiveDiff ? 2 : 1;
  if (n < needed) {
    throw DomainError(fmt::format("{} binarization needs at least {} periods, table has {}",
                                  to_string(rule), needed, n));
  }

  BinaryEventTable out{table.catalog, table.periods, {}};
  if (rule == BinarizeRule::PositiveDiff) out.periods.erase(out.periods.begin());

  for (std::size_t v = 0; v < table.num_variables(); ++v) {
    const auto col = table.column(v);
    std::vector<bool> ev;
    switch (rule) {
      case BinarizeRule::AboveMedian:
      case BinarizeRule::AboveMean: {
        const double cut = rule == BinarizeRule::AboveMedian ? median_of(col) : mean_of(col);
        for (double x : col) ev.push_back(x > cut);
        break;
      }
      case BinarizeRule::PositiveDiff:
        for (std::size_t t = 1; t < n; ++t) ev.push_back(col[t] > col[t - 1]);
        break;
    }
    out.events.push_back(std::move(ev));
  }
  return out;
}

ConditioningStats conditioning(const BinaryEventTable& events, std::size_t a, std::size_t b) {
  if (a == b) throw DomainError("conditioning: a and b must differ");
  const auto& ea = events.events.at(a);
  const auto& eb = events.events.at(b);
  std::size_t both = 0, b_without_a = 0;
  ConditioningStats s;
  for (std::size_t t = 0; t < ea.size(); ++t) {
    if (ea[t]) {
      ++s.n_a;
      both += eb[t];
    } else {
      ++s.n_not_a;
      b_without_a += eb[t];
    }
  }
  if (s.n_a > 0) s.p_given = static_cast<double>(both) / static_cast<double>(s.n_a);
  if (s.n_not_a > 0) s.p_given_not = static_cast<double>(b_without_a) / static_cast<double>(s.n_not_a);
  return s;
}

Orientation orient(std::span<const CandidatePair> pairs, const BinaryEventTable& events, double margin) {
  if (!(margin >= 0.0)) throw ConfigError(fmt::format("margin must be >= 0, got {}", margin));
  Orientation out;
  const auto& catalog = events.catalog;
  for (const auto& pair : pairs) {
    for (const auto& [cause, effect] : {std::pair{pair.i, pair.j}, std::pair{pair.j, pair.i}}) {
      const auto stats = conditioning(events, cause, effect);
      if (!stats.defined()) {
        out.warnings.push_back(fmt::format(
            "no orientation for {} -> {}: '{}' is constant after binarization", id_of(cause),
            id_of(effect), catalog.name(cause)));
        continue;
      }
      if (*stats.p_given - *stats.p_given_not > margin) out.edges.push_back({cause, effect, stats});
    }
  }
  std::ranges::sort(out.edges, [](const DirectedEdge& x, const DirectedEdge& y) {
    return std::pair(x.source, x.target) < std::pair(y.source, y.target);
  });
  return out;
}

}  // namespace causorbit
