#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causorbit/catalog.hpp"
#include "causorbit/table.hpp"

namespace causorbit {

/// Symmetric matrix of Pearson coefficients.  An entry is undefined
/// (std::nullopt) when either variable has zero variance.
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  explicit CorrelationMatrix(VariableCatalog catalog);

  const VariableCatalog& catalog() const { return catalog_; }
  std::size_t size() const { return catalog_.size(); }
  std::optional<double> at(std::size_t i, std::size_t j) const { return r_[i * size() + j]; }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, std::optional<double> r);

 private:
  VariableCatalog catalog_;
  std::vector<std::optional<double>> r_;
};

struct CandidatePair {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  double r = 0;

  friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
};

enum class BinarizeRule { AboveMedian, AboveMean, PositiveDiff };

std::string_view to_string(BinarizeRule rule);
/// Accepts `median`, `mean`, `diff` and the long forms `above-median`,
/// `above-mean`, `positive-diff`.
std::optional<BinarizeRule> parse_binarize_rule(std::string_view text);

/// Per-(period, variable) boolean events; `events[v][t]`.
struct BinaryEventTable {
  VariableCatalog catalog;
  std::vector<YearMonth> periods;
  std::vector<std::vector<bool>> events;

  std::size_t num_periods() const { return periods.size(); }
};

struct ConditioningStats {
  std::optional<double> p_given;      // P(B | A)
  std::optional<double> p_given_not;  // P(B | not A)
  std::size_t n_a = 0;
  std::size_t n_not_a = 0;

  bool defined() const { return p_given && p_given_not; }
};

struct DirectedEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  ConditioningStats stats;
};

struct Orientation {
  std::vector<DirectedEdge> edges;  // sorted by (source, target)
  std::vector<std::string> warnings;
};

struct ScreeningConfig {
  double threshold = 0.7;
  BinarizeRule rule = BinarizeRule::AboveMedian;
  double margin = 0.0;
  bool absolute = false;

  /// Throws ConfigError unless threshold is in (0, 1] and margin >= 0.
  void check() const;
};

/// Sample Pearson correlation.  Undefined when either series is constant.
/// Throws DomainError on length mismatch or fewer than two points.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

CorrelationMatrix correlation_matrix(const TimeSeriesTable& table);

/// Pairs (i < j) with r >= threshold (|r| when `absolute`), sorted by (i, j).
std::vector<CandidatePair> select_pairs(const CorrelationMatrix& m, double threshold = 0.7,
                                        bool absolute = false);

/// Throws DomainError when the table has too few periods for the rule.
BinaryEventTable binarize(const TimeSeriesTable& table, BinarizeRule rule);

/// Empirical P(B|A) and P(B|not A) over all periods of the event table.
ConditioningStats conditioning(const BinaryEventTable& events, std::size_t a, std::size_t b);

/// Tests both directions of every candidate pair independently: a -> b is
/// kept iff P(b|a) - P(b|not a) > margin with both probabilities defined.
Orientation orient(std::span<const CandidatePair> pairs, const BinaryEventTable& events,
                   double margin = 0.0);

}  // namespace causorbit
