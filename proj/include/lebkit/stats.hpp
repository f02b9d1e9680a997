#pragma once

#include <cstddef>
#include <vector>

namespace lebkit {

struct MannWhitneyResult {
  double u = 0.0;  // statistic for the first sample
  double p = 1.0;  // two-sided
  bool exact = false;
};

// Two-sided Mann-Whitney U with midranks for ties. When the smaller sample
// has at most kExactMaxSmall values (and the pooled sample at most
// kExactMaxPooled) p comes from the exact permutation distribution of the
// rank sum; otherwise from the normal approximation with tie-corrected
// variance and continuity correction. Throws Error on an empty sample.
MannWhitneyResult mann_whitney_u(const std::vector<double>& a,
                                 const std::vector<double>& b);

inline constexpr std::size_t kExactMaxSmall = 8;
inline constexpr std::size_t kExactMaxPooled = 400;

// Exact permutation p regardless of size (subject to the pooled cap).
double mann_whitney_exact_p(const std::vector<double>& a,
                            const std::vector<double>& b);
double mann_whitney_normal_p(const std::vector<double>& a,
                             const std::vector<double>& b);

// Midranks (1-based) of `values`, ties averaged.
std::vector<double> midranks(const std::vector<double>& values);

}  // namespace lebkit
