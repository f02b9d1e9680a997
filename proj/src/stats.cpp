#include "lebkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "lebkit/strings.hpp"

namespace lebkit {

namespace {

void require_nonempty(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw Error("Mann-Whitney U needs two non-empty samples");
}

std::vector<double> pooled(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> all(a);
  all.insert(all.end(), b.begin(), b.end());
  return all;
}

double u_from_ranks(const std::vector<double>& ranks, std::size_t na) {
  double r = std::accumulate(ranks.begin(), ranks.begin() + na, 0.0);
  return r - static_cast<double>(na) * (na + 1) / 2.0;
}

}  // namespace

std::vector<double> midranks(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double mann_whitney_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
  require_nonempty(a, b);
  const std::size_t n = a.size() + b.size();
  if (n > kExactMaxPooled) throw Error("pooled sample too large for the exact test");
  auto ranks = midranks(pooled(a, b));
  // Doubled midranks are integers; count subsets of size m by their sum.
  std::vector<std::int64_t> r2(n);
  for (std::size_t i = 0; i < n; ++i) r2[i] = std::llround(ranks[i] * 2.0);

  const bool first_small = a.size() <= b.size();
  const std::size_t m = first_small ? a.size() : b.size();
  const std::size_t offset = first_small ? 0 : a.size();
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < m; ++i) observed += r2[offset + i];

  const std::int64_t max_sum = 2 * static_cast<std::int64_t>(n) * static_cast<std::int64_t>(m);
  // ways[k][s]: subsets of size k with doubled rank sum s. Counts are at most
  // C(400, 8) < 2^64 under the caps.
  std::vector<std::vector<long double>> ways(
      m + 1, std::vector<long double>(static_cast<std::size_t>(max_sum) + 1, 0.0L));
  ways[0][0] = 1.0L;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = std::min(m, i + 1); k >= 1; --k) {
      auto& dst = ways[k];
      const auto& src = ways[k - 1];
      for (std::int64_t s = max_sum; s >= r2[i]; --s) {
        if (src[s - r2[i]] != 0.0L) dst[s] += src[s - r2[i]];
      }
    }
  }
  // |2U - m(n-m)| in doubled units: |S - m(m+1) - m(n-m)| = |S - m(n+1)|.
  const std::int64_t center = static_cast<std::int64_t>(m) * static_cast<std::int64_t>(n + 1);
  const std::int64_t dev = std::llabs(observed - center);
  long double extreme = 0.0L;
  long double total = 0.0L;
  for (std::int64_t s = 0; s <= max_sum; ++s) {
    long double w = ways[m][s];
    if (w == 0.0L) continue;
    total += w;
    if (std::llabs(s - center) >= dev) extreme += w;
  }
  return std::min(1.0, static_cast<double>(extreme / total));
}

double mann_whitney_normal_p(const std::vector<double>& a, const std::vector<double>& b) {
  require_nonempty(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;
  auto all = pooled(a, b);
  auto ranks = midranks(all);
  double u = u_from_ranks(ranks, a.size());

  std::sort(all.begin(), all.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  double var = na * nb / 12.0 * ((n + 1.0) - (n > 1 ? tie_term / (n * (n - 1.0)) : 0.0));
  if (!(var > 0.0)) return 1.0;
  double dist = std::fabs(u - na * nb / 2.0) - 0.5;
  if (dist <= 0.0) return 1.0;
  double z = dist / std::sqrt(var);
  return std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
}

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
  require_nonempty(a, b);
  MannWhitneyResult r;
  r.u = u_from_ranks(midranks(pooled(a, b)), a.size());
  r.exact = std::min(a.size(), b.size()) <= kExactMaxSmall &&
            a.size() + b.size() <= kExactMaxPooled;
  r.p = r.exact ? mann_whitney_exact_p(a, b) : mann_whitney_normal_p(a, b);
  return r;
}

}  // namespace lebkit
