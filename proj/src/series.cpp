#include "amalg/series.hpp"

#include <algorithm>

#include "amalg/error.hpp"

namespace amalg {

PoincareSeries closed_form(const std::vector<long long>& num, const std::vector<long long>& den, int n) {
  if (den.empty() || den[0] != 1) throw InputError("closed form denominator must start with 1");
  std::vector<long long> c(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t d = 0; d < c.size(); ++d) {
    long long v = d < num.size() ? num[d] : 0;
    for (std::size_t k = 1; k < den.size() && k <= d; ++k) v -= den[k] * c[d - k];
    c[d] = v;
  }
  PoincareSeries out;
  for (auto v : c) {
    if (v < 0) throw InputError("closed form has a negative coefficient");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

PoincareSeries series_product(const PoincareSeries& p, const PoincareSeries& q) {
  const std::size_t n = std::min(p.size(), q.size());
  PoincareSeries out(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; a + b < n; ++b) out[a + b] += p[a] * q[b];
  return out;
}

PoincareSeries series_shift(const PoincareSeries& p, int s) {
  PoincareSeries out(p.size(), 0);
  for (std::size_t d = 0; d < p.size(); ++d) {
    const long long e = static_cast<long long>(d) + s;
    if (e >= 0 && e < static_cast<long long>(p.size())) out[static_cast<std::size_t>(e)] = p[d];
  }
  return out;
}

PoincareSeries reduced(const PoincareSeries& p) {
  PoincareSeries out = p;
  if (!out.empty()) out[0] = 0;
  return out;
}

PoincareSeries reduced_product(const PoincareSeries& p, const PoincareSeries& q) {
  return series_product(reduced(p), reduced(q));
}

PoincareSeries join(const PoincareSeries& p, const PoincareSeries& q) {
  return series_shift(reduced_product(p, q), 1);
}

PoincareSeries tensor_algebra_series(const PoincareSeries& p) {
  if (!p.empty() && p[0] != 0) throw InputError("tensor algebra series needs a reduced series");
  PoincareSeries d(p.size(), 0);
  if (d.empty()) return d;
  d[0] = 1;
  for (std::size_t n = 1; n < d.size(); ++n)
    for (std::size_t k = 1; k <= n; ++k) d[n] += p[k] * d[n - k];
  return d;
}

std::string series_str(const PoincareSeries& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? " " : "") + std::to_string(p[i]);
  return out;
}

}  // namespace amalg
