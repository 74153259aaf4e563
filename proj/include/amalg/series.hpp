#pragma once

// Truncated Poincare series: dims[d] is the dimension in degree d.

#include <cstddef>
#include <string>
#include <vector>

namespace amalg {

using PoincareSeries = std::vector<std::size_t>;

/// Coefficients of num/den through degree n; den[0] must be 1 and the
/// quotient must have nonnegative coefficients.
PoincareSeries closed_form(const std::vector<long long>& num, const std::vector<long long>& den, int n);

PoincareSeries series_product(const PoincareSeries& p, const PoincareSeries& q);
/// Multiplication by t^s, truncated to the length of p.
PoincareSeries series_shift(const PoincareSeries& p, int s);
/// Series with degree 0 removed.
PoincareSeries reduced(const PoincareSeries& p);
/// Reduced series of the smash product: P~ * Q~.
PoincareSeries reduced_product(const PoincareSeries& p, const PoincareSeries& q);
/// Reduced series of the join: t * P~ * Q~.
PoincareSeries join(const PoincareSeries& p, const PoincareSeries& q);
/// 1 / (1 - P~) by D_n = sum_k P~_k D_{n-k}.  Throws InputError unless p[0] == 0.
PoincareSeries tensor_algebra_series(const PoincareSeries& p);

std::string series_str(const PoincareSeries& p);

}  // namespace amalg
