#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "amalg/amalgam.hpp"
#include "amalg/integral.hpp"
#include "amalg/series.hpp"

namespace amalg {

/// The square H(SO3) -> H(SO3 x SO3), H(SO3) -> H(S1 x SO3) of Pontryagin
/// rings, with the diagonal on the left and the second factor on the right.
/// Characteristic 0 and odd: exterior algebras on degree-3 classes;
/// characteristic 2: d^4 = 0 with |d| = 1.
template <class F>
AmalgamDiagram<F> pontryagin_diagram(const F& field, int max_degree);

/// Every generator of the preset algebras is primitive.
template <class F>
HopfData<F> pontryagin_hopf(const PresentedAlgebra<F>& a) {
  return HopfData<F>::primitive(a);
}

PoincareSeries circle_series(int max_degree);
/// Homology of SO(3) over a field of the given characteristic.
PoincareSeries so3_series(unsigned characteristic, int max_degree);

struct DecompositionReport {
  bool ok = true;
  int failure_degree = -1;
  PoincareSeries amalgam;
  PoincareSeries product;  ///< S1 * SO3^2 * T(reduced suspension of SO3)
};

template <class F>
DecompositionReport product_decomposition_check(const F& field, int max_degree);

/// Integral cohomology rings around B(SO3 x SO3) <- B(SO3) -> B(S1 x SO3).
struct ClassifyingPresets {
  std::shared_ptr<const GCRing> so3;      ///< Z[V1, V2]/(2 V1), |V1| = 3, |V2| = 4
  std::shared_ptr<const GCRing> so3_sq;   ///< Z[X1, X2, Y1, Y2, Z]/(2X1, 2Y1, 2Z, Z^2)
  std::shared_ptr<const GCRing> s1_so3;   ///< Z[T, V1, V2]/(2 V1)
  std::shared_ptr<const GCRing> circle;   ///< Z[T], |T| = 2
  std::shared_ptr<const GCRing> kernel;   ///< Z[T, X1, X2, Y1, Y2, Z]/(T(X1 - Y1), T(X2 - Y2), TZ, 2X1, 2Y1, 2Z, Z^2)
  ZRingMap delta;                         ///< X_i, Y_i -> V_i, Z -> 0
  ZRingMap j;                             ///< T -> 0, V_i -> V_i
  /// Generator of `kernel` -> (element of so3_sq, element of s1_so3).
  std::vector<std::pair<ZPoly, ZPoly>> kernel_images;
};

ClassifyingPresets classifying_presets();

}  // namespace amalg
