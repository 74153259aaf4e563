#pragma once

// Graded vector spaces, graded abelian groups and degreewise maps between
// them, with kernels and cokernels over a field or over Z.

#include <cstddef>
#include <string>
#include <vector>

#include "amalg/linalg.hpp"
#include "amalg/smith.hpp"

namespace amalg {

/// Degrees 0..max_degree(); everything above the cutoff is undefined.
struct GradedVectorSpace {
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;  ///< optional, per degree

  int max_degree() const { return static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int d) const { return dims.at(static_cast<std::size_t>(d)); }
  friend bool operator==(const GradedVectorSpace& a, const GradedVectorSpace& b) { return a.dims == b.dims; }
};

template <class F>
struct GradedMap {
  GradedVectorSpace source;
  GradedVectorSpace target;
  std::vector<Matrix<F>> blocks;  ///< blocks[d] is dim target(d) x dim source(d)

  void validate() const {
    if (source.dims.size() != target.dims.size() || blocks.size() != source.dims.size())
      throw InputError("graded map: degree ranges differ");
    for (std::size_t d = 0; d < blocks.size(); ++d)
      if (blocks[d].rows() != target.dims[d] || blocks[d].cols() != source.dims[d])
        throw InputError("graded map: block shape mismatch at degree " + std::to_string(d));
  }
};

template <class F>
struct GradedKernelCokernel {
  GradedVectorSpace kernel;
  GradedVectorSpace cokernel;
  std::vector<std::vector<Vec<F>>> kernel_basis;  ///< per degree, in source coordinates
};

template <class F>
GradedKernelCokernel<F> kernel_cokernel(const GradedMap<F>& f, const F& field) {
  f.validate();
  GradedKernelCokernel<F> out;
  for (std::size_t d = 0; d < f.blocks.size(); ++d) {
    auto red = row_reduce(f.blocks[d], field);
    out.kernel.dims.push_back(f.source.dims[d] - red.rank);
    out.cokernel.dims.push_back(f.target.dims[d] - red.rank);
    out.kernel_basis.push_back(std::move(red.kernel));
  }
  return out;
}

/// Finitely generated abelian group Z^r + Z/d_1 + ... + Z/d_k with
/// d_1 | d_2 | ... | d_k and d_i >= 2.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  /// Normalizes an arbitrary list of cyclic orders (entries 1 are dropped,
  /// entries 0 count as free summands) into invariant-factor form.
  static AbelianGroup from_cyclic(std::size_t free_rank, const std::vector<Integer>& orders);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

  /// "0", "Z", "Z^3", "Z/2 + Z/2", "Z^2 + (Z/2)^3".  A repeated torsion
  /// factor is written out twice and as a power from three copies on.
  std::string str() const;
  /// "2,2,4" (empty when torsion-free).
  std::string torsion_csv() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Per degree 0..N.
struct GradedAbelianGroup {
  std::vector<AbelianGroup> degrees;
  int max_degree() const { return static_cast<int>(degrees.size()) - 1; }
  const AbelianGroup& at(int d) const { return degrees.at(static_cast<std::size_t>(d)); }
  friend bool operator==(const GradedAbelianGroup&, const GradedAbelianGroup&) = default;
};

/// Z^generators / (column span of relations).
struct PresentedAbelianGroup {
  std::size_t generators = 0;
  IntMatrix relations;  ///< generators x (#relations)

  static PresentedAbelianGroup free(std::size_t n) { return {n, IntMatrix(n, 0)}; }
  AbelianGroup structure() const;
  /// True when v lies in the relation lattice (i.e. is zero in the group).
  bool is_zero(const IntVec& v) const;
};

struct IntegerKernelCokernel {
  AbelianGroup kernel;
  /// Generators of the kernel in source coordinates; order 0 means infinite.
  std::vector<IntVec> kernel_generators;
  std::vector<Integer> generator_orders;
  AbelianGroup cokernel;
};

/// Kernel and cokernel of the homomorphism src -> tgt induced by `map`
/// (tgt.generators x src.generators).  Throws InputError on shape mismatch
/// or when `map` does not send relations to relations.
IntegerKernelCokernel kernel_cokernel(const IntMatrix& map, const PresentedAbelianGroup& src,
                                      const PresentedAbelianGroup& tgt);

/// Degreewise integer map between presented graded groups.
struct IntegerGradedMap {
  std::vector<PresentedAbelianGroup> source;
  std::vector<PresentedAbelianGroup> target;
  std::vector<IntMatrix> blocks;
};

struct GradedIntegerKernelCokernel {
  GradedAbelianGroup kernel;
  GradedAbelianGroup cokernel;
  std::vector<IntegerKernelCokernel> per_degree;
};

GradedIntegerKernelCokernel kernel_cokernel(const IntegerGradedMap& f);

}  // namespace amalg
