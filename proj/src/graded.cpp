#include "amalg/graded.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace amalg {

AbelianGroup AbelianGroup::from_cyclic(std::size_t free_rank, const std::vector<Integer>& orders) {
  AbelianGroup g;
  g.free_rank_ = free_rank;
  // prime -> exponents of the prime-power parts
  std::map<Integer, std::vector<unsigned long>> primary;
  for (Integer n : orders) {
    n = abs(n);
    if (n == 0) {
      ++g.free_rank_;
      continue;
    }
    for (Integer p = 2; p * p <= n; ++p) {
      unsigned long e = 0;
      while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++e;
      }
      if (e) primary[p].push_back(e);
    }
    if (n > 1) primary[n].push_back(1);
  }
  std::size_t k = 0;
  for (auto& [p, es] : primary) {
    std::sort(es.begin(), es.end(), std::greater<>());
    k = std::max(k, es.size());
  }
  // invariant factors, largest first
  std::vector<Integer> inv(k, Integer(1));
  for (auto& [p, es] : primary)
    for (std::size_t i = 0; i < es.size(); ++i) {
      Integer pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), es[i]);
      inv[i] *= pe;
    }
  std::reverse(inv.begin(), inv.end());
  g.torsion_ = std::move(inv);
  return g;
}

std::string AbelianGroup::str() const {
  if (is_trivial()) return "0";
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.push_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (std::size_t i = 0; i < torsion_.size();) {
    std::size_t j = i;
    while (j < torsion_.size() && torsion_[j] == torsion_[i]) ++j;
    const std::string cyc = "Z/" + torsion_[i].get_str();
    const std::size_t mult = j - i;
    if (mult >= 3) {
      parts.push_back("(" + cyc + ")^" + std::to_string(mult));
    } else {
      for (std::size_t r = 0; r < mult; ++r) parts.push_back(cyc);
    }
    i = j;
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
  return out;
}

std::string AbelianGroup::torsion_csv() const {
  std::string out;
  for (std::size_t i = 0; i < torsion_.size(); ++i) out += (i ? "," : "") + torsion_[i].get_str();
  return out;
}

AbelianGroup PresentedAbelianGroup::structure() const {
  if (relations.rows() != generators) throw InputError("presented group: relation matrix has wrong height");
  SmithForm snf = smith_normal_form(relations);
  return AbelianGroup::from_cyclic(generators - snf.rank, snf.factors);
}

bool PresentedAbelianGroup::is_zero(const IntVec& v) const {
  std::vector<IntVec> cols;
  for (std::size_t c = 0; c < relations.cols(); ++c) cols.push_back(relations.column(c));
  return Lattice(generators, cols).contains(v);
}

namespace {

std::vector<IntVec> columns_of(const IntMatrix& m) {
  std::vector<IntVec> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

}  // namespace

IntegerKernelCokernel kernel_cokernel(const IntMatrix& map, const PresentedAbelianGroup& src,
                                      const PresentedAbelianGroup& tgt) {
  if (map.rows() != tgt.generators || map.cols() != src.generators)
    throw InputError("integer map shape mismatch");
  if (src.relations.rows() != src.generators || tgt.relations.rows() != tgt.generators)
    throw InputError("presented group: relation matrix has wrong height");
  const std::size_t s = src.generators;
  const std::size_t t = tgt.generators;

  const Lattice target_rel(t, columns_of(tgt.relations));
  for (const auto& r : columns_of(src.relations))
    if (!target_rel.contains(map * r)) throw InputError("integer map does not respect relations");

  IntegerKernelCokernel out;

  // Preimage lattice L = {x : map x in rel(tgt)}; kernel = L / rel(src).
  IntMatrix neg_rel = tgt.relations;
  for (std::size_t r = 0; r < neg_rel.rows(); ++r) neg_rel.negate_row(r);
  std::vector<IntVec> gens;
  for (const auto& k : integer_kernel(hconcat(map, neg_rel))) gens.emplace_back(k.begin(), k.begin() + static_cast<long>(s));
  for (const auto& r : columns_of(src.relations)) gens.push_back(r);
  const Lattice preimage(s, gens);

  std::vector<IntVec> coords;
  for (const auto& r : columns_of(src.relations)) coords.push_back(*preimage.coordinates(r));
  const std::size_t ell = preimage.rank();
  SmithForm snf = smith_normal_form(IntMatrix::from_columns(ell, coords));
  out.kernel = AbelianGroup::from_cyclic(ell - snf.rank, snf.factors);
  const IntMatrix basis = IntMatrix::from_columns(s, preimage.basis());
  for (std::size_t i = 0; i < ell; ++i) {
    Integer order = i < snf.rank ? snf.factors[i] : Integer(0);
    if (order == 1) continue;
    out.kernel_generators.push_back(basis * snf.u_inverse.column(i));
    out.generator_orders.push_back(order);
  }

  SmithForm coker = smith_normal_form(hconcat(map, tgt.relations));
  out.cokernel = AbelianGroup::from_cyclic(t - coker.rank, coker.factors);
  return out;
}

GradedIntegerKernelCokernel kernel_cokernel(const IntegerGradedMap& f) {
  if (f.source.size() != f.target.size() || f.blocks.size() != f.source.size())
    throw InputError("graded integer map: degree ranges differ");
  GradedIntegerKernelCokernel out;
  for (std::size_t d = 0; d < f.blocks.size(); ++d) {
    auto kc = kernel_cokernel(f.blocks[d], f.source[d], f.target[d]);
    out.kernel.degrees.push_back(kc.kernel);
    out.cokernel.degrees.push_back(kc.cokernel);
    out.per_degree.push_back(std::move(kc));
  }
  return out;
}

}  // namespace amalg
