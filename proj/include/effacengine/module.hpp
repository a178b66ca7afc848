#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "effacengine/algebra.hpp"

namespace effacengine {

/// A generating set of a module together with the data needed to turn generator
/// images into morphisms. `spread` has one row per (generator j, algebra basis i),
/// equal to g_j * e_i; `expression` satisfies expression * spread = identity.
template <class F>
struct GeneratorFrame {
  Matrix<F> generators;  // r x dim
  Matrix<F> spread;      // (r * dimA) x dim
  Matrix<F> expression;  // dim x (r * dimA)
  Subspace<F> relations; // kernel of spread, in k^{r * dimA}
};

/// Right A-module of finite dimension: action(i) is the matrix of v -> v e_i.
/// Copies share the immutable representation.
template <class F>
class Module {
 public:
  Module(AlgebraPtr<F> algebra, std::size_t dim, std::vector<Matrix<F>> action);

  static Module regular(const AlgebraPtr<F>& algebra);
  static Module zero(const AlgebraPtr<F>& algebra);
  /// Linear dual of A with (f.a)(x) = f(a x); injective cogenerator of Mod-A.
  static Module dual_regular(const AlgebraPtr<F>& algebra);

  const AlgebraPtr<F>& algebra_ptr() const { return rep_->algebra; }
  const Algebra<F>& algebra() const { return *rep_->algebra; }
  const F& field() const { return rep_->algebra->field(); }
  std::size_t dim() const { return rep_->dim; }
  const Matrix<F>& action(std::size_t i) const { return rep_->action[i]; }
  const std::vector<Matrix<F>>& actions() const { return rep_->action; }

  /// Rows of `vectors` acted on by the algebra element `element` (1 x dimA).
  Matrix<F> act(const Matrix<F>& vectors, const Matrix<F>& element) const;

  /// Homomorphism law on basis pairs and unit law.
  AxiomCheck validate() const;

  bool same_algebra(const Module& o) const { return rep_->algebra == o.rep_->algebra; }
  bool identical(const Module& o) const { return rep_ == o.rep_; }
  std::string fingerprint() const;

  const GeneratorFrame<F>& frame() const;

 private:
  struct Rep {
    AlgebraPtr<F> algebra;
    std::size_t dim;
    std::vector<Matrix<F>> action;
    mutable std::once_flag frame_once;
    mutable std::unique_ptr<GeneratorFrame<F>> frame;
  };
  std::shared_ptr<const Rep> rep_;
};

template <class F>
struct Morphism {
  Module<F> source;
  Module<F> target;
  Matrix<F> matrix;  // dim(source) x dim(target)

  /// Intertwining check: action_source(e_i) * matrix == matrix * action_target(e_i).
  AxiomCheck validate() const;
  bool is_mono() const { return rank(matrix) == source.dim(); }
  bool is_epi() const { return rank(matrix) == target.dim(); }
};

template <class F>
Morphism<F> identity(const Module<F>& m) {
  return {m, m, Matrix<F>::identity(m.field(), m.dim())};
}

template <class F>
Morphism<F> zero_morphism(const Module<F>& m, const Module<F>& n) {
  return {m, n, Matrix<F>(m.field(), m.dim(), n.dim())};
}

/// g o f.
template <class F>
Morphism<F> compose(const Morphism<F>& g, const Morphism<F>& f);

template <class F>
struct Submodule {
  Module<F> parent;
  Subspace<F> space;

  AxiomCheck validate() const;
  std::size_t dim() const { return space.dim(); }
  friend bool operator==(const Submodule& a, const Submodule& b) { return a.space == b.space; }
};

template <class F>
struct Restriction {
  Module<F> module;
  Morphism<F> inclusion;
};

template <class F>
struct Quotient {
  Module<F> module;
  Morphism<F> projection;
  Matrix<F> section;  // linear right inverse of projection
};

template <class F>
struct Biproduct {
  Module<F> sum;
  std::vector<Morphism<F>> injections;
  std::vector<Morphism<F>> projections;
};

template <class F>
struct Square {
  Module<F> object;
  Morphism<F> first;   // pullback: object -> M; pushout: M -> object
  Morphism<F> second;  // pullback: object -> N; pushout: N -> object
};

/// Short exact sequence 0 -> sub --incl--> total --proj--> quotient -> 0.
template <class F>
struct Extension {
  Module<F> total;
  Morphism<F> incl;
  Morphism<F> proj;

  const Module<F>& sub() const { return incl.source; }
  const Module<F>& quotient() const { return proj.target; }
  AxiomCheck validate() const;
};

template <class F>
Submodule<F> zero_submodule(const Module<F>& m) {
  return {m, Subspace<F>(m.field(), m.dim())};
}

template <class F>
Submodule<F> full_submodule(const Module<F>& m) {
  return {m, Subspace<F>::full(m.field(), m.dim())};
}

/// Smallest action-stable subspace containing the rows of `vectors`.
template <class F>
Submodule<F> submodule_generated(const Module<F>& m, const Matrix<F>& vectors);

template <class F>
Restriction<F> restrict_to(const Submodule<F>& s);

template <class F>
Quotient<F> quotient_module(const Module<F>& m, const Submodule<F>& s);

template <class F>
Submodule<F> kernel_of(const Morphism<F>& f);

template <class F>
Submodule<F> image_of(const Morphism<F>& f);

template <class F>
Quotient<F> cokernel_of(const Morphism<F>& f);

template <class F>
Biproduct<F> direct_sum(const AlgebraPtr<F>& algebra, const std::vector<Module<F>>& ms);

/// Pullback of f: M -> P and g: N -> P, the kernel of (f, -g) on M + N.
template <class F>
Square<F> pullback(const Morphism<F>& f, const Morphism<F>& g);

/// Pushout of f: K -> M and g: K -> N, the cokernel of (f, -g): K -> M + N.
template <class F>
Square<F> pushout(const Morphism<F>& f, const Morphism<F>& g);

/// Condition left * H * right == value on an unknown morphism H: M -> N.
template <class F>
struct MorphismCondition {
  Matrix<F> left;
  Matrix<F> right;
  Matrix<F> value;
};

/// Condition "H * right == value" between module maps. Two module maps agree iff
/// they agree on generators, so only generator rows are imposed.
template <class F>
MorphismCondition<F> commutes_after(const Module<F>& source, const Matrix<F>& right, const Matrix<F>& value);

/// Condition "incl * H == value" where incl: L -> M is a module map and value: L -> N.
template <class F>
MorphismCondition<F> restricts_to(const Morphism<F>& incl, const Matrix<F>& value);

template <class F>
struct MorphismSolution {
  Matrix<F> particular;
  std::vector<Matrix<F>> homogeneous;  // basis of solutions of the homogeneous system
};

/// All module maps M -> N satisfying the conditions, as an affine space.
template <class F>
std::optional<MorphismSolution<F>> solve_morphism(const Module<F>& m, const Module<F>& n,
                                                  const std::vector<MorphismCondition<F>>& conditions);

/// Basis of Hom_A(M, N) as matrices, computed through a generating set of M.
template <class F>
std::vector<Matrix<F>> hom_space(const Module<F>& m, const Module<F>& n);

/// Basis of Hom_A(M, N) from the full intertwining system (reference implementation).
template <class F>
std::vector<Matrix<F>> hom_space_naive(const Module<F>& m, const Module<F>& n);

/// Writes the rows of g (maps into Y) in terms of a mono Q -> Y; throws if some row is
/// outside the image.
template <class F>
Matrix<F> factor_through_mono(const Matrix<F>& g, const Matrix<F>& mono);

/// The module with basis the rows of `basis_change` (in old coordinates), and the
/// isomorphism new -> old.
template <class F>
Restriction<F> change_basis(const Module<F>& m, const Matrix<F>& basis_change);

enum class IsoVerdict { yes, no, undetermined };

template <class F>
struct IsoResult {
  IsoVerdict verdict = IsoVerdict::undetermined;
  std::optional<Matrix<F>> witness;
  std::string reason;
  bool yes() const { return verdict == IsoVerdict::yes; }
};

struct IsoOptions {
  std::uint64_t seed = 0x5eed;
  std::size_t trial_bound = 0;  // 0: default_trial_bound()
};

/// Reads EFFACENGINE_TRIAL_BOUND, default 256.
std::size_t default_trial_bound();

/// Semi-decision: certified "no" from dimension or Hom-dimension obstructions, "yes"
/// with an invertible intertwiner, "undetermined" once the trial budget is spent.
template <class F>
IsoResult<F> is_isomorphic(const Module<F>& m, const Module<F>& n, const IsoOptions& options = {});

/// {a in A : M a = 0}.
template <class F>
Ideal<F> annihilator_ideal(const Module<F>& m);

}  // namespace effacengine
