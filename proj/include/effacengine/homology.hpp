#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "effacengine/module.hpp"

namespace effacengine {

/// Free module A^r with the map sending the i-th copy of 1 to a chosen generator image.
/// Basis vector (j, a) of A^r is e_a in copy j.
template <class F>
struct Presentation {
  Module<F> of;
  Module<F> cover;
  std::size_t rank = 0;
  Matrix<F> generator_images;  // rank x dim(of)
  Morphism<F> epi;             // cover -> of
  Submodule<F> syzygy;         // kernel of epi
  Restriction<F> syzygy_module;

  AxiomCheck validate() const;
};

/// A^r as a module.
template <class F>
Module<F> free_module(const AlgebraPtr<F>& algebra, std::size_t rank);

/// The map A^r -> N sending 1 in copy j to row j of `images`.
template <class F>
Matrix<F> free_map(const Module<F>& target, const Matrix<F>& images);

/// Presentation from the given generators of m (rows must generate m).
template <class F>
Presentation<F> presentation_from(const Module<F>& m, const Matrix<F>& generators);

/// One generator per basis vector of m.
template <class F>
Presentation<F> free_cover(const Module<F>& m);

/// Generators from the module's pruned generating set.
template <class F>
Presentation<F> minimal_cover(const Module<F>& m);

/// Ext^1(M, N) as coker(Hom(A^r, N) -> Hom(K, N)). `basis` are cocycles K -> N whose
/// classes form a basis.
template <class F>
struct Ext1Space {
  Module<F> m;
  Module<F> n;
  std::shared_ptr<const Presentation<F>> presentation;
  std::vector<Matrix<F>> basis;  // each dim K x dim N
  std::size_t dim() const { return basis.size(); }

  /// Coordinates of the class of a cocycle K -> N (1 x dim).
  Matrix<F> class_of(const Matrix<F>& cocycle) const;
  /// Sum of coeffs[i] * basis[i].
  Matrix<F> cocycle_of(const Matrix<F>& coeffs) const;
  /// True iff the cocycle extends to the cover (its class is zero).
  bool is_coboundary(const Matrix<F>& cocycle) const;

  // Rows: coboundaries (restrictions of maps A^r -> N), then the flattened basis.
  Matrix<F> frame;
  std::size_t coboundary_dim = 0;
  std::shared_ptr<const LeftSolver<F>> solver;
};

template <class F>
Ext1Space<F> ext1(const Module<F>& m, const Module<F>& n);

template <class F>
Ext1Space<F> ext1(std::shared_ptr<const Presentation<F>> presentation, const Module<F>& n);

/// Pushout of the syzygy inclusion along the cocycle of the given class.
template <class F>
Extension<F> class_to_extension(const Ext1Space<F>& e, const Matrix<F>& coeffs);

/// Class of an extension 0 -> N -> E -> M -> 0 (1 x dim).
template <class F>
Matrix<F> extension_to_class(const Extension<F>& ext, const Ext1Space<F>& e);

/// An isomorphism E1 -> E2 commuting with both inclusions and projections, if any.
template <class F>
std::optional<Matrix<F>> baer_equivalence(const Extension<F>& e1, const Extension<F>& e2);

/// Pullback of 0 -> N -> E -> M -> 0 along f: M' -> M.
template <class F>
Extension<F> pull_back_extension(const Extension<F>& e, const Morphism<F>& f);

/// Pushout of 0 -> N -> E -> M -> 0 along g: N -> N'.
template <class F>
Extension<F> push_out_extension(const Extension<F>& e, const Morphism<F>& g);

/// Matrix of f^*: Ext^1(M, N) -> Ext^1(M', N) for f: M' -> M (rows: images of the
/// basis of `source`, in coordinates of `target`).
template <class F>
Matrix<F> pullback_map(const Ext1Space<F>& source, const Morphism<F>& f, const Ext1Space<F>& target);

template <class F>
Matrix<F> pullback_map(const Ext1Space<F>& source, const Morphism<F>& f);

/// Matrix of g_*: Ext^1(M, N) -> Ext^1(M, N') for g: N -> N'.
template <class F>
Matrix<F> pushforward_map(const Ext1Space<F>& source, const Morphism<F>& g, const Ext1Space<F>& target);

template <class F>
Matrix<F> pushforward_map(const Ext1Space<F>& source, const Morphism<F>& g);

/// Matrix comparing the Ext^1 bases of two presentations of the same module.
template <class F>
Matrix<F> change_of_presentation(const Ext1Space<F>& from, const Ext1Space<F>& to);

/// 0 -> P^n -> E -> M -> 0 with n = dim Ext^1(M, P), whose class along the i-th
/// projection P^n -> P is the i-th basis class.
template <class F>
struct UniversalExtension {
  Extension<F> extension;
  std::size_t copies = 0;
  Ext1Space<F> ext;
};

template <class F>
UniversalExtension<F> universal_extension(const Module<F>& m, const Module<F>& p);

/// One copy of P for every nonzero element of Ext^1(M, P); finite fields only.
/// Throws std::invalid_argument if more than `max_copies` copies would be needed.
UniversalExtension<PrimeField> universal_extension_full(const Module<PrimeField>& m, const Module<PrimeField>& p,
                                                        std::size_t max_copies = 64);

template <class F>
struct ExtSumCompat {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  Matrix<F> matrix;
  bool iso = false;
};

/// Ext^1(M1 + M2, N) -> Ext^1(M1, N) x Ext^1(M2, N), induced by the injections.
template <class F>
ExtSumCompat<F> ext_sum_compat(const Module<F>& m1, const Module<F>& m2, const Module<F>& n);

/// Ext^1(M, N1 x N2) -> Ext^1(M, N1) x Ext^1(M, N2), induced by the projections.
template <class F>
ExtSumCompat<F> ext_product_compat(const Module<F>& m, const Module<F>& n1, const Module<F>& n2);

}  // namespace effacengine
