#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "effacengine/closed_sub.hpp"
#include "effacengine/homology.hpp"

namespace effacengine {

enum class EffacementScope { full_z, point, composite };

/// An epimorphism domain -> target whose kernel lies in Z, together with how it was
/// built. `parts` holds the two factors of a composite.
template <class F>
struct Effacement {
  Module<F> target;
  Module<F> domain;
  Morphism<F> epi;
  Submodule<F> kernel;
  EffacementScope scope = EffacementScope::full_z;
  ClosedSubPtr<F> z;
  std::string certificate;
  std::vector<std::shared_ptr<const Effacement>> parts;

  /// epi surjective, kernel = ker(epi), kernel in Z.
  AxiomCheck validate() const;
};

std::string to_string(EffacementScope s);

/// Free cover P -> M with syzygy K, descended to P / K I -> M. `cover` selects the
/// presentation (defaults to the one-generator-per-basis-vector cover).
template <class F>
Effacement<F> efface_by_ideal(const ClosedSubPtr<F>& z, const Module<F>& m,
                              const std::optional<Presentation<F>>& cover = std::nullopt);

/// Universal extension 0 -> P^n -> E -> M -> 0 for a closed point P.
template <class F>
Effacement<F> efface_point(const ClosedSubPtr<F>& z, const Module<F>& m);

/// Effacement of M for Z1 Z2 from an effacement e1 of M for Z1: an effacement of
/// e1.domain for Z2 composed with e1.epi.
template <class F>
Effacement<F> efface_composite(const std::shared_ptr<const Effacement<F>>& e1, const ClosedSubPtr<F>& z2);

/// Chooses the construction from the descriptor: point -> efface_point, Gabriel ->
/// composite of the factors (outermost first), ideal -> efface_by_ideal.
template <class F>
Effacement<F> efface_natural(const ClosedSubPtr<F>& z, const Module<F>& m);

/// The identity of M, declared as an effacement. Not an effacement in general; used as
/// a negative control.
template <class F>
Effacement<F> identity_effacement(const ClosedSubPtr<F>& z, const Module<F>& m);

/// Replaces the domain by domain / (ker * I) so the kernel lies in Z.
template <class F>
Effacement<F> normalize(const Effacement<F>& e);

/// Composite domain -> M -> M' with an epi M -> M', normalized.
template <class F>
Effacement<F> epimorphic_image(const Effacement<F>& e, const Morphism<F>& epi);

/// Block sum of two effacements for the same Z.
template <class F>
Effacement<F> block_sum(const Effacement<F>& e1, const Effacement<F>& e2);

template <class F>
struct EffacementViolation {
  std::string test_object;
  Matrix<F> pullback;  // the nonzero pullback matrix
  Matrix<F> class_coeffs;  // a class of Ext^1(M, N) with nonzero pullback
};

template <class F>
struct VerificationReport {
  bool ok = true;
  std::vector<std::string> tested;
  std::vector<Matrix<F>> matrices;  // one pullback matrix per test object
  std::optional<EffacementViolation<F>> violation;
};

template <class F>
struct TestObject {
  std::string name;
  Module<F> module;
};

/// The finite test set for the scope of Z: for a point P, {P, P + P}; otherwise the
/// cyclic quotients of A/I found greedily and the dual D(A/I).
template <class F>
std::vector<TestObject<F>> default_test_objects(const ClosedSub<F>& z);

/// Ext^1(M, N) -> Ext^1(domain, N) along the epi must vanish for every test object.
template <class F>
VerificationReport<F> verify_effacement(const Effacement<F>& e, const std::vector<TestObject<F>>& tests);

template <class F>
VerificationReport<F> verify_effacement(const Effacement<F>& e);

/// A lift domain(e) -> N' of f o e.epi through target_epi: N' -> N. Throws
/// std::logic_error if none exists.
template <class F>
Morphism<F> lift_through(const Effacement<F>& e, const Morphism<F>& f, const Morphism<F>& target_epi);

/// The cyclic module A/I.
template <class F>
Module<F> quotient_algebra_module(const Ideal<F>& ideal);

/// D(A/I) as an A-module: functionals on A vanishing on I.
template <class F>
Module<F> dual_quotient_module(const Ideal<F>& ideal);

}  // namespace effacengine
