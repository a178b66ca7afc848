#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "effacengine/module.hpp"

namespace effacengine {

enum class Simplicity { simple, not_simple, undetermined };

/// How simplicity of a module was decided. For `not_simple` the witness is a vector
/// generating a proper nonzero submodule; for a Norton certificate it records the
/// algebra element whose action has one-dimensional kernel.
template <class F>
struct SimplicityCertificate {
  Simplicity verdict = Simplicity::undetermined;
  std::string method;
  std::optional<Matrix<F>> witness;
};

/// Decides simplicity: dimension one, exhaustive vector enumeration over small finite
/// fields, or Norton's criterion with a nullity-one element. `budget` bounds the number
/// of vectors enumerated.
template <class F>
SimplicityCertificate<F> certify_simple(const Module<F>& m, std::size_t budget = 1u << 16);

template <class F>
class ClosedSub;

template <class F>
using ClosedSubPtr = std::shared_ptr<const ClosedSub<F>>;

/// A closed subcategory of Mod-A. Every one is Mod-A/I for a two-sided ideal I, the
/// realized ideal. Gabriel products Z1 ... Zn have filtrations whose top quotient lies
/// in Z1 and whose bottom piece lies in Zn; their ideal is I1 ... In.
template <class F>
class ClosedSub {
 public:
  struct ByIdeal {
    Ideal<F> ideal;
  };
  struct ByPoint {
    Module<F> point;
    SimplicityCertificate<F> certificate;
  };
  struct Gabriel {
    std::vector<ClosedSubPtr<F>> factors;
  };
  using Descriptor = std::variant<ByIdeal, ByPoint, Gabriel>;

  static ClosedSubPtr<F> by_ideal(Ideal<F> ideal);
  /// Throws std::invalid_argument unless the point is certified simple.
  static ClosedSubPtr<F> by_point(Module<F> point);
  static ClosedSubPtr<F> gabriel(std::vector<ClosedSubPtr<F>> factors);

  const Descriptor& descriptor() const { return descriptor_; }
  const Ideal<F>& ideal() const { return ideal_; }
  const AlgebraPtr<F>& algebra_ptr() const { return ideal_.algebra(); }
  bool is_point() const { return std::holds_alternative<ByPoint>(descriptor_); }
  bool is_gabriel() const { return std::holds_alternative<Gabriel>(descriptor_); }
  const Module<F>& point() const { return std::get<ByPoint>(descriptor_).point; }
  const std::vector<ClosedSubPtr<F>>& factors() const { return std::get<Gabriel>(descriptor_).factors; }
  std::string kind() const;

  AxiomCheck validate() const;

 private:
  ClosedSub(Descriptor d, Ideal<F> ideal) : descriptor_(std::move(d)), ideal_(std::move(ideal)) {}
  Descriptor descriptor_;
  Ideal<F> ideal_;
};

/// M * I = 0.
template <class F>
bool member(const ClosedSub<F>& z, const Module<F>& m);

/// For a point P: M is isomorphic to a direct sum of copies of P (small instances).
template <class F>
IsoVerdict member_by_point_sum(const ClosedSub<F>& z, const Module<F>& m);

/// Largest submodule in Z: {v : v I = 0}.
template <class F>
Submodule<F> sub_Z(const ClosedSub<F>& z, const Module<F>& m);

/// Smallest submodule with quotient in Z: M I.
template <class F>
Submodule<F> k_Z(const ClosedSub<F>& z, const Module<F>& m);

/// Largest quotient in Z: M / k_Z(M).
template <class F>
Quotient<F> quot_Z(const ClosedSub<F>& z, const Module<F>& m);

/// M / sub_Z(M).
template <class F>
Quotient<F> c_Z(const ClosedSub<F>& z, const Module<F>& m);

/// The same submodules from the category alone: for a point P, the sum of images of
/// maps P -> M and the intersection of kernels of maps M -> P; for a Gabriel product
/// the iterated constructions of its factors; for an ideal, the ideal formula.
template <class F>
Submodule<F> sub_Z_intrinsic(const ClosedSub<F>& z, const Module<F>& m);

template <class F>
Submodule<F> k_Z_intrinsic(const ClosedSub<F>& z, const Module<F>& m);

/// (K(M) n f(N)) / f(K(N)) for the mono f: N -> M, the failure of K to be middle-exact
/// on a short exact sequence through f. Returns its dimension.
template <class F>
std::size_t k_Z_homology(const ClosedSub<F>& z, const Morphism<F>& mono);

/// Image of a submodule under a module map, as a submodule of the target.
template <class F>
Submodule<F> map_submodule(const Submodule<F>& s, const Morphism<F>& f);

}  // namespace effacengine
