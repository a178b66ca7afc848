#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "effacengine/effacement.hpp"

namespace effacengine {

enum class CoverChoice { free, minimal };
enum class EffacementStrategy { natural, ideal };

/// The choices fixed when defining F and G. `container_seed` = 0 uses the standard
/// embedding into D(A)^r; other seeds twist it by a random basis change.
struct FunctorOptions {
  CoverChoice cover = CoverChoice::free;
  EffacementStrategy strategy = EffacementStrategy::natural;
  std::uint64_t container_seed = 0;
  std::size_t extra_copies = 0;
  bool verify_effacements = false;
};

/// M -> M_bar with cokernel in Z, inside an injective container D(A)^r.
template <class F>
struct Container {
  Module<F> ambient;
  Module<F> mbar;
  Morphism<F> embedding;  // M -> ambient
  Morphism<F> incl;       // M -> mbar
  Morphism<F> mbar_into_ambient;
};

template <class F>
Container<F> injective_effacement(const ClosedSub<F>& z, const Module<F>& m, const FunctorOptions& options = {});

template <class F>
struct FunctorValue {
  Module<F> object;
  Morphism<F> structure;  // nu: F(M) -> M, or mu: M -> G(M)
};

template <class F>
class FunctorContext {
 public:
  FunctorContext(ClosedSubPtr<F> z, FunctorOptions options = {}) : z_(std::move(z)), options_(options) {}

  const ClosedSubPtr<F>& z() const { return z_; }
  const FunctorOptions& options() const { return options_; }

  /// Cached choice of effacement of m; verified on first use when the options ask.
  std::shared_ptr<const Effacement<F>> effacement(const Module<F>& m) const;
  std::shared_ptr<const Container<F>> container(const Module<F>& m) const;

 private:
  ClosedSubPtr<F> z_;
  FunctorOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const Effacement<F>>> effacements_;
  mutable std::map<std::string, std::shared_ptr<const Container<F>>> containers_;
};

/// F(M) = k_Z(M_under) with nu the restricted effacement map.
template <class F>
FunctorValue<F> apply_F(const FunctorContext<F>& ctx, const Module<F>& m);

/// All lifts M_under -> N_under of f through the chosen effacements.
template <class F>
MorphismSolution<F> lifts_of(const FunctorContext<F>& ctx, const Morphism<F>& f);

/// F(f) computed from a particular lift.
template <class F>
Morphism<F> restrict_lift(const FunctorContext<F>& ctx, const Morphism<F>& f, const Matrix<F>& lift);

template <class F>
Morphism<F> apply_F_mor(const FunctorContext<F>& ctx, const Morphism<F>& f);

/// G(M) = c_Z(M_bar) with mu the composite M -> M_bar -> G(M).
template <class F>
FunctorValue<F> apply_G(const FunctorContext<F>& ctx, const Module<F>& m);

/// All extensions M_bar -> N_bar of f.
template <class F>
MorphismSolution<F> extensions_of(const FunctorContext<F>& ctx, const Morphism<F>& f);

template <class F>
Morphism<F> descend_extension(const FunctorContext<F>& ctx, const Morphism<F>& f, const Matrix<F>& extension);

template <class F>
Morphism<F> apply_G_mor(const FunctorContext<F>& ctx, const Morphism<F>& f);

template <class F>
struct OracleValue {
  Module<F> object;
  Morphism<F> canonical;  // M tensor I -> M, or M -> Hom(I, M)
};

/// M tensor_A I as (P I) / (K I) for a free cover P -> M with syzygy K.
template <class F>
OracleValue<F> oracle_tensor(const ClosedSub<F>& z, const Module<F>& m, CoverChoice cover = CoverChoice::minimal);

/// Hom_A(I, M) with (f a)(x) = f(a x).
template <class F>
OracleValue<F> oracle_hom(const ClosedSub<F>& z, const Module<F>& m);

struct AdjunctionReport {
  std::size_t hom_F_m_n = 0;
  std::size_t hom_m_G_n = 0;
  std::size_t middle = 0;  // dim Hom(M_under, N_bar) - dim {h : im h in sub_Z(N_bar)}
  std::size_t phi_rank = 0;
  std::size_t psi_rank = 0;
  bool kernels_agree = false;
  bool ok() const {
    return hom_F_m_n == hom_m_G_n && hom_m_G_n == middle && phi_rank == hom_F_m_n && psi_rank == hom_m_G_n &&
           kernels_agree;
  }
  std::string describe() const;
};

template <class F>
AdjunctionReport adjunction_check(const FunctorContext<F>& ctx, const Module<F>& m, const Module<F>& n);

struct ExactnessReport {
  bool ok = true;
  std::string failure;  // the failing arrow
  std::vector<std::size_t> dims_F;  // F(M'), F(M), F(M'')
  std::vector<std::size_t> dims_G;
};

template <class F>
ExactnessReport exactness_suite(const FunctorContext<F>& ctx, const Extension<F>& ses);

struct GabrielReport {
  bool ok = false;
  std::size_t dim_F = 0;
  std::size_t dim_oracle = 0;
  std::string verdict;
  bool nu_zero_on_members = true;
};

template <class F>
GabrielReport gabriel_functor_check(const ClosedSubPtr<F>& z1, const ClosedSubPtr<F>& z2, const Module<F>& m);

template <class F>
struct SelfEffacingReport {
  std::vector<std::string> self_effacing;
  std::vector<std::pair<std::string, std::string>> failing;  // (generator, injective)
  bool ok() const { return failing.empty(); }
};

/// Ext^1(O, E) = 0 for every generator O and every test injective E of Z.
template <class F>
SelfEffacingReport<F> self_effacing_check(const ClosedSub<F>& z, const std::vector<TestObject<F>>& gens);

template <class F>
struct CanonicalIso {
  Matrix<F> matrix;
  bool invertible = false;
  bool commutes = false;
  bool ok() const { return invertible && commutes; }
};

/// F_1(M) -> F_2(M) obtained by lifting the identity between the two effacements.
template <class F>
CanonicalIso<F> canonical_F_iso(const FunctorContext<F>& c1, const FunctorContext<F>& c2, const Module<F>& m);

/// G_1(M) -> G_2(M) obtained by extending the identity between the two containers.
template <class F>
CanonicalIso<F> canonical_G_iso(const FunctorContext<F>& c1, const FunctorContext<F>& c2, const Module<F>& m);

}  // namespace effacengine
