#include "effacengine/homology.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace effacengine {

namespace {

// Some X with s X = t, for s whose rows span the target space of X.
template <class F>
Matrix<F> right_solve(const Matrix<F>& s, const Matrix<F>& t) {
  auto x = solve(s.transpose(), t.transpose());
  if (!x) throw std::logic_error("right_solve: no solution");
  return x->transpose();
}

// Extension 0 -> N -> E -> M -> 0 obtained by pushing the syzygy inclusion along
// a cocycle K -> N.
template <class F>
Extension<F> pushout_of_cocycle(const Presentation<F>& pres, const Module<F>& n, const Matrix<F>& cocycle) {
  const auto& k = n.field();
  Morphism<F> c{pres.syzygy_module.module, n, cocycle};
  auto sq = pushout(pres.syzygy_module.inclusion, c);
  Matrix<F> s = Matrix<F>::vstack(k, sq.object.dim(), {sq.first.matrix, sq.second.matrix});
  Matrix<F> t = Matrix<F>::vstack(k, pres.of.dim(), {pres.epi.matrix, Matrix<F>(k, n.dim(), pres.of.dim())});
  Morphism<F> proj{sq.object, pres.of, right_solve(s, t)};
  return {sq.object, sq.second, proj};
}

template <class F>
struct PresentationCache {
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const Presentation<F>>> entries;
};

template <class F>
PresentationCache<F>& presentation_cache() {
  static PresentationCache<F> cache;
  return cache;
}

template <class F>
std::shared_ptr<const Presentation<F>> cached_minimal_cover(const Module<F>& m) {
  auto& cache = presentation_cache<F>();
  const auto key = m.fingerprint();
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end()) return it->second;
  }
  auto pres = std::make_shared<const Presentation<F>>(minimal_cover(m));
  std::lock_guard lock(cache.mutex);
  if (cache.entries.size() > 4096) cache.entries.clear();
  return cache.entries.emplace(key, pres).first->second;
}

}  // namespace

template <class F>
AxiomCheck Presentation<F>::validate() const {
  auto c = epi.validate();
  if (!c.ok) return c;
  if (!epi.is_epi()) return AxiomCheck::fail("epi", "cover map is not surjective");
  if (!(syzygy.space == kernel(epi.matrix))) return AxiomCheck::fail("syzygy", "syzygy is not the kernel of the cover map");
  return AxiomCheck::pass();
}

template <class F>
Module<F> free_module(const AlgebraPtr<F>& algebra, std::size_t rank) {
  std::vector<Module<F>> copies(rank, Module<F>::regular(algebra));
  return direct_sum(algebra, copies).sum;
}

template <class F>
Matrix<F> free_map(const Module<F>& target, const Matrix<F>& images) {
  const auto& k = target.field();
  const std::size_t na = target.algebra().dim();
  if (images.cols() != target.dim()) throw std::invalid_argument("free_map: images do not live in the target");
  Matrix<F> h(k, images.rows() * na, target.dim());
  for (std::size_t j = 0; j < images.rows(); ++j) {
    Matrix<F> y = images.row_matrix(j);
    for (std::size_t a = 0; a < na; ++a) h.set_block(j * na + a, 0, y * target.action(a));
  }
  return h;
}

template <class F>
Presentation<F> presentation_from(const Module<F>& m, const Matrix<F>& generators) {
  auto cover = free_module(m.algebra_ptr(), generators.rows());
  Morphism<F> epi{cover, m, free_map(m, generators)};
  if (!epi.is_epi()) throw std::invalid_argument("presentation_from: rows do not generate the module");
  Submodule<F> syz{cover, kernel(epi.matrix)};
  auto syz_module = restrict_to(syz);
  return {m, cover, generators.rows(), generators, epi, syz, syz_module};
}

template <class F>
Presentation<F> free_cover(const Module<F>& m) {
  return presentation_from(m, Matrix<F>::identity(m.field(), m.dim()));
}

template <class F>
Presentation<F> minimal_cover(const Module<F>& m) {
  return presentation_from(m, m.frame().generators);
}

// --- Ext^1 ------------------------------------------------------------------

template <class F>
Matrix<F> Ext1Space<F>::class_of(const Matrix<F>& cocycle) const {
  const auto& k = m.field();
  Matrix<F> out(k, 1, dim());
  if (dim() == 0) return out;
  auto x = solver->solve(cocycle.flattened());
  if (!x) throw std::invalid_argument("class_of: matrix is not a cocycle K -> N");
  for (std::size_t i = 0; i < dim(); ++i) out(0, i) = (*x)(0, coboundary_dim + i);
  return out;
}

template <class F>
Matrix<F> Ext1Space<F>::cocycle_of(const Matrix<F>& coeffs) const {
  const auto& k = m.field();
  if (coeffs.rows() != 1 || coeffs.cols() != dim()) throw std::invalid_argument("cocycle_of: expected 1 x dim coefficients");
  Matrix<F> c(k, presentation->syzygy.dim(), n.dim());
  for (std::size_t i = 0; i < dim(); ++i) c.add_scaled(coeffs(0, i), basis[i]);
  return c;
}

template <class F>
bool Ext1Space<F>::is_coboundary(const Matrix<F>& cocycle) const {
  return class_of(cocycle).is_zero();
}

template <class F>
Ext1Space<F> ext1(std::shared_ptr<const Presentation<F>> pres, const Module<F>& n) {
  const auto& m = pres->of;
  if (!m.same_algebra(n)) throw std::invalid_argument("ext1: modules over different algebras");
  const auto& k = m.field();
  const auto& kmod = pres->syzygy_module.module;
  const std::size_t width = kmod.dim() * n.dim();

  Ext1Space<F> e{m, n, pres, {}, Matrix<F>(k, 0, width), 0, nullptr};
  if (width == 0) return e;

  std::vector<Matrix<F>> restricted;
  for (std::size_t j = 0; j < pres->rank; ++j)
    for (std::size_t b = 0; b < n.dim(); ++b) {
      Matrix<F> images(k, pres->rank, n.dim());
      images(j, b) = k.one();
      restricted.push_back((pres->syzygy_module.inclusion.matrix * free_map(n, images)).flattened());
    }
  auto cobound = Subspace<F>::span(Matrix<F>::vstack(k, width, restricted));
  e.coboundary_dim = cobound.dim();

  Subspace<F> current = cobound;
  std::vector<Matrix<F>> complement;
  for (const auto& h : hom_space(kmod, n)) {
    auto flat = h.flattened();
    if (current.contains(flat)) continue;
    current = current.sum(Subspace<F>::span(flat));
    complement.push_back(flat);
    e.basis.push_back(h);
  }
  std::vector<Matrix<F>> rows{cobound.basis()};
  rows.insert(rows.end(), complement.begin(), complement.end());
  e.frame = Matrix<F>::vstack(k, width, rows);
  e.solver = std::make_shared<const LeftSolver<F>>(e.frame);
  return e;
}

template <class F>
Ext1Space<F> ext1(const Module<F>& m, const Module<F>& n) {
  return ext1(cached_minimal_cover(m), n);
}

template <class F>
Extension<F> class_to_extension(const Ext1Space<F>& e, const Matrix<F>& coeffs) {
  return pushout_of_cocycle(*e.presentation, e.n, e.cocycle_of(coeffs));
}

template <class F>
Matrix<F> extension_to_class(const Extension<F>& ext, const Ext1Space<F>& e) {
  const auto& pres = *e.presentation;
  if (ext.quotient().dim() != pres.of.dim() || ext.sub().dim() != e.n.dim()) {
    throw std::invalid_argument("extension_to_class: extension does not match the Ext space");
  }
  auto y = solve(ext.proj.matrix, pres.generator_images);
  if (!y) throw std::invalid_argument("extension_to_class: projection is not surjective");
  Matrix<F> lift = free_map(ext.total, *y);
  Matrix<F> on_k = pres.syzygy_module.inclusion.matrix * lift;
  return e.class_of(factor_through_mono(on_k, ext.incl.matrix));
}

template <class F>
std::optional<Matrix<F>> baer_equivalence(const Extension<F>& e1, const Extension<F>& e2) {
  if (e1.total.dim() != e2.total.dim()) return std::nullopt;
  auto sol = solve_morphism(e1.total, e2.total,
                            {restricts_to(e1.incl, e2.incl.matrix), commutes_after(e1.total, e2.proj.matrix, e1.proj.matrix)});
  if (!sol) return std::nullopt;
  if (!is_invertible(sol->particular)) throw std::logic_error("baer_equivalence: morphism of extensions is not invertible");
  return sol->particular;
}

template <class F>
Extension<F> pull_back_extension(const Extension<F>& e, const Morphism<F>& f) {
  const auto& k = f.source.field();
  auto sq = pullback(e.proj, f);
  Matrix<F> into = Matrix<F>::hstack(k, e.sub().dim(), {e.incl.matrix, Matrix<F>(k, e.sub().dim(), f.source.dim())});
  Matrix<F> inclusion = Matrix<F>::hstack(k, sq.object.dim(), {sq.first.matrix, sq.second.matrix});
  Morphism<F> incl{e.sub(), sq.object, factor_through_mono(into, inclusion)};
  return {sq.object, incl, sq.second};
}

template <class F>
Extension<F> push_out_extension(const Extension<F>& e, const Morphism<F>& g) {
  const auto& k = g.source.field();
  auto sq = pushout(e.incl, g);
  Matrix<F> s = Matrix<F>::vstack(k, sq.object.dim(), {sq.first.matrix, sq.second.matrix});
  Matrix<F> t = Matrix<F>::vstack(k, e.quotient().dim(), {e.proj.matrix, Matrix<F>(k, g.target.dim(), e.quotient().dim())});
  return {sq.object, sq.second, Morphism<F>{sq.object, e.quotient(), right_solve(s, t)}};
}

template <class F>
Matrix<F> pullback_map(const Ext1Space<F>& source, const Morphism<F>& f, const Ext1Space<F>& target) {
  const auto& k = source.m.field();
  Matrix<F> out(k, source.dim(), target.dim());
  for (std::size_t i = 0; i < source.dim(); ++i) {
    Matrix<F> unit(k, 1, source.dim());
    unit(0, i) = k.one();
    auto pulled = pull_back_extension(class_to_extension(source, unit), f);
    out.set_block(i, 0, extension_to_class(pulled, target));
  }
  return out;
}

template <class F>
Matrix<F> pullback_map(const Ext1Space<F>& source, const Morphism<F>& f) {
  return pullback_map(source, f, ext1(f.source, source.n));
}

template <class F>
Matrix<F> pushforward_map(const Ext1Space<F>& source, const Morphism<F>& g, const Ext1Space<F>& target) {
  const auto& k = source.m.field();
  Matrix<F> out(k, source.dim(), target.dim());
  for (std::size_t i = 0; i < source.dim(); ++i) {
    if (source.presentation == target.presentation) {
      out.set_block(i, 0, target.class_of(source.basis[i] * g.matrix));
    } else {
      Matrix<F> unit(k, 1, source.dim());
      unit(0, i) = k.one();
      out.set_block(i, 0, extension_to_class(push_out_extension(class_to_extension(source, unit), g), target));
    }
  }
  return out;
}

template <class F>
Matrix<F> pushforward_map(const Ext1Space<F>& source, const Morphism<F>& g) {
  return pushforward_map(source, g, ext1(source.presentation, g.target));
}

template <class F>
Matrix<F> change_of_presentation(const Ext1Space<F>& from, const Ext1Space<F>& to) {
  const auto& k = from.m.field();
  Matrix<F> out(k, from.dim(), to.dim());
  for (std::size_t i = 0; i < from.dim(); ++i) {
    Matrix<F> unit(k, 1, from.dim());
    unit(0, i) = k.one();
    out.set_block(i, 0, extension_to_class(class_to_extension(from, unit), to));
  }
  return out;
}

namespace {

template <class F>
UniversalExtension<F> universal_from_cocycles(const Module<F>& m, const Module<F>& p, Ext1Space<F> e,
                                              const std::vector<Matrix<F>>& cocycles) {
  const auto& k = m.field();
  const auto& pres = *e.presentation;
  std::vector<Module<F>> copies(cocycles.size(), p);
  auto sum = direct_sum(m.algebra_ptr(), copies).sum;
  if (cocycles.empty()) {
    Extension<F> split{m, zero_morphism(sum, m), identity(m)};
    return {split, 0, std::move(e)};
  }
  Matrix<F> c = Matrix<F>::hstack(k, pres.syzygy.dim(), cocycles);
  return {pushout_of_cocycle(pres, sum, c), cocycles.size(), std::move(e)};
}

}  // namespace

template <class F>
UniversalExtension<F> universal_extension(const Module<F>& m, const Module<F>& p) {
  auto e = ext1(m, p);
  auto cocycles = e.basis;
  return universal_from_cocycles(m, p, std::move(e), cocycles);
}

UniversalExtension<PrimeField> universal_extension_full(const Module<PrimeField>& m, const Module<PrimeField>& p,
                                                        std::size_t max_copies) {
  auto e = ext1(m, p);
  const auto& k = m.field();
  const std::uint64_t q = k.cardinality();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < e.dim(); ++i) {
    total *= q;
    if (total > max_copies + 1) {
      throw std::invalid_argument("universal_extension_full: Ext^1 has more than " + std::to_string(max_copies) +
                                  " nonzero elements");
    }
  }
  std::vector<Matrix<PrimeField>> cocycles;
  for (std::uint64_t code = 1; code < total; ++code) {
    Matrix<PrimeField> coeffs(k, 1, e.dim());
    std::uint64_t c = code;
    for (std::size_t i = 0; i < e.dim(); ++i) {
      coeffs(0, i) = k.element_at(c % q);
      c /= q;
    }
    cocycles.push_back(e.cocycle_of(coeffs));
  }
  return universal_from_cocycles(m, p, std::move(e), cocycles);
}

template <class F>
ExtSumCompat<F> ext_sum_compat(const Module<F>& m1, const Module<F>& m2, const Module<F>& n) {
  const auto& k = n.field();
  auto sum = direct_sum(n.algebra_ptr(), {m1, m2});
  auto e = ext1(sum.sum, n);
  auto e1 = ext1(m1, n);
  auto e2 = ext1(m2, n);
  Matrix<F> mat = Matrix<F>::hstack(k, e.dim(), {pullback_map(e, sum.injections[0], e1), pullback_map(e, sum.injections[1], e2)});
  ExtSumCompat<F> r{e.dim(), e1.dim() + e2.dim(), mat, false};
  r.iso = is_invertible(mat);
  return r;
}

template <class F>
ExtSumCompat<F> ext_product_compat(const Module<F>& m, const Module<F>& n1, const Module<F>& n2) {
  const auto& k = m.field();
  auto prod = direct_sum(m.algebra_ptr(), {n1, n2});
  auto pres = cached_minimal_cover(m);
  auto e = ext1(pres, prod.sum);
  auto e1 = ext1(pres, n1);
  auto e2 = ext1(pres, n2);
  Matrix<F> mat =
      Matrix<F>::hstack(k, e.dim(), {pushforward_map(e, prod.projections[0], e1), pushforward_map(e, prod.projections[1], e2)});
  ExtSumCompat<F> r{e.dim(), e1.dim() + e2.dim(), mat, false};
  r.iso = is_invertible(mat);
  return r;
}

#define EFFACENGINE_INSTANTIATE(F)                                                                               \
  template struct Presentation<F>;                                                                               \
  template struct Ext1Space<F>;                                                                                  \
  template Module<F> free_module(const AlgebraPtr<F>&, std::size_t);                                             \
  template Matrix<F> free_map(const Module<F>&, const Matrix<F>&);                                               \
  template Presentation<F> presentation_from(const Module<F>&, const Matrix<F>&);                                \
  template Presentation<F> free_cover(const Module<F>&);                                                         \
  template Presentation<F> minimal_cover(const Module<F>&);                                                      \
  template Ext1Space<F> ext1(const Module<F>&, const Module<F>&);                                                \
  template Ext1Space<F> ext1(std::shared_ptr<const Presentation<F>>, const Module<F>&);                          \
  template Extension<F> class_to_extension(const Ext1Space<F>&, const Matrix<F>&);                               \
  template Matrix<F> extension_to_class(const Extension<F>&, const Ext1Space<F>&);                               \
  template std::optional<Matrix<F>> baer_equivalence(const Extension<F>&, const Extension<F>&);                  \
  template Extension<F> pull_back_extension(const Extension<F>&, const Morphism<F>&);                            \
  template Extension<F> push_out_extension(const Extension<F>&, const Morphism<F>&);                             \
  template Matrix<F> pullback_map(const Ext1Space<F>&, const Morphism<F>&, const Ext1Space<F>&);                 \
  template Matrix<F> pullback_map(const Ext1Space<F>&, const Morphism<F>&);                                      \
  template Matrix<F> pushforward_map(const Ext1Space<F>&, const Morphism<F>&, const Ext1Space<F>&);              \
  template Matrix<F> pushforward_map(const Ext1Space<F>&, const Morphism<F>&);                                   \
  template Matrix<F> change_of_presentation(const Ext1Space<F>&, const Ext1Space<F>&);                           \
  template UniversalExtension<F> universal_extension(const Module<F>&, const Module<F>&);                        \
  template ExtSumCompat<F> ext_sum_compat(const Module<F>&, const Module<F>&, const Module<F>&);                 \
  template ExtSumCompat<F> ext_product_compat(const Module<F>&, const Module<F>&, const Module<F>&);

EFFACENGINE_INSTANTIATE(PrimeField)
EFFACENGINE_INSTANTIATE(Rationals)

#undef EFFACENGINE_INSTANTIATE

}  // namespace effacengine
