#include "effacengine/functors.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace effacengine {

namespace {

template <class F>
Matrix<F> random_invertible(const F& k, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  while (true) {
    Matrix<F> t(k, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = k.random_small(rng, 2);
    if (is_invertible(t)) return t;
  }
}

template <class F>
Matrix<F> coords_in(const Subspace<F>& s, const Matrix<F>& vectors, const char* what) {
  auto c = s.coordinates(vectors);
  if (!c) throw std::logic_error(std::string(what) + ": vectors leave the expected submodule");
  return *c;
}

template <class F>
Submodule<F> times_ideal(const ClosedSub<F>& z, const Submodule<F>& s) {
  auto r = restrict_to(s);
  return map_submodule(k_Z(z, r.module), r.inclusion);
}

}  // namespace

// --- Containers ---------------------------------------------------------------

template <class F>
Container<F> injective_effacement(const ClosedSub<F>& z, const Module<F>& m, const FunctorOptions& options) {
  const auto& k = m.field();
  const auto& alg = m.algebra_ptr();
  const std::size_t na = alg->dim();
  const std::size_t copies = m.dim() + options.extra_copies;
  auto d = Module<F>::dual_regular(alg);
  auto ambient = direct_sum(alg, std::vector<Module<F>>(copies, d)).sum;

  Matrix<F> t = options.container_seed == 0 ? Matrix<F>::identity(k, m.dim())
                                            : random_invertible(k, m.dim(), options.container_seed);
  Matrix<F> emb(k, m.dim(), copies * na);
  for (std::size_t l = 0; l < na; ++l) {
    Matrix<F> rt = m.action(l) * t;
    for (std::size_t b = 0; b < m.dim(); ++b)
      for (std::size_t j = 0; j < m.dim(); ++j) emb(b, j * na + l) = rt(b, j);
  }
  Morphism<F> embedding{m, ambient, emb};

  auto q = quotient_module(ambient, Submodule<F>{ambient, image(emb)});
  auto top = sub_Z(z, q.module);
  Matrix<F> gens = Matrix<F>::vstack(k, ambient.dim(), {emb, top.space.basis() * q.section});
  auto r = restrict_to(Submodule<F>{ambient, Subspace<F>::span(gens)});
  Morphism<F> incl{m, r.module, factor_through_mono(emb, r.inclusion.matrix)};
  return {ambient, r.module, embedding, incl, r.inclusion};
}

template <class F>
std::shared_ptr<const Effacement<F>> FunctorContext<F>::effacement(const Module<F>& m) const {
  const auto key = m.fingerprint();
  {
    std::lock_guard lock(mutex_);
    auto it = effacements_.find(key);
    if (it != effacements_.end()) return it->second;
  }
  std::optional<Presentation<F>> cover;
  if (options_.cover == CoverChoice::minimal) cover = minimal_cover(m);
  Effacement<F> e = [&] {
    if (options_.strategy == EffacementStrategy::ideal || (!z_->is_point() && !z_->is_gabriel())) {
      return efface_by_ideal(z_, m, cover);
    }
    return efface_natural(z_, m);
  }();
  if (options_.verify_effacements) {
    auto v = verify_effacement(e);
    if (!v.ok) throw std::logic_error("chosen effacement fails verification against " + v.violation->test_object);
  }
  auto ptr = std::make_shared<const Effacement<F>>(std::move(e));
  std::lock_guard lock(mutex_);
  return effacements_.emplace(key, ptr).first->second;
}

template <class F>
std::shared_ptr<const Container<F>> FunctorContext<F>::container(const Module<F>& m) const {
  const auto key = m.fingerprint();
  {
    std::lock_guard lock(mutex_);
    auto it = containers_.find(key);
    if (it != containers_.end()) return it->second;
  }
  auto ptr = std::make_shared<const Container<F>>(injective_effacement(*z_, m, options_));
  std::lock_guard lock(mutex_);
  return containers_.emplace(key, ptr).first->second;
}

// --- F ------------------------------------------------------------------------

template <class F>
FunctorValue<F> apply_F(const FunctorContext<F>& ctx, const Module<F>& m) {
  auto e = ctx.effacement(m);
  auto r = restrict_to(k_Z(*ctx.z(), e->domain));
  return {r.module, Morphism<F>{r.module, m, r.inclusion.matrix * e->epi.matrix}};
}

template <class F>
MorphismSolution<F> lifts_of(const FunctorContext<F>& ctx, const Morphism<F>& f) {
  auto em = ctx.effacement(f.source);
  auto en = ctx.effacement(f.target);
  auto sol = solve_morphism(em->domain, en->domain,
                            {commutes_after(em->domain, en->epi.matrix, em->epi.matrix * f.matrix)});
  if (!sol) throw std::logic_error("lifts_of: morphism does not lift through the effacements");
  return *sol;
}

template <class F>
Morphism<F> restrict_lift(const FunctorContext<F>& ctx, const Morphism<F>& f, const Matrix<F>& lift) {
  auto em = ctx.effacement(f.source);
  auto en = ctx.effacement(f.target);
  auto km = k_Z(*ctx.z(), em->domain);
  auto kn = k_Z(*ctx.z(), en->domain);
  auto fm = apply_F(ctx, f.source);
  auto fn = apply_F(ctx, f.target);
  return {fm.object, fn.object, coords_in(kn.space, km.space.basis() * lift, "apply_F_mor")};
}

template <class F>
Morphism<F> apply_F_mor(const FunctorContext<F>& ctx, const Morphism<F>& f) {
  auto em = ctx.effacement(f.source);
  auto en = ctx.effacement(f.target);
  auto lift = lift_through(*em, f, en->epi);
  return restrict_lift(ctx, f, lift.matrix);
}

// --- G ------------------------------------------------------------------------

template <class F>
FunctorValue<F> apply_G(const FunctorContext<F>& ctx, const Module<F>& m) {
  auto c = ctx.container(m);
  auto q = c_Z(*ctx.z(), c->mbar);
  return {q.module, Morphism<F>{m, q.module, c->incl.matrix * q.projection.matrix}};
}

template <class F>
MorphismSolution<F> extensions_of(const FunctorContext<F>& ctx, const Morphism<F>& f) {
  auto cm = ctx.container(f.source);
  auto cn = ctx.container(f.target);
  auto sol = solve_morphism(cm->mbar, cn->mbar, {restricts_to(cm->incl, f.matrix * cn->incl.matrix)});
  if (!sol) throw std::logic_error("extensions_of: morphism does not extend to the containers");
  return *sol;
}

template <class F>
Morphism<F> descend_extension(const FunctorContext<F>& ctx, const Morphism<F>& f, const Matrix<F>& extension) {
  auto cm = ctx.container(f.source);
  auto cn = ctx.container(f.target);
  auto qm = c_Z(*ctx.z(), cm->mbar);
  auto qn = c_Z(*ctx.z(), cn->mbar);
  Matrix<F> g = qm.section * extension * qn.projection.matrix;
  // well defined only if sub_Z(M_bar) goes to sub_Z(N_bar)
  if (!(sub_Z(*ctx.z(), cm->mbar).space.basis() * extension * qn.projection.matrix).is_zero()) {
    throw std::logic_error("descend_extension: extension does not preserve sub_Z");
  }
  return {qm.module, qn.module, g};
}

template <class F>
Morphism<F> apply_G_mor(const FunctorContext<F>& ctx, const Morphism<F>& f) {
  return descend_extension(ctx, f, extensions_of(ctx, f).particular);
}

// --- Oracles ------------------------------------------------------------------

template <class F>
OracleValue<F> oracle_tensor(const ClosedSub<F>& z, const Module<F>& m, CoverChoice cover) {
  auto pres = cover == CoverChoice::minimal ? minimal_cover(m) : free_cover(m);
  auto pi = k_Z(z, pres.cover);
  auto ki = times_ideal(z, pres.syzygy);
  auto r = restrict_to(pi);
  Submodule<F> ki_in_pi{r.module, Subspace<F>::span(coords_in(pi.space, ki.space.basis(), "oracle_tensor"))};
  auto q = quotient_module(r.module, ki_in_pi);
  Matrix<F> canonical = q.section * r.inclusion.matrix * pres.epi.matrix;
  return {q.module, Morphism<F>{q.module, m, canonical}};
}

template <class F>
OracleValue<F> oracle_hom(const ClosedSub<F>& z, const Module<F>& m) {
  const auto& k = m.field();
  const auto& alg = m.algebra();
  const auto& ideal = z.ideal();
  auto regular = Module<F>::regular(m.algebra_ptr());
  auto imod = restrict_to(Submodule<F>{regular, ideal.space()}).module;
  auto homs = hom_space(imod, m);
  const std::size_t h = homs.size();
  const std::size_t di = ideal.dim();

  std::vector<Matrix<F>> flat;
  for (const auto& x : homs) flat.push_back(x.flattened());
  Matrix<F> frame = Matrix<F>::vstack(k, di * m.dim(), flat);
  LeftSolver<F> solver(frame);
  auto coords = [&](const Matrix<F>& map) {
    auto c = solver.solve(map.flattened());
    if (!c) throw std::logic_error("oracle_hom: map is not a module map from I");
    return *c;
  };

  std::vector<Matrix<F>> action;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    Matrix<F> left = coords_in(ideal.space(), ideal.basis() * alg.left_mult(i), "oracle_hom");
    Matrix<F> act(k, h, h);
    for (std::size_t s = 0; s < h; ++s) act.set_block(s, 0, coords(left * homs[s]));
    action.push_back(std::move(act));
  }
  Module<F> hom(m.algebra_ptr(), h, std::move(action));

  Matrix<F> canonical(k, m.dim(), h);
  if (h > 0) {
    std::vector<Matrix<F>> ideal_actions;
    for (std::size_t t = 0; t < di; ++t) ideal_actions.push_back(m.act(Matrix<F>::identity(k, m.dim()), ideal.basis().row_matrix(t)));
    for (std::size_t b = 0; b < m.dim(); ++b) {
      Matrix<F> map(k, di, m.dim());
      for (std::size_t t = 0; t < di; ++t) map.set_block(t, 0, ideal_actions[t].row_matrix(b));
      canonical.set_block(b, 0, coords(map));
    }
  }
  return {hom, Morphism<F>{m, hom, canonical}};
}

// --- Checks -------------------------------------------------------------------

std::string AdjunctionReport::describe() const {
  std::ostringstream os;
  os << "dim Hom(F M, N) = " << hom_F_m_n << ", dim Hom(M, G N) = " << hom_m_G_n << ", middle = " << middle
     << ", rank phi = " << phi_rank << ", rank psi = " << psi_rank << ", kernels " << (kernels_agree ? "agree" : "differ");
  return os.str();
}

template <class F>
AdjunctionReport adjunction_check(const FunctorContext<F>& ctx, const Module<F>& m, const Module<F>& n) {
  const auto& k = m.field();
  const auto& z = *ctx.z();
  AdjunctionReport r;
  auto fm = apply_F(ctx, m);
  auto gn = apply_G(ctx, n);
  r.hom_F_m_n = hom_space(fm.object, n).size();
  r.hom_m_G_n = hom_space(m, gn.object).size();

  auto e = ctx.effacement(m);
  auto c = ctx.container(n);
  auto hs = hom_space(e->domain, c->mbar);
  auto cq = c_Z(z, c->mbar);
  auto km = k_Z(z, e->domain);
  auto sec = solve(e->epi.matrix, Matrix<F>::identity(k, m.dim()));
  if (!sec) throw std::logic_error("adjunction_check: effacement is not surjective");
  const Matrix<F>& section = *sec;

  const std::size_t count = hs.size();
  const std::size_t wz = e->domain.dim() * cq.module.dim();
  const std::size_t wphi = fm.object.dim() * n.dim();
  const std::size_t wpsi = m.dim() * gn.object.dim();
  std::vector<Matrix<F>> to_z, phis, psis;
  for (const auto& h : hs) {
    to_z.push_back((h * cq.projection.matrix).flattened());
    phis.push_back(factor_through_mono(km.space.basis() * h, c->incl.matrix).flattened());
    psis.push_back((section * h * cq.projection.matrix).flattened());
  }
  auto in_z = kernel(Matrix<F>::vstack(k, wz, to_z));
  auto phi_mat = Matrix<F>::vstack(k, wphi, phis);
  auto psi_mat = Matrix<F>::vstack(k, wpsi, psis);
  r.middle = count - in_z.dim();
  r.phi_rank = rank(phi_mat);
  r.psi_rank = rank(psi_mat);
  r.kernels_agree = kernel(phi_mat) == in_z && kernel(psi_mat) == in_z;
  return r;
}

template <class F>
ExactnessReport exactness_suite(const FunctorContext<F>& ctx, const Extension<F>& ses) {
  ExactnessReport r;
  const auto& z = *ctx.z();
  auto fail = [&](std::string what) {
    if (r.ok) r.failure = std::move(what);
    r.ok = false;
  };
  auto c = ses.validate();
  if (!c.ok) throw std::invalid_argument("exactness_suite: not a short exact sequence: " + c.message);

  auto f_sub = apply_F(ctx, ses.sub());
  auto f_mid = apply_F(ctx, ses.total);
  auto f_quo = apply_F(ctx, ses.quotient());
  r.dims_F = {f_sub.object.dim(), f_mid.object.dim(), f_quo.object.dim()};
  auto fi = apply_F_mor(ctx, ses.incl);
  auto fp = apply_F_mor(ctx, ses.proj);
  if (!fp.is_epi()) fail("F(M) -> F(M'') is not surjective");
  if (!(image(fi.matrix) == kernel(fp.matrix))) fail("image F(M') -> F(M) differs from kernel F(M) -> F(M'')");

  auto g_sub = apply_G(ctx, ses.sub());
  auto g_mid = apply_G(ctx, ses.total);
  auto g_quo = apply_G(ctx, ses.quotient());
  r.dims_G = {g_sub.object.dim(), g_mid.object.dim(), g_quo.object.dim()};
  auto gi = apply_G_mor(ctx, ses.incl);
  auto gp = apply_G_mor(ctx, ses.proj);
  if (!gi.is_mono()) fail("G(M') -> G(M) is not injective");
  if (!(image(gi.matrix) == kernel(gp.matrix))) fail("image G(M') -> G(M) differs from kernel G(M) -> G(M'')");

  const std::pair<const char*, const Module<F>*> objects[] = {{"M'", &ses.sub()}, {"M", &ses.total}, {"M''", &ses.quotient()}};
  for (const auto& [name, mod] : objects) {
    auto nu = apply_F(ctx, *mod).structure;
    auto mu = apply_G(ctx, *mod).structure;
    if (!(image(nu.matrix) == k_Z(z, *mod).space)) fail(std::string("coker(nu) differs from quot_Z at ") + name);
    if (!(kernel(mu.matrix) == sub_Z(z, *mod).space)) fail(std::string("ker(mu) differs from sub_Z at ") + name);
  }
  return r;
}

template <class F>
GabrielReport gabriel_functor_check(const ClosedSubPtr<F>& z1, const ClosedSubPtr<F>& z2, const Module<F>& m) {
  GabrielReport r;
  auto z = ClosedSub<F>::gabriel({z1, z2});
  FunctorContext<F> ctx(z);
  auto fm = apply_F(ctx, m);
  auto oracle = oracle_tensor(*z, m);
  r.dim_F = fm.object.dim();
  r.dim_oracle = oracle.object.dim();
  auto iso = is_isomorphic(fm.object, oracle.object);
  r.verdict = iso.reason;
  r.ok = iso.yes() && image(fm.structure.matrix) == image(oracle.canonical.matrix);
  if (member(*z, m)) r.nu_zero_on_members = fm.structure.matrix.is_zero();
  r.ok = r.ok && r.nu_zero_on_members;
  return r;
}

template <class F>
SelfEffacingReport<F> self_effacing_check(const ClosedSub<F>& z, const std::vector<TestObject<F>>& gens) {
  SelfEffacingReport<F> r;
  std::vector<TestObject<F>> injectives{{"D(A/I)", dual_quotient_module(z.ideal())}};
  if (z.is_point()) injectives.push_back({"P", z.point()});
  for (const auto& g : gens) {
    bool good = true;
    for (const auto& e : injectives) {
      if (ext1(g.module, e.module).dim() != 0) {
        good = false;
        r.failing.emplace_back(g.name, e.name);
      }
    }
    if (good) r.self_effacing.push_back(g.name);
  }
  return r;
}

template <class F>
CanonicalIso<F> canonical_F_iso(const FunctorContext<F>& c1, const FunctorContext<F>& c2, const Module<F>& m) {
  auto e1 = c1.effacement(m);
  auto e2 = c2.effacement(m);
  auto lift = lift_through(*e1, identity(m), e2->epi);
  auto k1 = k_Z(*c1.z(), e1->domain);
  auto k2 = k_Z(*c2.z(), e2->domain);
  CanonicalIso<F> r{coords_in(k2.space, k1.space.basis() * lift.matrix, "canonical_F_iso"), false, false};
  r.invertible = is_invertible(r.matrix);
  r.commutes = r.matrix * apply_F(c2, m).structure.matrix == apply_F(c1, m).structure.matrix;
  return r;
}

template <class F>
CanonicalIso<F> canonical_G_iso(const FunctorContext<F>& c1, const FunctorContext<F>& c2, const Module<F>& m) {
  auto a = c1.container(m);
  auto b = c2.container(m);
  auto sol = solve_morphism(a->mbar, b->mbar, {restricts_to(a->incl, b->incl.matrix)});
  if (!sol) throw std::logic_error("canonical_G_iso: identity does not extend between containers");
  auto qa = c_Z(*c1.z(), a->mbar);
  auto qb = c_Z(*c2.z(), b->mbar);
  CanonicalIso<F> r{qa.section * sol->particular * qb.projection.matrix, false, false};
  r.invertible = is_invertible(r.matrix);
  r.commutes = apply_G(c1, m).structure.matrix * r.matrix == apply_G(c2, m).structure.matrix;
  return r;
}

#define EFFACENGINE_INSTANTIATE(F)                                                                                \
  template Container<F> injective_effacement(const ClosedSub<F>&, const Module<F>&, const FunctorOptions&);       \
  template class FunctorContext<F>;                                                                               \
  template FunctorValue<F> apply_F(const FunctorContext<F>&, const Module<F>&);                                   \
  template MorphismSolution<F> lifts_of(const FunctorContext<F>&, const Morphism<F>&);                            \
  template Morphism<F> restrict_lift(const FunctorContext<F>&, const Morphism<F>&, const Matrix<F>&);             \
  template Morphism<F> apply_F_mor(const FunctorContext<F>&, const Morphism<F>&);                                 \
  template FunctorValue<F> apply_G(const FunctorContext<F>&, const Module<F>&);                                   \
  template MorphismSolution<F> extensions_of(const FunctorContext<F>&, const Morphism<F>&);                       \
  template Morphism<F> descend_extension(const FunctorContext<F>&, const Morphism<F>&, const Matrix<F>&);         \
  template Morphism<F> apply_G_mor(const FunctorContext<F>&, const Morphism<F>&);                                 \
  template OracleValue<F> oracle_tensor(const ClosedSub<F>&, const Module<F>&, CoverChoice);                      \
  template OracleValue<F> oracle_hom(const ClosedSub<F>&, const Module<F>&);                                      \
  template AdjunctionReport adjunction_check(const FunctorContext<F>&, const Module<F>&, const Module<F>&);       \
  template ExactnessReport exactness_suite(const FunctorContext<F>&, const Extension<F>&);                        \
  template GabrielReport gabriel_functor_check(const ClosedSubPtr<F>&, const ClosedSubPtr<F>&, const Module<F>&); \
  template SelfEffacingReport<F> self_effacing_check(const ClosedSub<F>&, const std::vector<TestObject<F>>&);     \
  template CanonicalIso<F> canonical_F_iso(const FunctorContext<F>&, const FunctorContext<F>&, const Module<F>&); \
  template CanonicalIso<F> canonical_G_iso(const FunctorContext<F>&, const FunctorContext<F>&, const Module<F>&);

EFFACENGINE_INSTANTIATE(PrimeField)
EFFACENGINE_INSTANTIATE(Rationals)

#undef EFFACENGINE_INSTANTIATE

}  // namespace effacengine
