#include "effacengine/effacement.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace effacengine {

std::string to_string(EffacementScope s) {
  switch (s) {
    case EffacementScope::full_z:
      return "full";
    case EffacementScope::point:
      return "point";
    case EffacementScope::composite:
      return "composite";
  }
  return "unknown";
}

template <class F>
AxiomCheck Effacement<F>::validate() const {
  auto c = epi.validate();
  if (!c.ok) return c;
  if (!epi.is_epi()) return AxiomCheck::fail("epi", "effacement map is not surjective");
  if (!(kernel.space == effacengine::kernel(epi.matrix))) return AxiomCheck::fail("kernel", "recorded kernel is not ker(epi)");
  auto km = restrict_to(kernel).module;
  if (!member(*z, km)) return AxiomCheck::fail("kernel-in-Z", "kernel of the effacement is not in Z");
  return AxiomCheck::pass();
}

namespace {

template <class F>
Submodule<F> times_ideal(const ClosedSub<F>& z, const Submodule<F>& s) {
  auto r = restrict_to(s);
  return map_submodule(k_Z(z, r.module), r.inclusion);
}

template <class F>
Effacement<F> make(const Module<F>& target, const Module<F>& domain, const Matrix<F>& epi, EffacementScope scope,
                   const ClosedSubPtr<F>& z, std::string certificate) {
  Morphism<F> e{domain, target, epi};
  Submodule<F> ker{domain, kernel(epi)};
  return {target, domain, e, ker, scope, z, std::move(certificate), {}};
}

template <class F>
Module<F> greedy_simple_quotient(const Module<F>& q, const std::vector<std::size_t>& order) {
  const auto& k = q.field();
  auto current = zero_submodule(q);
  for (std::size_t b : order) {
    Matrix<F> e(k, 1, q.dim());
    e(0, b) = k.one();
    if (current.space.contains(e)) continue;
    auto cand = submodule_generated(q, Matrix<F>::vstack(k, q.dim(), {current.space.basis(), e}));
    if (cand.dim() < q.dim()) current = cand;
  }
  return quotient_module(q, current).module;
}

}  // namespace

template <class F>
Effacement<F> efface_by_ideal(const ClosedSubPtr<F>& z, const Module<F>& m, const std::optional<Presentation<F>>& cover) {
  Presentation<F> pres = cover ? *cover : free_cover(m);
  auto ki = times_ideal(*z, pres.syzygy);
  auto q = quotient_module(pres.cover, ki);
  auto e = make(m, q.module, q.section * pres.epi.matrix, EffacementScope::full_z, z, "free cover modulo K*I");
  return e;
}

template <class F>
Effacement<F> efface_point(const ClosedSubPtr<F>& z, const Module<F>& m) {
  if (!z->is_point()) throw std::invalid_argument("efface_point: closed subcategory is not a point");
  auto ue = universal_extension(m, z->point());
  return make(m, ue.extension.total, ue.extension.proj.matrix, EffacementScope::point, z,
              "universal extension by " + std::to_string(ue.copies) + " copies of the point");
}

template <class F>
Effacement<F> efface_composite(const std::shared_ptr<const Effacement<F>>& e1, const ClosedSubPtr<F>& z2) {
  auto rho = std::make_shared<const Effacement<F>>(efface_natural(z2, e1->domain));
  auto z = ClosedSub<F>::gabriel({e1->z, z2});
  auto e = make(e1->target, rho->domain, rho->epi.matrix * e1->epi.matrix, EffacementScope::composite, z,
                "composite of " + e1->certificate + " and " + rho->certificate);
  e.parts = {e1, rho};
  return e;
}

template <class F>
Effacement<F> efface_natural(const ClosedSubPtr<F>& z, const Module<F>& m) {
  if (z->is_point()) return efface_point(z, m);
  if (z->is_gabriel()) {
    const auto& fs = z->factors();
    auto e = std::make_shared<const Effacement<F>>(efface_natural(fs.front(), m));
    for (std::size_t i = 1; i < fs.size(); ++i) e = std::make_shared<const Effacement<F>>(efface_composite(e, fs[i]));
    Effacement<F> out = *e;
    out.z = z;
    return out;
  }
  return efface_by_ideal(z, m);
}

template <class F>
Effacement<F> identity_effacement(const ClosedSubPtr<F>& z, const Module<F>& m) {
  return make(m, m, Matrix<F>::identity(m.field(), m.dim()), EffacementScope::full_z, z, "identity");
}

template <class F>
Effacement<F> normalize(const Effacement<F>& e) {
  auto ki = times_ideal(*e.z, e.kernel);
  if (ki.dim() == 0) return e;
  auto q = quotient_module(e.domain, ki);
  auto out = make(e.target, q.module, q.section * e.epi.matrix, e.scope, e.z, e.certificate + ", normalized");
  out.parts = e.parts;
  return out;
}

template <class F>
Effacement<F> epimorphic_image(const Effacement<F>& e, const Morphism<F>& epi) {
  if (!epi.is_epi()) throw std::invalid_argument("epimorphic_image: map is not surjective");
  auto composed = make(epi.target, e.domain, e.epi.matrix * epi.matrix, e.scope, e.z, e.certificate + ", pushed to a quotient");
  return normalize(composed);
}

template <class F>
Effacement<F> block_sum(const Effacement<F>& e1, const Effacement<F>& e2) {
  if (e1.z->ideal() != e2.z->ideal()) throw std::invalid_argument("block_sum: effacements for different closed subcategories");
  const auto& alg = e1.target.algebra_ptr();
  auto dom = direct_sum(alg, {e1.domain, e2.domain});
  auto tgt = direct_sum(alg, {e1.target, e2.target});
  Matrix<F> epi = Matrix<F>::block_diagonal(e1.target.field(), {e1.epi.matrix, e2.epi.matrix});
  return make(tgt.sum, dom.sum, epi, e1.scope, e1.z, "block sum");
}

template <class F>
Module<F> quotient_algebra_module(const Ideal<F>& ideal) {
  auto a = Module<F>::regular(ideal.algebra());
  return quotient_module(a, Submodule<F>{a, ideal.space()}).module;
}

template <class F>
Module<F> dual_quotient_module(const Ideal<F>& ideal) {
  auto d = Module<F>::dual_regular(ideal.algebra());
  if (ideal.dim() == 0) return d;
  return restrict_to(Submodule<F>{d, kernel(ideal.basis().transpose())}).module;
}

template <class F>
std::vector<TestObject<F>> default_test_objects(const ClosedSub<F>& z) {
  if (z.is_point()) {
    const auto& p = z.point();
    return {{"P", p}, {"P+P", direct_sum(p.algebra_ptr(), {p, p}).sum}};
  }
  std::vector<TestObject<F>> out;
  auto q = quotient_algebra_module(z.ideal());
  out.push_back({"A/I", q});
  out.push_back({"D(A/I)", dual_quotient_module(z.ideal())});
  if (q.dim() == 0) return out;
  std::vector<std::size_t> order(q.dim());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Module<F>> found;
  for (int pass = 0; pass < 2; ++pass) {
    auto s = greedy_simple_quotient(q, order);
    bool seen = false;
    for (const auto& f : found) seen = seen || is_isomorphic(f, s).yes();
    if (!seen) {
      found.push_back(s);
      out.push_back({"cyclic quotient " + std::to_string(found.size()), s});
    }
    std::reverse(order.begin(), order.end());
  }
  return out;
}

template <class F>
VerificationReport<F> verify_effacement(const Effacement<F>& e, const std::vector<TestObject<F>>& tests) {
  VerificationReport<F> r;
  const auto& k = e.target.field();
  for (const auto& t : tests) {
    if (!member(*e.z, t.module)) throw std::invalid_argument("verify_effacement: test object " + t.name + " is not in Z");
    auto em = ext1(e.target, t.module);
    Matrix<F> mat(k, em.dim(), 0);
    if (em.dim() > 0) {
      auto ed = ext1(e.domain, t.module);
      mat = pullback_map(em, e.epi, ed);
    }
    r.tested.push_back(t.name);
    r.matrices.push_back(mat);
    if (!mat.is_zero() && r.ok) {
      r.ok = false;
      for (std::size_t i = 0; i < mat.rows(); ++i) {
        if (mat.row_matrix(i).is_zero()) continue;
        Matrix<F> coeffs(k, 1, em.dim());
        coeffs(0, i) = k.one();
        r.violation = EffacementViolation<F>{t.name, mat, coeffs};
        break;
      }
    }
  }
  return r;
}

template <class F>
VerificationReport<F> verify_effacement(const Effacement<F>& e) {
  return verify_effacement(e, default_test_objects(*e.z));
}

template <class F>
Morphism<F> lift_through(const Effacement<F>& e, const Morphism<F>& f, const Morphism<F>& target_epi) {
  if (f.source.dim() != e.target.dim() || f.target.dim() != target_epi.target.dim()) {
    throw std::invalid_argument("lift_through: maps do not compose");
  }
  auto sol = solve_morphism(e.domain, target_epi.source,
                            {commutes_after(e.domain, target_epi.matrix, e.epi.matrix * f.matrix)});
  if (!sol) throw std::logic_error("lift_through: no lift exists; the effacement certificate is broken");
  return {e.domain, target_epi.source, sol->particular};
}

#define EFFACENGINE_INSTANTIATE(F)                                                                                \
  template struct Effacement<F>;                                                                                  \
  template Effacement<F> efface_by_ideal(const ClosedSubPtr<F>&, const Module<F>&,                                \
                                         const std::optional<Presentation<F>>&);                                  \
  template Effacement<F> efface_point(const ClosedSubPtr<F>&, const Module<F>&);                                  \
  template Effacement<F> efface_composite(const std::shared_ptr<const Effacement<F>>&, const ClosedSubPtr<F>&);   \
  template Effacement<F> efface_natural(const ClosedSubPtr<F>&, const Module<F>&);                                \
  template Effacement<F> identity_effacement(const ClosedSubPtr<F>&, const Module<F>&);                           \
  template Effacement<F> normalize(const Effacement<F>&);                                                         \
  template Effacement<F> epimorphic_image(const Effacement<F>&, const Morphism<F>&);                              \
  template Effacement<F> block_sum(const Effacement<F>&, const Effacement<F>&);                                   \
  template Module<F> quotient_algebra_module(const Ideal<F>&);                                                    \
  template Module<F> dual_quotient_module(const Ideal<F>&);                                                       \
  template std::vector<TestObject<F>> default_test_objects(const ClosedSub<F>&);                                  \
  template VerificationReport<F> verify_effacement(const Effacement<F>&, const std::vector<TestObject<F>>&);      \
  template VerificationReport<F> verify_effacement(const Effacement<F>&);                                         \
  template Morphism<F> lift_through(const Effacement<F>&, const Morphism<F>&, const Morphism<F>&);

EFFACENGINE_INSTANTIATE(PrimeField)
EFFACENGINE_INSTANTIATE(Rationals)

#undef EFFACENGINE_INSTANTIATE

}  // namespace effacengine
