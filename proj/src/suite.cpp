#include "effacengine/suite.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "effacengine/commands.hpp"
#include "effacengine/functors.hpp"

namespace effacengine {

std::string to_string(Completeness c) {
  return c == Completeness::complete_at_finite_dim ? "complete-at-finite-dim" : "spot-check";
}

namespace {

// --- bookkeeping ----------------------------------------------------------------

/// Accumulates assertions; the first failure wins, undetermined only if nothing failed.
struct Tally {
  std::size_t checked = 0;
  std::string failure;
  std::string undetermined;

  bool check(bool cond, const std::string& what) {
    ++checked;
    if (!cond && failure.empty()) failure = what;
    return cond;
  }
  void unknown(const std::string& what) {
    ++checked;
    if (undetermined.empty()) undetermined = what;
  }
  std::optional<Outcome> outcome(const std::string& unit) const {
    if (!failure.empty()) return Outcome{Status::fail, failure};
    if (!undetermined.empty()) return Outcome{Status::undetermined, undetermined};
    if (checked == 0) return std::nullopt;
    return Outcome{Status::pass, std::to_string(checked) + " " + unit};
  }
};

template <class F>
struct NamedMorphism {
  std::string name;
  std::string source;
  std::string target;
  Morphism<F> map;
};

template <class F>
using NamedZ = Named<ClosedSubPtr<F>>;

template <class F>
std::vector<NamedZ<F>> closed_subs(const Scenario<F>& s) {
  std::vector<NamedZ<F>> out;
  for (const auto& [spec, z] : s.closed_subs) out.push_back(z);
  return out;
}

template <class F>
std::vector<NamedZ<F>> simple_closed_subs(const Scenario<F>& s) {
  std::vector<NamedZ<F>> out;
  for (const auto& [spec, z] : s.closed_subs)
    if (!z.value->is_gabriel()) out.push_back(z);
  return out;
}

/// Up to two Hom-basis elements per ordered pair, and their sum.
template <class F>
std::vector<NamedMorphism<F>> corpus_morphisms(const Scenario<F>& s) {
  std::vector<NamedMorphism<F>> out;
  for (const auto& m : s.modules)
    for (const auto& n : s.modules) {
      auto hs = hom_space(m.value, n.value);
      const std::string base = m.name + "->" + n.name;
      for (std::size_t i = 0; i < hs.size() && i < 2; ++i) out.push_back({base + "#" + std::to_string(i), m.name, n.name, {m.value, n.value, hs[i]}});
      if (hs.size() > 1) out.push_back({base + "#sum", m.name, n.name, {m.value, n.value, hs[0] + hs[1]}});
    }
  return out;
}

template <class F>
bool is_iso_witness(const Module<F>& m, const Module<F>& n, const Matrix<F>& w) {
  if (w.rows() != m.dim() || w.cols() != n.dim() || !is_invertible(w)) return false;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i)
    if (!(m.action(i) * w == w * n.action(i))) return false;
  return true;
}

template <class F>
void check_iso(Tally& t, const Module<F>& m, const Module<F>& n, const std::string& what) {
  auto r = is_isomorphic(m, n);
  if (r.verdict == IsoVerdict::undetermined) {
    t.unknown(what + ": iso search undetermined");
    return;
  }
  if (!t.check(r.yes(), what + ": not isomorphic (" + r.reason + ")")) return;
  t.check(r.witness && is_iso_witness(m, n, *r.witness), what + ": iso witness does not intertwine");
}

template <class F>
Morphism<F> inclusion_of(const Submodule<F>& s) {
  return restrict_to(s).inclusion;
}

/// Short exact sequences drawn from the scenario.
template <class F>
std::vector<std::pair<std::string, Extension<F>>> corpus_sequences(const Scenario<F>& s) {
  std::vector<std::pair<std::string, Extension<F>>> out;
  auto make = [](const Submodule<F>& sub) {
    auto r = restrict_to(sub);
    auto q = quotient_module(sub.parent, sub);
    return Extension<F>{sub.parent, r.inclusion, q.projection};
  };
  for (const auto& z : closed_subs(s)) {
    for (const auto& m : s.modules) {
      out.push_back({"k_" + z.name + "(" + m.name + ")", make(k_Z(*z.value, m.value))});
      out.push_back({"sub_" + z.name + "(" + m.name + ")", make(sub_Z(*z.value, m.value))});
    }
  }
  for (const auto& m : s.modules)
    for (const auto& n : s.modules) {
      auto e = ext1(m.value, n.value);
      const std::string base = n.name + ">->?->>" + m.name;
      if (e.dim() > 0) {
        Matrix<F> c(m.value.field(), 1, e.dim());
        c(0, 0) = m.value.field().one();
        out.push_back({base + " class 1", class_to_extension(e, c)});
      }
      auto ds = direct_sum(m.value.algebra_ptr(), {n.value, m.value});
      out.push_back({base + " split", Extension<F>{ds.sum, ds.injections[0], ds.projections[1]}});
    }
  return out;
}

template <class F>
std::vector<TestObject<F>> with_pair_sums(const std::vector<TestObject<F>>& tests) {
  auto out = tests;
  for (std::size_t i = 0; i < tests.size(); ++i)
    for (std::size_t j = i; j < tests.size(); ++j) {
      const auto& a = tests[i].module;
      out.push_back({tests[i].name + "+" + tests[j].name, direct_sum(a.algebra_ptr(), {a, tests[j].module}).sum});
    }
  return out;
}

template <class F>
bool verifies(const Effacement<F>& e) {
  return e.validate().ok && verify_effacement(e).ok;
}

// --- cases ------------------------------------------------------------------------

template <class F>
std::optional<Outcome> linear_algebra(const Scenario<F>& s) {
  Tally t;
  std::vector<std::pair<std::string, Matrix<F>>> mats;
  for (const auto& m : s.modules)
    for (std::size_t i = 0; i < m.value.actions().size(); ++i) mats.push_back({m.name + " action " + std::to_string(i), m.value.action(i)});
  for (const auto& f : corpus_morphisms(s)) mats.push_back({f.name, f.map.matrix});
  for (const auto& [name, m] : mats) {
    auto ker = kernel(m);
    auto r = rank(m);
    t.check(ker.dim() + r == m.rows(), name + ": rank + nullity != rows");
    auto a = rref_serial(m, m.cols());
    auto b = rref_parallel(m, m.cols());
    t.check(a.reduced == b.reduced && a.pivots == b.pivots, name + ": serial and parallel echelon forms differ");
    auto q = quotient_space(ker);
    t.check(q.section * q.projection == Matrix<F>::identity(m.field(), q.dim), name + ": projection o section != 1");
    t.check((ker.basis() * q.projection).is_zero(), name + ": projection does not kill the subspace");
    auto im = image(m);
    auto im_t = image(m.transpose());
    if (im.ambient_dim() == im_t.ambient_dim()) {
      t.check(im.sum(im_t) == im_t.sum(im) && im.intersect(im_t) == im_t.intersect(im), name + ": subspace operations depend on order");
    }
  }
  return t.outcome("matrices");
}

template <class F>
std::optional<Outcome> ideal_laws(const Scenario<F>& s) {
  Tally t;
  std::vector<Named<Ideal<F>>> ideals = s.ideals;
  ideals.push_back({"0", Ideal<F>::zero(s.algebra)});
  ideals.push_back({"A", Ideal<F>::unit(s.algebra)});
  for (const auto& i : ideals) {
    t.check(ideal_generated(s.algebra, i.value.basis()) == i.value, i.name + ": ideal_generated not idempotent");
    for (const auto& j : ideals) {
      auto both = ideal_generated(s.algebra, Matrix<F>::vstack(s.algebra->field(), s.algebra->dim(), {i.value.basis(), j.value.basis()}));
      t.check(i.value.is_subset_of(both) && j.value.is_subset_of(both), i.name + "," + j.name + ": ideal_generated not monotone");
      auto p = ideal_product(i.value, j.value);
      t.check(p.is_subset_of(ideal_intersection(i.value, j.value)), i.name + "*" + j.name + " not inside the intersection");
      for (const auto& k : ideals) {
        t.check(ideal_product(p, k.value) == ideal_product(i.value, ideal_product(j.value, k.value)),
                "product not associative on " + i.name + "," + j.name + "," + k.name);
      }
    }
  }
  const auto& k = s.algebra->field();
  const std::size_t n = s.algebra->dim();
  for (const auto& m : s.modules) {
    // intersection over basis vectors v of {a : v a = 0}
    auto acc = Subspace<F>::full(k, n);
    for (std::size_t b = 0; b < m.value.dim(); ++b) {
      Matrix<F> rows(k, n, m.value.dim());
      for (std::size_t a = 0; a < n; ++a) rows.set_block(a, 0, m.value.action(a).row_matrix(b));
      acc = acc.intersect(kernel(rows));
    }
    t.check(annihilator_ideal(m.value).space() == acc, m.name + ": annihilator differs from the pointwise intersection");
  }
  return t.outcome("ideal identities");
}

template <class F>
std::optional<Outcome> module_exactness(const Scenario<F>& s) {
  Tally t;
  for (const auto& f : corpus_morphisms(s)) {
    auto ker = kernel_of(f.map);
    auto im = image_of(f.map);
    auto cok = cokernel_of(f.map);
    t.check(f.map.source.dim() == ker.dim() + im.dim(), f.name + ": dim source != dim ker + dim im");
    t.check(cok.module.dim() == f.map.target.dim() - im.dim(), f.name + ": cokernel dimension");
    check_iso(t, restrict_to(im).module, quotient_module(f.map.source, ker).module, f.name + " first isomorphism");
  }
  for (const auto& m : s.modules)
    for (const auto& n : s.modules) {
      t.check(hom_space(m.value, n.value).size() == hom_space_naive(m.value, n.value).size(),
              "Hom(" + m.name + "," + n.name + ") differs from the full intertwining system");
    }
  return t.outcome("maps");
}

template <class F>
std::optional<Outcome> biproduct_hom(const Scenario<F>& s) {
  Tally t;
  for (const auto& a : s.modules)
    for (const auto& b : s.modules) {
      auto ds = direct_sum(s.algebra, {a.value, b.value});
      const auto& k = s.algebra->field();
      t.check(ds.injections[0].matrix * ds.projections[0].matrix == Matrix<F>::identity(k, a.value.dim()) &&
                  (ds.injections[0].matrix * ds.projections[1].matrix).is_zero(),
              a.name + "+" + b.name + ": biproduct identities");
      for (const auto& n : s.modules) {
        t.check(hom_space(ds.sum, n.value).size() == hom_space(a.value, n.value).size() + hom_space(b.value, n.value).size(),
                "Hom(" + a.name + "+" + b.name + ", " + n.name + ") is not additive");
      }
    }
  return t.outcome("sums");
}

template <class F>
std::optional<Outcome> pullback_pushout(const Scenario<F>& s) {
  Tally t;
  auto ms = corpus_morphisms(s);
  const auto& k = s.algebra->field();
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < ms.size() && pairs < 12; ++a)
    for (std::size_t b = a; b < ms.size() && pairs < 12; ++b) {
      const auto& f = ms[a];
      const auto& g = ms[b];
      if (f.target == g.target) {
        ++pairs;
        auto sq = pullback(f.map, g.map);
        const std::string what = "pullback(" + f.name + ", " + g.name + ")";
        t.check(sq.first.matrix * f.map.matrix == sq.second.matrix * g.map.matrix, what + " square");
        auto ds = direct_sum(s.algebra, {f.map.source, g.map.source});
        Matrix<F> fg = Matrix<F>::vstack(k, f.map.target.dim(), {f.map.matrix, g.map.matrix.scaled(k.neg(k.one()))});
        for (const auto& tm : s.modules) {
          // cones T -> M + N with (f, -g) = 0; each must factor uniquely
          auto cones = solve_morphism(tm.value, ds.sum, {commutes_after(tm.value, fg, Matrix<F>(k, tm.value.dim(), f.map.target.dim()))});
          if (!t.check(cones.has_value(), what + ": cone system")) continue;
          for (const auto& h : cones->homogeneous) {
            Matrix<F> p1 = h * ds.projections[0].matrix, p2 = h * ds.projections[1].matrix;
            auto u = solve_morphism(tm.value, sq.object,
                                    {commutes_after(tm.value, sq.first.matrix, p1), commutes_after(tm.value, sq.second.matrix, p2)});
            t.check(u && u->homogeneous.empty(), what + ": cone from " + tm.name + " does not factor uniquely");
          }
        }
      }
      if (f.source == g.source) {
        ++pairs;
        auto sq = pushout(f.map, g.map);
        const std::string what = "pushout(" + f.name + ", " + g.name + ")";
        t.check(f.map.matrix * sq.first.matrix == g.map.matrix * sq.second.matrix, what + " square");
        auto ds = direct_sum(s.algebra, {f.map.target, g.map.target});
        Matrix<F> fg = Matrix<F>::hstack(k, f.map.source.dim(), {f.map.matrix, g.map.matrix.scaled(k.neg(k.one()))});
        for (const auto& tm : s.modules) {
          MorphismCondition<F> cocone{fg, Matrix<F>::identity(k, tm.value.dim()), Matrix<F>(k, f.map.source.dim(), tm.value.dim())};
          auto cocones = solve_morphism(ds.sum, tm.value, {cocone});
          if (!t.check(cocones.has_value(), what + ": cocone system")) continue;
          for (const auto& h : cocones->homogeneous) {
            Matrix<F> j1 = ds.injections[0].matrix * h, j2 = ds.injections[1].matrix * h;
            auto u = solve_morphism(sq.object, tm.value,
                                    {MorphismCondition<F>{sq.first.matrix, Matrix<F>::identity(k, tm.value.dim()), j1},
                                     MorphismCondition<F>{sq.second.matrix, Matrix<F>::identity(k, tm.value.dim()), j2}});
            t.check(u && u->homogeneous.empty(), what + ": cocone to " + tm.name + " does not factor uniquely");
          }
        }
      }
    }
  return t.outcome("universal properties");
}

template <class F>
std::vector<Matrix<F>> probe_vectors(const Module<F>& m) {
  const auto& k = m.field();
  std::vector<Matrix<F>> out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Matrix<F> v(k, 1, m.dim());
    v(0, i) = k.one();
    out.push_back(v);
  }
  for (std::size_t i = 0; i + 1 < m.dim(); ++i) out.push_back(out[i] + out[i + 1]);
  return out;
}

template <class F>
std::optional<Outcome> closed_sub_universality(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    for (const auto& m : s.modules) {
      const std::string what = z.name + " on " + m.name;
      auto sub = sub_Z(*z.value, m.value);
      auto kz = k_Z(*z.value, m.value);
      t.check(member(*z.value, restrict_to(sub).module), what + ": sub_Z not in Z");
      t.check(quot_Z(*z.value, m.value).module.dim() == m.value.dim() - kz.dim(), what + ": quot_Z dimension");
      t.check(member(*z.value, quot_Z(*z.value, m.value).module), what + ": quot_Z not in Z");
      t.check(c_Z(*z.value, m.value).module.dim() == m.value.dim() - sub.dim(), what + ": c_Z dimension");
      t.check(sub_Z_intrinsic(*z.value, m.value) == sub, what + ": sub_Z differs from the intrinsic construction");
      t.check(k_Z_intrinsic(*z.value, m.value) == kz, what + ": k_Z differs from the intrinsic construction");
      if (z.value->is_point()) {
        auto v = member_by_point_sum(*z.value, m.value);
        if (v == IsoVerdict::undetermined) t.unknown(what + ": point-sum membership undetermined");
        else t.check((v == IsoVerdict::yes) == member(*z.value, m.value), what + ": membership disagrees with sums of the point");
      }
      for (const auto& v : probe_vectors(m.value)) {
        auto n = submodule_generated(m.value, v);
        if (member(*z.value, restrict_to(n).module)) t.check(n.space.is_subspace_of(sub.space), what + ": Z-submodule outside sub_Z");
        if (member(*z.value, quotient_module(m.value, n).module)) t.check(kz.space.is_subspace_of(n.space), what + ": k_Z not below a Z-cokernel submodule");
      }
    }
  }
  return t.outcome("closure checks");
}

template <class F>
std::optional<Outcome> closed_sub_functoriality(const Scenario<F>& s) {
  Tally t;
  auto ms = corpus_morphisms(s);
  for (const auto& z : closed_subs(s))
    for (const auto& f : ms) {
      auto sm = map_submodule(sub_Z(*z.value, f.map.source), f.map);
      auto km = map_submodule(k_Z(*z.value, f.map.source), f.map);
      t.check(sm.space.is_subspace_of(sub_Z(*z.value, f.map.target).space), z.name + ", " + f.name + ": f(sub_Z) not in sub_Z");
      t.check(km.space.is_subspace_of(k_Z(*z.value, f.map.target).space), z.name + ", " + f.name + ": f(k_Z) not in k_Z");
    }
  return t.outcome("maps");
}

template <class F>
std::optional<Outcome> k_homology(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s))
    for (const auto& m : s.modules) {
      for (const auto& v : probe_vectors(m.value)) {
        auto n = submodule_generated(m.value, v);
        auto incl = inclusion_of(n);
        // K keeps monos: f restricted to K(N) stays injective
        auto kn = k_Z(*z.value, incl.source);
        t.check(rank(kn.space.basis() * incl.matrix) == kn.dim(), z.name + ": K loses injectivity on " + m.name);
        auto h = k_Z_homology(*z.value, incl);
        auto direct = k_Z(*z.value, m.value).space.intersect(image(incl.matrix)).dim() - kn.dim();
        t.check(h == direct, z.name + ": middle homology on " + m.name + " disagrees with subspace arithmetic");
        // K keeps epis
        auto q = quotient_module(m.value, n);
        auto kq = k_Z(*z.value, q.module);
        t.check(image(k_Z(*z.value, m.value).space.basis() * q.projection.matrix) == kq.space, z.name + ": K loses surjectivity on " + m.name);
      }
    }
  // witness: A = k[x]/(x^3), 0 -> (x^2) -> A -> A/(x^2) -> 0, I = (x)
  if (s.name.rfind("trunc3/", 0) == 0) {
    const auto& a = s.module("A");
    const auto& z = s.closed_sub("Zx");
    auto incl = inclusion_of(Submodule<F>{a, s.ideal("x2").space()});
    t.check(k_Z_homology(*z, incl) == 1, "witness sequence (x^2) -> A: middle homology is not 1");
  }
  return t.outcome("sequences");
}

template <class F>
std::optional<Outcome> gabriel_membership(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    if (!z.value->is_gabriel() || z.value->factors().size() != 2) continue;
    const auto& z1 = *z.value->factors()[0];
    const auto& z2 = *z.value->factors()[1];
    std::vector<std::pair<std::string, Module<F>>> objs;
    for (const auto& m : s.modules) {
      objs.push_back({m.name, m.value});
      objs.push_back({"quot(" + m.name + ")", quot_Z(*z.value, m.value).module});
      objs.push_back({"sub(" + m.name + ")", restrict_to(sub_Z(*z.value, m.value)).module});
    }
    for (const auto& [name, m] : objs) {
      auto m2 = k_Z(z1, m);
      bool filtered = member(z2, restrict_to(m2).module) && member(z1, quotient_module(m, m2).module);
      t.check(member(*z.value, m) == filtered, z.name + ": membership of " + name + " disagrees with the filtration");
    }
  }
  return t.outcome("objects");
}

template <class F>
std::optional<Outcome> ext_cover_independence(const Scenario<F>& s) {
  Tally t;
  for (const auto& m : s.modules) {
    auto free = std::make_shared<const Presentation<F>>(free_cover(m.value));
    auto mini = std::make_shared<const Presentation<F>>(minimal_cover(m.value));
    t.check(free->validate().ok && mini->validate().ok, m.name + ": invalid presentation");
    for (const auto& n : s.modules) {
      auto e1 = ext1(free, n.value);
      auto e2 = ext1(mini, n.value);
      if (!t.check(e1.dim() == e2.dim(), "Ext(" + m.name + "," + n.name + ") depends on the cover")) continue;
      t.check(is_invertible(change_of_presentation(e1, e2)), "Ext(" + m.name + "," + n.name + "): comparison map not invertible");
    }
  }
  return t.outcome("pairs");
}

template <class F>
std::optional<Outcome> ext_roundtrip(const Scenario<F>& s) {
  Tally t;
  std::mt19937_64 rng(17);
  for (const auto& m : s.modules)
    for (const auto& n : s.modules) {
      auto e = ext1(m.value, n.value);
      const auto& k = e.m.field();
      std::vector<Matrix<F>> classes;
      for (std::size_t i = 0; i < e.dim(); ++i) {
        Matrix<F> c(k, 1, e.dim());
        c(0, i) = k.one();
        classes.push_back(c);
      }
      Matrix<F> r(k, 1, e.dim());
      for (std::size_t i = 0; i < e.dim(); ++i) r(0, i) = k.random_small(rng, 2);
      classes.push_back(r);
      classes.push_back(Matrix<F>(k, 1, e.dim()));
      for (const auto& c : classes) {
        auto ext = class_to_extension(e, c);
        const std::string what = "Ext(" + m.name + "," + n.name + ") class " + c.to_string();
        t.check(ext.validate().ok, what + ": extension invalid");
        t.check(extension_to_class(ext, e) == c, what + ": round trip changed the class");
      }
      if (e.dim() > 0) {
        auto split = class_to_extension(e, Matrix<F>(k, 1, e.dim()));
        auto nonsplit = class_to_extension(e, classes[0]);
        t.check(!baer_equivalence(split, nonsplit).has_value(), "Ext(" + m.name + "," + n.name + "): nonzero class is Baer-equivalent to the split one");
      }
    }
  return t.outcome("classes");
}

template <class F>
std::optional<Outcome> ext_bifunctor(const Scenario<F>& s) {
  Tally t;
  auto ms = corpus_morphisms(s);
  std::size_t pairs = 0;
  for (const auto& n : s.modules) {
    for (const auto& f : ms) {
      // f: M' -> M, pulled back along f
      auto em = ext1(f.map.target, n.value);
      auto emp = ext1(f.map.source, n.value);
      auto mat = pullback_map(em, f.map, emp);
      for (std::size_t i = 0; i < em.dim(); ++i) {
        Matrix<F> c(em.m.field(), 1, em.dim());
        c(0, i) = em.m.field().one();
        auto pulled = pull_back_extension(class_to_extension(em, c), f.map);
        t.check(extension_to_class(pulled, emp) == c * mat, f.name + " into " + n.name + ": cocycle and extension pullbacks differ");
      }
      for (const auto& g : ms) {
        if (g.target != f.source || pairs > 40) continue;
        ++pairs;
        auto epp = ext1(g.map.source, n.value);
        auto lhs = pullback_map(em, compose(f.map, g.map), epp);
        auto rhs = mat * pullback_map(emp, g.map, epp);
        t.check(lhs == rhs, "(" + f.name + " o " + g.name + ")* != " + g.name + "* " + f.name + "*");
      }
    }
    for (const auto& m : s.modules) {
      auto e = ext1(m.value, n.value);
      t.check(pullback_map(e, identity(m.value), e) == Matrix<F>::identity(m.value.field(), e.dim()), "identity does not pull back to the identity");
    }
  }
  return t.outcome("pullbacks");
}

template <class F>
std::optional<Outcome> universal_extension_kills(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    if (!z.value->is_point()) continue;
    const auto& p = z.value->point();
    for (const auto& m : s.modules) {
      auto ue = universal_extension(m.value, p);
      const std::string what = z.name + " on " + m.name;
      t.check(ue.extension.validate().ok, what + ": universal extension invalid");
      auto e = ext1(m.value, p);
      t.check(ue.copies == e.dim(), what + ": copies != dim Ext(M, P)");
      auto et = ext1(ue.extension.total, p);
      t.check(pullback_map(e, ue.extension.proj, et).is_zero(), what + ": projection does not kill Ext(M, P)");
      std::vector<Module<F>> copies(ue.copies, p);
      check_iso(t, ue.extension.incl.source, direct_sum(s.algebra, copies).sum, what + ": kernel vs P^n");
    }
  }
  return t.outcome("modules");
}

template <class F>
std::optional<Outcome> ext_sum_product(const Scenario<F>& s) {
  Tally t;
  for (const auto& a : s.modules)
    for (const auto& b : s.modules)
      for (const auto& n : s.modules) {
        auto sc = ext_sum_compat(a.value, b.value, n.value);
        t.check(sc.iso && sc.source_dim == ext1(a.value, n.value).dim() + ext1(b.value, n.value).dim(),
                "Ext(" + a.name + "+" + b.name + ", " + n.name + ") is not the product");
        auto pc = ext_product_compat(n.value, a.value, b.value);
        t.check(pc.iso, "Ext(" + n.name + ", " + a.name + "x" + b.name + ") is not the product");
      }
  return t.outcome("triples");
}

template <class F>
std::optional<Outcome> effacement_ideal(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s))
    for (const auto& m : s.modules) {
      auto e1 = efface_by_ideal(z.value, m.value);
      auto e2 = efface_by_ideal(z.value, m.value, std::optional<Presentation<F>>(minimal_cover(m.value)));
      t.check(member(*z.value, restrict_to(e1.kernel).module), z.name + " on " + m.name + ": kernel outside Z");
      t.check(verifies(e1), z.name + " on " + m.name + ": free-cover effacement fails");
      t.check(verifies(e2), z.name + " on " + m.name + ": minimal-cover effacement fails");
    }
  return t.outcome("effacements");
}

template <class F>
std::optional<Outcome> effacement_point(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    if (!z.value->is_point()) continue;
    const auto& p = z.value->point();
    for (const auto& m : s.modules) {
      auto e = efface_point(z.value, m.value);
      const std::string what = z.name + " on " + m.name;
      t.check(verifies(e), what + ": universal-extension effacement fails");
      auto n = ext1(m.value, p).dim();
      t.check(e.domain.dim() == m.value.dim() + n * p.dim(), what + ": domain dimension != dim M + n dim P");
      std::vector<Module<F>> copies(n, p);
      check_iso(t, restrict_to(e.kernel).module, direct_sum(s.algebra, copies).sum, what + ": kernel vs P^n");
    }
  }
  return t.outcome("effacements");
}

template <class F>
std::optional<Outcome> effacement_composite(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    if (!z.value->is_gabriel()) continue;
    for (const auto& m : s.modules) {
      auto e = efface_natural(z.value, m.value);
      t.check(e.scope == EffacementScope::composite && verifies(e), z.name + " on " + m.name + ": composite effacement fails");
    }
  }
  auto simple = simple_closed_subs(s);
  std::size_t count = 0;
  for (const auto& z1 : simple)
    for (const auto& z2 : simple)
      for (const auto& m : s.modules) {
        if (++count > 24) break;
        auto e1 = std::make_shared<const Effacement<F>>(efface_natural(z1.value, m.value));
        auto e = efface_composite(e1, z2.value);
        t.check(verifies(e), z1.name + "." + z2.name + " on " + m.name + ": composite effacement fails");
      }
  return t.outcome("effacements");
}

template <class F>
std::optional<Outcome> effacement_images(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s))
    for (const auto& m : s.modules) {
      auto e = efface_natural(z.value, m.value);
      std::vector<std::pair<std::string, Morphism<F>>> epis;
      epis.push_back({"quot_Z", quot_Z(*z.value, m.value).projection});
      for (const auto& v : probe_vectors(m.value)) {
        epis.push_back({"M/<" + v.to_string() + ">", quotient_module(m.value, submodule_generated(m.value, v)).projection});
        if (epis.size() > 3) break;
      }
      for (const auto& [name, epi] : epis) {
        auto img = epimorphic_image(e, epi);
        t.check(verifies(img), z.name + " on " + m.name + ": image along " + name + " fails");
      }
    }
  return t.outcome("images");
}

template <class F>
std::optional<Outcome> effacement_sums(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : simple_closed_subs(s)) {
    auto tests = with_pair_sums(default_test_objects(*z.value));
    for (std::size_t a = 0; a < s.modules.size(); ++a)
      for (std::size_t b = a; b < s.modules.size(); ++b) {
        auto e1 = efface_by_ideal(z.value, s.modules[a].value);
        auto e2 = efface_by_ideal(z.value, s.modules[b].value);
        auto sum = block_sum(e1, e2);
        t.check(sum.validate().ok && verify_effacement(sum, tests).ok,
                z.name + ": block sum for " + s.modules[a].name + "+" + s.modules[b].name + " fails");
      }
  }
  return t.outcome("sums");
}

template <class F>
std::optional<Outcome> effacement_test_sums(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    auto base = default_test_objects(*z.value);
    auto tests = with_pair_sums(base);
    for (const auto& m : s.modules) {
      auto e = efface_natural(z.value, m.value);
      if (!verify_effacement(e, base).ok) continue;
      t.check(verify_effacement(e, tests).ok, z.name + " on " + m.name + ": passes the test set but not its sums");
    }
  }
  return t.outcome("effacements");
}

template <class F>
std::optional<Outcome> negative_control(const Scenario<F>& s) {
  Tally t;
  std::size_t rejected = 0;
  for (const auto& z : closed_subs(s)) {
    auto tests = default_test_objects(*z.value);
    for (const auto& m : s.modules) {
      bool vanishing = true;
      auto free = std::make_shared<const Presentation<F>>(free_cover(m.value));
      for (const auto& o : tests) vanishing = vanishing && ext1(free, o.module).dim() == 0;
      auto v = verify_effacement(identity_effacement(z.value, m.value), tests);
      t.check(v.ok == vanishing, z.name + " on " + m.name + ": identity verdict disagrees with Ext against the test set");
      if (!v.ok) {
        ++rejected;
        t.check(v.violation && !v.violation->pullback.is_zero(), z.name + " on " + m.name + ": rejection without a nonzero pullback");
      }
    }
  }
  auto o = t.outcome("identity maps");
  if (o && o->status == Status::pass) o->details += ", " + std::to_string(rejected) + " rejected";
  return o;
}

template <class F>
std::optional<Outcome> lift_solvability(const Scenario<F>& s) {
  Tally t;
  auto ms = corpus_morphisms(s);
  for (const auto& z : closed_subs(s)) {
    auto tests = default_test_objects(*z.value);
    for (const auto& f : ms) {
      auto em = efface_natural(z.value, f.map.source);
      std::vector<std::pair<std::string, Morphism<F>>> targets;
      auto en = efface_natural(z.value, f.map.target);
      targets.push_back({"effacement", en.epi});
      auto ds = direct_sum(s.algebra, {f.map.target, tests.front().module});
      targets.push_back({"projection from N+" + tests.front().name, ds.projections[0]});
      for (const auto& [name, epi] : targets) {
        try {
          auto lift = lift_through(em, f.map, epi);
          t.check(lift.matrix * epi.matrix == em.epi.matrix * f.map.matrix && lift.validate().ok,
                  z.name + ", " + f.name + ": lift through " + name + " does not commute");
        } catch (const std::logic_error&) {
          t.check(false, z.name + ", " + f.name + ": no lift through " + name);
        }
      }
    }
  }
  return t.outcome("lifts");
}

template <class F>
std::optional<Outcome> kernel_normalization(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s))
    for (const auto& m : s.modules) {
      auto pres = free_cover(m.value);
      Effacement<F> raw{m.value, pres.cover, pres.epi, pres.syzygy, EffacementScope::full_z, z.value, "free cover", {}};
      auto e = normalize(raw);
      const std::string what = z.name + " on " + m.name;
      t.check(member(*z.value, restrict_to(e.kernel).module), what + ": normalized kernel outside Z");
      t.check(verifies(e), what + ": normalized free cover fails");
      t.check(k_Z(*z.value, restrict_to(e.kernel).module).dim() == 0, what + ": kernel times I is nonzero");
    }
  return t.outcome("effacements");
}

template <class F>
std::optional<Outcome> oracle_F(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    FunctorContext<F> ctx(z.value);
    for (const auto& m : s.modules) {
      auto v = apply_F(ctx, m.value);
      auto o = oracle_tensor(*z.value, m.value);
      const std::string what = "F_" + z.name + "(" + m.name + ")";
      t.check(v.object.validate().ok && v.structure.validate().ok, what + ": invalid value");
      check_iso(t, v.object, o.object, what + " vs tensor");
      auto kz = k_Z(*z.value, m.value).space;
      t.check(image(v.structure.matrix) == kz && image(o.canonical.matrix) == kz, what + ": image of nu is not M I");
    }
  }
  return t.outcome("values");
}

template <class F>
std::optional<Outcome> oracle_G(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    FunctorContext<F> ctx(z.value);
    for (const auto& m : s.modules) {
      auto c = ctx.container(m.value);
      const std::string what = "G_" + z.name + "(" + m.name + ")";
      t.check(c->embedding.is_mono() && c->incl.is_mono() && c->mbar_into_ambient.is_mono(), what + ": container maps not monic");
      t.check(c->incl.matrix * c->mbar_into_ambient.matrix == c->embedding.matrix, what + ": container triangle");
      t.check(member(*z.value, cokernel_of(c->incl).module), what + ": M_bar / M not in Z");
      auto v = apply_G(ctx, m.value);
      auto o = oracle_hom(*z.value, m.value);
      t.check(v.object.validate().ok && v.structure.validate().ok, what + ": invalid value");
      check_iso(t, v.object, o.object, what + " vs Hom");
      t.check(kernel(v.structure.matrix) == sub_Z(*z.value, m.value).space, what + ": ker mu != sub_Z");
      t.check(kernel(o.canonical.matrix) == sub_Z(*z.value, m.value).space, what + ": kernel of M -> Hom(I, M) != sub_Z");
    }
  }
  return t.outcome("values");
}

template <class F>
std::optional<Outcome> naturality(const Scenario<F>& s) {
  Tally t;
  auto ms = corpus_morphisms(s);
  for (const auto& z : closed_subs(s)) {
    FunctorContext<F> ctx(z.value);
    for (const auto& f : ms) {
      const std::string what = z.name + ", " + f.name;
      auto fm = apply_F(ctx, f.map.source), fn = apply_F(ctx, f.map.target);
      auto Ff = apply_F_mor(ctx, f.map);
      t.check(Ff.validate().ok && Ff.matrix * fn.structure.matrix == fm.structure.matrix * f.map.matrix, what + ": nu not natural");
      auto lifts = lifts_of(ctx, f.map);
      for (const auto& h : lifts.homogeneous) {
        t.check(restrict_lift(ctx, f.map, lifts.particular + h).matrix == Ff.matrix, what + ": F(f) depends on the lift");
      }
      auto gm = apply_G(ctx, f.map.source), gn = apply_G(ctx, f.map.target);
      auto Gf = apply_G_mor(ctx, f.map);
      t.check(Gf.validate().ok && gm.structure.matrix * Gf.matrix == f.map.matrix * gn.structure.matrix, what + ": mu not natural");
      auto exts = extensions_of(ctx, f.map);
      for (const auto& h : exts.homogeneous) {
        t.check(descend_extension(ctx, f.map, exts.particular + h).matrix == Gf.matrix, what + ": G(f) depends on the extension");
      }
      for (const auto& g : ms) {
        if (g.source != f.target) continue;
        auto gf = compose(g.map, f.map);
        t.check(apply_F_mor(ctx, gf).matrix == Ff.matrix * apply_F_mor(ctx, g.map).matrix, what + ": F does not preserve composition with " + g.name);
        t.check(apply_G_mor(ctx, gf).matrix == Gf.matrix * apply_G_mor(ctx, g.map).matrix, what + ": G does not preserve composition with " + g.name);
        break;
      }
    }
    for (const auto& m : s.modules) {
      auto id = identity(m.value);
      auto fm = apply_F(ctx, m.value);
      auto gm = apply_G(ctx, m.value);
      t.check(apply_F_mor(ctx, id).matrix == Matrix<F>::identity(m.value.field(), fm.object.dim()), z.name + ": F(1) != 1 on " + m.name);
      t.check(apply_G_mor(ctx, id).matrix == Matrix<F>::identity(m.value.field(), gm.object.dim()), z.name + ": G(1) != 1 on " + m.name);
    }
  }
  return t.outcome("maps");
}

template <class F>
std::optional<Outcome> choice_independence(const Scenario<F>& s) {
  Tally t;
  FunctorOptions alt;
  alt.cover = CoverChoice::minimal;
  alt.strategy = EffacementStrategy::ideal;
  alt.container_seed = 7;
  alt.extra_copies = 1;
  FunctorOptions alt2;
  alt2.container_seed = 11;
  for (const auto& z : closed_subs(s)) {
    FunctorContext<F> c1(z.value), c2(z.value, alt), c3(z.value, alt2);
    for (const auto& m : s.modules) {
      for (const auto* other : {&c2, &c3}) {
        auto fi = canonical_F_iso(c1, *other, m.value);
        auto gi = canonical_G_iso(c1, *other, m.value);
        t.check(fi.ok(), z.name + " on " + m.name + ": F choices not canonically isomorphic");
        t.check(gi.ok(), z.name + " on " + m.name + ": G choices not canonically isomorphic");
        check_iso(t, apply_F(c1, m.value).object, apply_F(*other, m.value).object, "F_" + z.name + "(" + m.name + ") choices");
        check_iso(t, apply_G(c1, m.value).object, apply_G(*other, m.value).object, "G_" + z.name + "(" + m.name + ") choices");
      }
    }
  }
  return t.outcome("comparisons");
}

template <class F>
std::optional<Outcome> adjunction(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    FunctorContext<F> ctx(z.value);
    for (const auto& m : s.modules)
      for (const auto& n : s.modules) {
        auto r = adjunction_check(ctx, m.value, n.value);
        t.check(r.ok(), z.name + " on (" + m.name + ", " + n.name + "): " + r.describe());
      }
  }
  return t.outcome("pairs");
}

template <class F>
std::optional<Outcome> exactness(const Scenario<F>& s) {
  Tally t;
  auto seqs = corpus_sequences(s);
  for (const auto& z : closed_subs(s)) {
    FunctorContext<F> ctx(z.value);
    for (const auto& [name, ses] : seqs) {
      auto r = exactness_suite(ctx, ses);
      t.check(r.ok, z.name + " on " + name + ": " + r.failure);
    }
  }
  return t.outcome("sequences");
}

template <class F>
std::optional<Outcome> gabriel_functor(const Scenario<F>& s) {
  Tally t;
  auto simple = simple_closed_subs(s);
  for (const auto& z1 : simple)
    for (const auto& z2 : simple)
      for (const auto& m : s.modules) {
        auto r = gabriel_functor_check(z1.value, z2.value, m.value);
        if (r.verdict == "undetermined") t.unknown(z1.name + "." + z2.name + " on " + m.name + ": iso search undetermined");
        else t.check(r.ok && r.nu_zero_on_members, z1.name + "." + z2.name + " on " + m.name + ": dim " + std::to_string(r.dim_F) + " vs oracle " + std::to_string(r.dim_oracle) + " (" + r.verdict + ")");
      }
  return t.outcome("instances");
}

template <class F>
std::optional<Outcome> self_effacing(const Scenario<F>& s) {
  Tally t;
  std::vector<TestObject<F>> gens;
  gens.push_back({"A", Module<F>::regular(s.algebra)});
  for (const auto& m : s.modules) gens.push_back({m.name, m.value});
  for (const auto& z : closed_subs(s)) {
    auto r = self_effacing_check(*z.value, gens);
    t.check(std::find(r.self_effacing.begin(), r.self_effacing.end(), "A") != r.self_effacing.end(), z.name + ": A is not self-effacing");
    std::vector<TestObject<F>> injectives{{"D(A/I)", dual_quotient_module(z.value->ideal())}};
    if (z.value->is_point()) injectives.push_back({"P", z.value->point()});
    for (const auto& g : gens) {
      auto free = std::make_shared<const Presentation<F>>(free_cover(g.module));
      for (const auto& e : injectives) {
        bool fails = ext1(free, e.module).dim() > 0;
        bool listed = std::find(r.failing.begin(), r.failing.end(), std::make_pair(g.name, e.name)) != r.failing.end();
        t.check(fails == listed, z.name + ": (" + g.name + ", " + e.name + ") misreported");
      }
    }
  }
  return t.outcome("generators");
}

template <class F>
std::optional<Outcome> well_closed(const Scenario<F>& s) {
  Tally t;
  for (const auto& z : closed_subs(s)) {
    auto tests = default_test_objects(*z.value);
    FunctorContext<F> ctx(z.value);
    for (const auto& m : s.modules) {
      const std::string what = z.name + " on " + m.name;
      auto e = ctx.effacement(m.value);
      t.check(verifies(*e) && member(*z.value, restrict_to(e->kernel).module), what + ": no effacement with kernel in Z");
      t.check(apply_F(ctx, m.value).object.dim() == oracle_tensor(*z.value, m.value).object.dim(), what + ": F disagrees with the tensor functor");
      for (const auto& n1 : tests)
        for (const auto& n2 : tests)
          t.check(ext_product_compat(m.value, n1.module, n2.module).iso, what + ": Ext(M, " + n1.name + " x " + n2.name + ") not a product");
    }
  }
  return t.outcome("conditions");
}

template <class F>
std::optional<Outcome> scenario_roundtrip(const Scenario<F>& s) {
  Tally t;
  t.check(s.validate().ok, "scenario does not validate: " + s.validate().message);
  const std::string once = serialize_scenario(AnyScenario{s});
  auto back = parse_scenario(once);
  t.check(serialize_scenario(back) == once, "serialize -> parse -> serialize is not stable");
  return t.outcome("round trips");
}

template <class F>
std::optional<Outcome> random_modules(const Scenario<F>& s) {
  Tally t;
  t.check(random_module(s.algebra, 0, 1).dim() == 0, "dim 0 is not the zero module");
  for (std::size_t d = 1; d <= 6; ++d)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto m = random_module(s.algebra, d, seed * 1000 + d);
      t.check(m.dim() == d && m.validate().ok, "random module of dim " + std::to_string(d) + " is invalid");
      t.check(random_module(s.algebra, d, seed * 1000 + d).fingerprint() == m.fingerprint(), "random module not reproducible");
    }
  return t.outcome("modules");
}

template <class F>
std::optional<Outcome> expectations(const Scenario<F>& s) {
  Tally t;
  for (const auto& e : s.expected) {
    std::int64_t got = -1;
    std::string extra;
    if (e.kind == "dim_F") {
      got = static_cast<std::int64_t>(apply_F(FunctorContext<F>(s.closed_sub(e.z)), s.module(e.m)).object.dim());
    } else if (e.kind == "dim_G") {
      got = static_cast<std::int64_t>(apply_G(FunctorContext<F>(s.closed_sub(e.z)), s.module(e.m)).object.dim());
    } else if (e.kind == "dim_ext1") {
      got = static_cast<std::int64_t>(ext1(s.module(e.m), s.module(e.n)).dim());
    } else if (e.kind == "iso") {
      auto r = is_isomorphic(s.module(e.m), s.module(e.n));
      if (r.verdict == IsoVerdict::undetermined) {
        t.unknown("iso " + e.m + " " + e.n + " undetermined");
        continue;
      }
      got = r.yes() ? 1 : 0;
    } else if (e.kind == "copies") {
      got = static_cast<std::int64_t>(universal_extension(s.module(e.m), s.closed_sub(e.z)->point()).copies);
    } else if (e.kind == "domain_iso") {
      auto r = is_isomorphic(efface_natural(s.closed_sub(e.z), s.module(e.m)).domain, s.module(e.n));
      if (r.verdict == IsoVerdict::undetermined) {
        t.unknown("domain iso undetermined");
        continue;
      }
      got = r.yes() ? 1 : 0;
    } else if (e.kind == "effacement") {
      const auto& z = s.closed_sub(e.z);
      const auto& m = s.module(e.m);
      Effacement<F> ef = e.strategy == "identity" ? identity_effacement(z, m)
                         : e.strategy == "ideal"  ? efface_by_ideal(z, m)
                                                  : efface_natural(z, m);
      auto v = verify_effacement(ef);
      got = ef.validate().ok && v.ok ? 1 : 0;
      if (v.violation) {
        extra = ", violation against " + v.violation->test_object + ", class " + v.violation->class_coeffs.to_string() +
                ", pullback " + v.violation->pullback.to_string();
      }
    } else {
      throw InputError("unknown expectation kind '" + e.kind + "'");
    }
    std::string where = e.kind;
    for (const auto* part : {&e.z, &e.m, &e.n, &e.strategy})
      if (!part->empty()) where += " " + *part;
    t.check(got == e.value, where + ": expected " + std::to_string(e.value) + ", got " + std::to_string(got) + extra);
  }
  return t.outcome("expectations");
}

template <class F>
std::optional<Outcome> command_layer(const Scenario<F>& s) {
  Tally t;
  const AnyScenario any{s};
  for (const auto& z : closed_subs(s)) {
    for (const auto& m : s.modules) {
      auto rf = cmd_functor(any, z.name, m.name, Which::F);
      auto rg = cmd_functor(any, z.name, m.name, Which::G);
      t.check(rf.exit_code() == 0, "functor F " + z.name + " " + m.name + " failed");
      t.check(rg.exit_code() == 0, "functor G " + z.name + " " + m.name + " failed");
      const std::string strategy = z.value->is_point() ? "point" : z.value->is_gabriel() ? "composite" : "ideal";
      t.check(cmd_efface(any, z.name, m.name, strategy).exit_code() == 0, "efface " + z.name + " " + m.name + " failed");
    }
  }
  bool caught = false;
  try {
    cmd_functor(any, "no such closed subcategory", s.modules.front().name, Which::F);
  } catch (const InputError&) {
    caught = true;
  }
  t.check(caught, "unknown names are not reported as input errors");
  CheckOptions opts;
  opts.only = {"expectations"};
  opts.parallel = false;
  auto a = cmd_check({any}, opts).jsonl();
  auto b = cmd_check({any}, opts).jsonl();
  t.check(a == b, "check reports are not deterministic");
  return t.outcome("command runs");
}

std::optional<Outcome> registry_integrity(const AnyScenario&) {
  Tally t;
  const auto& reg = registry();
  t.check(reg.size() >= 20, "fewer than 20 cases");
  std::set<std::string> ids;
  for (const auto& c : reg) {
    t.check(ids.insert(c.id).second, "duplicate case id " + c.id);
    t.check(!c.claim.empty() && static_cast<bool>(c.run), c.id + ": missing claim or assertion");
    t.check(c.completeness == Completeness::complete_at_finite_dim || !c.finite_shadow.empty(), c.id + ": spot check without a named finite shadow");
  }
  auto gaps = coverage_gaps();
  t.check(gaps.empty(), "uncovered operations: " + (gaps.empty() ? std::string() : gaps.front()));
  t.check(!cases_tagged("closed-point").empty(), "no closed-point cases");
  return t.outcome("registry checks");
}

template <class Fn>
std::function<std::optional<Outcome>(const AnyScenario&)> visiting(Fn fn) {
  return [fn](const AnyScenario& s) { return std::visit(fn, s); };
}

#define EFFACENGINE_CASE(fn) visiting([](const auto& s) { return fn(s); })

std::vector<PropertyCase> build_registry() {
  using C = Completeness;
  std::vector<PropertyCase> r;
  r.push_back({"linear-algebra", "rank plus nullity is the row count; serial and parallel elimination agree; quotient maps split",
               {"linear-algebra"}, C::spot_check, "action and Hom-basis matrices of the scenario", {}, EFFACENGINE_CASE(linear_algebra)});
  r.push_back({"ideal-laws", "ideal generation is idempotent and monotone; I J lies in I and J; products associate; annihilators are pointwise",
               {"algebra"}, C::complete_at_finite_dim, "", {"ideal_product", "annihilator_ideal"}, EFFACENGINE_CASE(ideal_laws)});
  r.push_back({"module-exactness", "kernel, image and cokernel dimensions add up and image is isomorphic to source mod kernel",
               {"modules"}, C::spot_check, "Hom-basis morphisms between scenario modules", {}, EFFACENGINE_CASE(module_exactness)});
  r.push_back({"biproduct-hom", "Hom out of a direct sum is the product of the Hom spaces",
               {"modules"}, C::spot_check, "pairs of scenario modules", {"direct_sum"}, EFFACENGINE_CASE(biproduct_hom)});
  r.push_back({"pullback-pushout", "pullbacks and pushouts satisfy their universal properties",
               {"modules"}, C::spot_check, "cones from scenario modules over morphism pairs", {"pullback", "pushout"}, EFFACENGINE_CASE(pullback_pushout)});
  r.push_back({"closed-sub-universality", "sub_Z is the largest subobject in Z and k_Z the smallest with quotient in Z",
               {"closed-sub"}, C::spot_check, "cyclic submodules on basis vectors and adjacent sums", {"member", "sub_Z", "k_Z", "quot_Z", "c_Z"}, EFFACENGINE_CASE(closed_sub_universality)});
  r.push_back({"closed-sub-functoriality", "morphisms carry sub_Z into sub_Z and k_Z into k_Z",
               {"closed-sub"}, C::spot_check, "Hom-basis morphisms", {"sub_Z", "k_Z"}, EFFACENGINE_CASE(closed_sub_functoriality)});
  r.push_back({"k-middle-homology", "the functor M -> MI keeps monos and epis but is not middle exact",
               {"closed-sub"}, C::spot_check, "cyclic inclusions and quotients; the (x^2) in k[x]/(x^3) witness", {"k_Z"}, EFFACENGINE_CASE(k_homology)});
  r.push_back({"gabriel-membership", "M lies in Z1.Z2 iff it has a subobject in Z2 with quotient in Z1",
               {"closed-sub", "gabriel"}, C::spot_check, "scenario modules and their Z-sub/quotients", {"member"}, EFFACENGINE_CASE(gabriel_membership)});
  r.push_back({"ext-cover-independence", "Ext^1 does not depend on the free cover",
               {"homology"}, C::spot_check, "free versus minimal cover", {"ext1"}, EFFACENGINE_CASE(ext_cover_independence)});
  r.push_back({"ext-roundtrip", "extensions and Ext^1 classes correspond bijectively",
               {"homology"}, C::spot_check, "basis classes, one random class, zero", {"class_to_extension", "extension_to_class"}, EFFACENGINE_CASE(ext_roundtrip)});
  r.push_back({"ext-bifunctor", "pullback on Ext^1 is contravariantly functorial and matches the pullback of extensions",
               {"homology"}, C::spot_check, "composable Hom-basis morphisms", {"pullback_map"}, EFFACENGINE_CASE(ext_bifunctor)});
  r.push_back({"universal-extension", "the universal extension by Ext^1(M, P) copies of P kills Ext^1(-, P) on pulling back",
               {"homology", "closed-point"}, C::complete_at_finite_dim, "", {"universal_extension"}, EFFACENGINE_CASE(universal_extension_kills)});
  r.push_back({"ext-sum-product", "Ext^1 turns finite sums in the first slot and finite products in the second into products",
               {"homology"}, C::spot_check, "two-term sums and products of scenario modules", {"ext_sum_compat"}, EFFACENGINE_CASE(ext_sum_product)});
  r.push_back({"effacement-ideal", "P / KI -> M is an effacement with kernel in Z",
               {"effacement"}, C::spot_check, "finite test set A/I, D(A/I) and cyclic quotients", {"efface_by_ideal", "verify_effacement"}, EFFACENGINE_CASE(effacement_ideal)});
  r.push_back({"effacement-point", "for a closed point the universal extension is an effacement whose kernel is P^n, injective in Z",
               {"effacement", "closed-point"}, C::spot_check, "test objects P and P+P", {"efface_point", "verify_effacement"}, EFFACENGINE_CASE(effacement_point)});
  r.push_back({"effacement-composite", "composing an effacement for Z1 with one for Z2 gives an effacement for Z1.Z2",
               {"effacement", "gabriel"}, C::spot_check, "ordered pairs of scenario closed subcategories", {"efface_composite"}, EFFACENGINE_CASE(effacement_composite)});
  r.push_back({"effacement-epi-image", "effacements pass to epimorphic images",
               {"effacement"}, C::spot_check, "quot_Z and cyclic quotients", {"verify_effacement"}, EFFACENGINE_CASE(effacement_images)});
  r.push_back({"effacement-direct-sum", "the direct sum of effacements is an effacement of the direct sum",
               {"effacement"}, C::spot_check, "pairs, tested against the test set and its pairwise sums", {"verify_effacement"}, EFFACENGINE_CASE(effacement_sums)});
  r.push_back({"effacement-test-sums", "an effacement against a test set is one against sums of its members",
               {"effacement"}, C::spot_check, "pairwise sums of the test objects", {"verify_effacement"}, EFFACENGINE_CASE(effacement_test_sums)});
  r.push_back({"effacement-negative-control", "an identity map is rejected exactly when Ext^1 against the test set is nonzero",
               {"effacement", "closed-point"}, C::spot_check, "identity maps on scenario modules", {"verify_effacement"}, EFFACENGINE_CASE(negative_control)});
  r.push_back({"lift-solvability", "maps lift through an effacement along any epi with kernel in Z",
               {"effacement"}, C::spot_check, "the target effacement and N+T -> N for a test object T", {"lift_through"}, EFFACENGINE_CASE(lift_solvability)});
  r.push_back({"kernel-normalization", "dividing the kernel by kernel times I keeps an effacement and puts the kernel in Z",
               {"effacement"}, C::spot_check, "free covers", {"efface_by_ideal"}, EFFACENGINE_CASE(kernel_normalization)});
  r.push_back({"functor-F-oracle", "F(M) is M tensor I with nu onto M I",
               {"functors"}, C::spot_check, "scenario modules and closed subcategories", {"apply_F", "oracle_tensor"}, EFFACENGINE_CASE(oracle_F)});
  r.push_back({"functor-G-oracle", "G(M) is Hom(I, M) with ker mu = sub_Z(M)",
               {"functors"}, C::spot_check, "scenario modules and closed subcategories", {"apply_G", "oracle_hom", "injective_effacement"}, EFFACENGINE_CASE(oracle_G)});
  r.push_back({"functor-naturality", "F and G are functors, independent of lifts and extensions, and nu, mu are natural",
               {"functors"}, C::spot_check, "Hom-basis morphisms and one composable partner each", {"apply_F_mor", "apply_G_mor"}, EFFACENGINE_CASE(naturality)});
  r.push_back({"choice-independence", "other covers, containers and seeds give canonically isomorphic functors",
               {"functors"}, C::spot_check, "two alternate option sets", {"apply_F", "apply_G"}, EFFACENGINE_CASE(choice_independence)});
  r.push_back({"adjunction", "Hom(F M, N) = Hom(M, G N) via phi and psi with matching kernels",
               {"functors"}, C::spot_check, "all ordered pairs of scenario modules", {"adjunction_check"}, EFFACENGINE_CASE(adjunction)});
  r.push_back({"exactness", "F is right exact, G left exact, coker nu = quot_Z and ker mu = sub_Z",
               {"functors"}, C::spot_check, "Z-filtrations, one nonsplit and one split extension per pair", {"exactness_suite"}, EFFACENGINE_CASE(exactness)});
  r.push_back({"gabriel-functor", "F for Z1.Z2 built from composite effacements is tensoring with I1 I2",
               {"functors", "gabriel"}, C::spot_check, "ordered pairs of scenario closed subcategories", {"gabriel_functor_check"}, EFFACENGINE_CASE(gabriel_functor)});
  r.push_back({"self-effacing", "generators with Ext^1(O, E) = 0 against the injectives of Z are self-effacing",
               {"functors", "closed-point"}, C::spot_check, "A, the scenario modules; injectives D(A/I) and the point", {"self_effacing_check"}, EFFACENGINE_CASE(self_effacing)});
  r.push_back({"well-closed", "effacements with kernel in Z, the left adjoint F, and Ext^1 commuting with products occur together",
               {"functors", "well-closed"}, C::spot_check, "scenario modules, products of two test objects", {"ext_sum_compat", "apply_F"}, EFFACENGINE_CASE(well_closed)});
  r.push_back({"scenario-roundtrip", "scenarios validate and survive serialization",
               {"corpus"}, C::complete_at_finite_dim, "", {"builtin_scenarios"}, EFFACENGINE_CASE(scenario_roundtrip)});
  r.push_back({"random-modules", "random modules are valid and reproducible",
               {"corpus"}, C::spot_check, "dims 0 to 6, three seeds", {}, EFFACENGINE_CASE(random_modules)});
  r.push_back({"expectations", "recorded scenario values are reproduced",
               {"corpus"}, C::complete_at_finite_dim, "", {"builtin_scenarios"}, EFFACENGINE_CASE(expectations)});
  r.push_back({"command-layer", "functor, efface and check commands succeed on valid names and are deterministic",
               {"cli"}, C::spot_check, "every closed subcategory and module of the scenario", {"cmd_functor", "cmd_efface", "cmd_check"}, EFFACENGINE_CASE(command_layer)});
  r.push_back({"registry-integrity", "case ids are unique, spot checks name their finite shadow, every operation is covered",
               {"suite"}, C::complete_at_finite_dim, "", {"registry"}, registry_integrity});
  return r;
}

#undef EFFACENGINE_CASE

}  // namespace

const std::vector<PropertyCase>& registry() {
  static const std::vector<PropertyCase> r = build_registry();
  return r;
}

const PropertyCase* find_case(const std::string& id) {
  for (const auto& c : registry())
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<const PropertyCase*> cases_tagged(const std::string& tag) {
  std::vector<const PropertyCase*> out;
  for (const auto& c : registry())
    if (std::find(c.tags.begin(), c.tags.end(), tag) != c.tags.end()) out.push_back(&c);
  return out;
}

const std::vector<std::string>& required_operations() {
  static const std::vector<std::string> ops = {
      "ideal_product", "annihilator_ideal", "direct_sum", "pullback", "pushout", "member", "sub_Z", "k_Z",
      "quot_Z", "c_Z", "ext1", "class_to_extension", "extension_to_class", "pullback_map", "universal_extension",
      "ext_sum_compat", "efface_by_ideal", "efface_point", "efface_composite", "verify_effacement", "lift_through",
      "apply_F", "apply_F_mor", "injective_effacement", "apply_G", "apply_G_mor", "oracle_tensor", "oracle_hom",
      "adjunction_check", "exactness_suite", "gabriel_functor_check", "self_effacing_check", "builtin_scenarios",
      "cmd_functor", "cmd_efface", "cmd_check", "registry"};
  return ops;
}

std::vector<std::string> coverage_gaps() {
  std::set<std::string> covered;
  for (const auto& c : registry()) covered.insert(c.covers.begin(), c.covers.end());
  std::vector<std::string> gaps;
  for (const auto& op : required_operations())
    if (!covered.count(op)) gaps.push_back(op);
  return gaps;
}

namespace {

template <class F>
Scenario<F> trial_from(const Scenario<F>& base, std::uint64_t seed, std::size_t index) {
  Scenario<F> s = base;
  s.name = "trial-" + std::to_string(index) + "/" + base.name;
  s.expected.clear();
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + index);
  // keep only the modules point subcategories refer to
  std::set<std::string> keep;
  for (const auto& [spec, z] : base.closed_subs)
    if (spec.kind == "point") keep.insert(spec.refs.begin(), spec.refs.end());
  std::vector<Named<Module<F>>> mods;
  for (const auto& m : base.modules)
    if (keep.count(m.name)) mods.push_back(m);
  s.modules = mods;
  const std::size_t d1 = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
  const std::size_t d2 = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  s.add_module("R1", random_module(s.algebra, d1, rng()));
  s.add_module("R2", random_module(s.algebra, d2, rng()));
  return s;
}

}  // namespace

std::vector<AnyScenario> trial_scenarios(std::uint64_t seed, std::size_t count) {
  std::vector<AnyScenario> bases;
  for (auto& s : builtin_scenarios()) {
    bool small = std::visit([](const auto& x) { return x.algebra->dim() <= 4; }, s);
    if (small) bases.push_back(std::move(s));
  }
  std::vector<AnyScenario> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& base = bases[i % bases.size()];
    out.push_back(std::visit([&](const auto& x) { return AnyScenario{trial_from(x, seed, i)}; }, base));
  }
  return out;
}

Report run_suite(const std::vector<AnyScenario>& scenarios, const SuiteOptions& options) {
  std::vector<const PropertyCase*> cases;
  for (const auto& c : registry())
    if (options.only.empty() || std::find(options.only.begin(), options.only.end(), c.id) != options.only.end()) cases.push_back(&c);
  const std::size_t total = cases.size() * scenarios.size();
  std::vector<std::optional<CheckRow>> rows(total);
  const long long n = static_cast<long long>(total);
#pragma omp parallel for schedule(dynamic, 1) if (options.parallel)
  for (long long idx = 0; idx < n; ++idx) {
    const auto& c = *cases[static_cast<std::size_t>(idx) % cases.size()];
    const auto& s = scenarios[static_cast<std::size_t>(idx) / cases.size()];
    const auto start = std::chrono::steady_clock::now();
    std::optional<Outcome> o;
    try {
      o = c.run(s);
    } catch (const std::exception& e) {
      o = Outcome{Status::fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o) rows[static_cast<std::size_t>(idx)] = CheckRow{c.id + "/" + scenario_name(s), o->status, o->details, secs};
  }
  Report r;
  r.command = "check";
  r.seed = options.seed;
  for (auto& row : rows)
    if (row) r.checks.push_back(std::move(*row));
  r.sort();
  return r;
}

}  // namespace effacengine
