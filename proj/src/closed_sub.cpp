#include "effacengine/closed_sub.hpp"

#include <stdexcept>

namespace effacengine {

namespace {

// Smallest subspace containing the rows of `vectors` and stable under the given maps.
template <class F>
Subspace<F> stable_closure(const Matrix<F>& vectors, const std::vector<Matrix<F>>& maps) {
  const auto& k = vectors.field();
  auto current = Subspace<F>::span(vectors);
  while (true) {
    std::vector<Matrix<F>> parts{current.basis()};
    for (const auto& a : maps) parts.push_back(current.basis() * a);
    auto next = Subspace<F>::span(Matrix<F>::vstack(k, vectors.cols(), parts));
    if (next.dim() == current.dim()) return current;
    current = std::move(next);
  }
}

template <class F>
Matrix<F> element_action(const Module<F>& m, const Matrix<F>& element) {
  return m.act(Matrix<F>::identity(m.field(), m.dim()), element);
}

template <class F>
SimplicityCertificate<F> enumerate_vectors(const Module<F>& m) {
  const auto& k = m.field();
  const std::size_t n = m.dim();
  const std::uint64_t q = k.cardinality();
  // vectors whose first nonzero coordinate is 1
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::uint64_t tail = 1;
    for (std::size_t t = lead + 1; t < n; ++t) tail *= q;
    for (std::uint64_t code = 0; code < tail; ++code) {
      Matrix<F> v(k, 1, n);
      v(0, lead) = k.one();
      std::uint64_t c = code;
      for (std::size_t t = lead + 1; t < n; ++t) {
        v(0, t) = k.element_at(c % q);
        c /= q;
      }
      if (submodule_generated(m, v).dim() < n) return {Simplicity::not_simple, "enumeration", v};
    }
  }
  return {Simplicity::simple, "enumeration", std::nullopt};
}

template <class F>
SimplicityCertificate<F> norton(const Module<F>& m) {
  const auto& k = m.field();
  const auto& a = m.algebra();
  const std::size_t n = m.dim();
  std::vector<Matrix<F>> transposed;
  for (const auto& r : m.actions()) transposed.push_back(r.transpose());

  std::vector<Matrix<F>> elements;
  for (std::size_t i = 0; i < a.dim(); ++i) elements.push_back(a.basis_element(i));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j) elements.push_back(a.basis_element(i) + a.basis_element(j));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) elements.push_back(a.product(i, j));

  for (const auto& el : elements) {
    Matrix<F> base = element_action(m, el);
    for (long long lambda : {0, 1, -1, 2, -2}) {
      Matrix<F> theta = base;
      theta.add_scaled(k.neg(k.from_int(lambda)), Matrix<F>::identity(k, n));
      auto ker = kernel(theta);
      if (ker.dim() != 1) continue;
      Matrix<F> v = ker.basis();
      if (submodule_generated(m, v).dim() < n) return {Simplicity::not_simple, "norton", v};
      auto kert = kernel(theta.transpose());
      auto w_span = stable_closure(kert.basis(), transposed);
      if (w_span.dim() < n) {
        auto sub = kernel(w_span.basis().transpose());
        return {Simplicity::not_simple, "norton", sub.basis().row_matrix(0)};
      }
      return {Simplicity::simple, "norton", el};
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    Matrix<F> v(k, 1, n);
    v(0, b) = k.one();
    if (submodule_generated(m, v).dim() < n) return {Simplicity::not_simple, "basis vector", v};
  }
  return {Simplicity::undetermined, "no nullity-one element found", std::nullopt};
}

template <class F>
Ideal<F> realize(const typename ClosedSub<F>::Descriptor& d) {
  using Z = ClosedSub<F>;
  if (auto* p = std::get_if<typename Z::ByIdeal>(&d)) return p->ideal;
  if (auto* p = std::get_if<typename Z::ByPoint>(&d)) return annihilator_ideal(p->point);
  const auto& factors = std::get<typename Z::Gabriel>(d).factors;
  Ideal<F> acc = factors.back()->ideal();
  for (std::size_t t = factors.size() - 1; t-- > 0;) acc = ideal_product(factors[t]->ideal(), acc);
  return acc;
}

template <class F>
Submodule<F> preimage(const Quotient<F>& q, const Subspace<F>& s) {
  // {v : v proj in s}
  const auto& k = q.projection.matrix.field();
  Matrix<F> gens = Matrix<F>::vstack(k, q.projection.source.dim(),
                                     {kernel(q.projection.matrix).basis(), s.basis() * q.section});
  return {q.projection.source, Subspace<F>::span(gens)};
}

template <class F>
Submodule<F> sub_intrinsic_factors(const std::vector<ClosedSubPtr<F>>& factors, std::size_t from, const Module<F>& m);
template <class F>
Submodule<F> k_intrinsic_factors(const std::vector<ClosedSubPtr<F>>& factors, std::size_t from, const Module<F>& m);

template <class F>
Submodule<F> sub_intrinsic_factors(const std::vector<ClosedSubPtr<F>>& factors, std::size_t from, const Module<F>& m) {
  if (from + 1 == factors.size()) return sub_Z_intrinsic(*factors[from], m);
  auto bottom = sub_intrinsic_factors(factors, from + 1, m);
  auto q = quotient_module(m, bottom);
  auto top = sub_Z_intrinsic(*factors[from], q.module);
  return preimage(q, top.space);
}

template <class F>
Submodule<F> k_intrinsic_factors(const std::vector<ClosedSubPtr<F>>& factors, std::size_t from, const Module<F>& m) {
  if (from + 1 == factors.size()) return k_Z_intrinsic(*factors[from], m);
  auto top = k_Z_intrinsic(*factors[from], m);
  auto r = restrict_to(top);
  auto inner = k_intrinsic_factors(factors, from + 1, r.module);
  return map_submodule(inner, r.inclusion);
}

}  // namespace

template <class F>
SimplicityCertificate<F> certify_simple(const Module<F>& m, std::size_t budget) {
  if (m.dim() == 0) return {Simplicity::not_simple, "zero module", std::nullopt};
  if (m.dim() == 1) return {Simplicity::simple, "dimension one", std::nullopt};
  if constexpr (F::is_finite()) {
    const auto& k = m.field();
    double count = 1;
    for (std::size_t t = 0; t < m.dim(); ++t) count *= static_cast<double>(k.cardinality());
    if (count <= static_cast<double>(budget)) return enumerate_vectors(m);
  }
  return norton(m);
}

template <class F>
ClosedSubPtr<F> ClosedSub<F>::by_ideal(Ideal<F> ideal) {
  auto realized = ideal;
  return ClosedSubPtr<F>(new ClosedSub(ByIdeal{std::move(ideal)}, std::move(realized)));
}

template <class F>
ClosedSubPtr<F> ClosedSub<F>::by_point(Module<F> point) {
  auto cert = certify_simple(point);
  if (cert.verdict != Simplicity::simple) {
    throw std::invalid_argument("closed point module is not certified simple (" + cert.method + ")");
  }
  Descriptor d = ByPoint{std::move(point), std::move(cert)};
  auto ideal = realize<F>(d);
  return ClosedSubPtr<F>(new ClosedSub(std::move(d), std::move(ideal)));
}

template <class F>
ClosedSubPtr<F> ClosedSub<F>::gabriel(std::vector<ClosedSubPtr<F>> factors) {
  if (factors.empty()) throw std::invalid_argument("Gabriel product of no factors");
  for (const auto& f : factors) {
    if (f->algebra_ptr() != factors.front()->algebra_ptr()) {
      throw std::invalid_argument("Gabriel product of closed subcategories over different algebras");
    }
  }
  Descriptor d = Gabriel{std::move(factors)};
  auto ideal = realize<F>(d);
  return ClosedSubPtr<F>(new ClosedSub(std::move(d), std::move(ideal)));
}

template <class F>
std::string ClosedSub<F>::kind() const {
  if (std::holds_alternative<ByIdeal>(descriptor_)) return "ideal";
  if (std::holds_alternative<ByPoint>(descriptor_)) return "point";
  return "gabriel";
}

template <class F>
AxiomCheck ClosedSub<F>::validate() const {
  auto c = ideal_.check_two_sided();
  if (!c.ok) return c;
  if (auto* p = std::get_if<ByPoint>(&descriptor_)) {
    c = p->point.validate();
    if (!c.ok) return c;
    auto cert = certify_simple(p->point);
    if (cert.verdict != Simplicity::simple) return AxiomCheck::fail("simple", "point module is not certified simple");
    if (!member(*this, p->point)) return AxiomCheck::fail("point", "point module not killed by its annihilator");
  }
  if (auto* g = std::get_if<Gabriel>(&descriptor_)) {
    for (const auto& f : g->factors) {
      c = f->validate();
      if (!c.ok) return c;
    }
  }
  return AxiomCheck::pass();
}

template <class F>
bool member(const ClosedSub<F>& z, const Module<F>& m) {
  if (m.algebra_ptr() != z.algebra_ptr()) throw std::invalid_argument("member: module over another algebra");
  const auto& basis = z.ideal().basis();
  for (std::size_t t = 0; t < basis.rows(); ++t) {
    if (!element_action(m, basis.row_matrix(t)).is_zero()) return false;
  }
  return true;
}

template <class F>
IsoVerdict member_by_point_sum(const ClosedSub<F>& z, const Module<F>& m) {
  const auto& p = z.point();
  if (m.dim() == 0) return IsoVerdict::yes;
  if (m.dim() % p.dim() != 0) return IsoVerdict::no;
  std::vector<Module<F>> copies(m.dim() / p.dim(), p);
  auto sum = direct_sum(m.algebra_ptr(), copies);
  return is_isomorphic(m, sum.sum).verdict;
}

template <class F>
Submodule<F> sub_Z(const ClosedSub<F>& z, const Module<F>& m) {
  const auto& k = m.field();
  const auto& basis = z.ideal().basis();
  if (basis.rows() == 0) return full_submodule(m);
  std::vector<Matrix<F>> parts;
  for (std::size_t t = 0; t < basis.rows(); ++t) parts.push_back(element_action(m, basis.row_matrix(t)));
  return {m, kernel(Matrix<F>::hstack(k, m.dim(), parts))};
}

template <class F>
Submodule<F> k_Z(const ClosedSub<F>& z, const Module<F>& m) {
  const auto& k = m.field();
  const auto& basis = z.ideal().basis();
  std::vector<Matrix<F>> parts;
  for (std::size_t t = 0; t < basis.rows(); ++t) parts.push_back(element_action(m, basis.row_matrix(t)));
  return {m, Subspace<F>::span(Matrix<F>::vstack(k, m.dim(), parts))};
}

template <class F>
Quotient<F> quot_Z(const ClosedSub<F>& z, const Module<F>& m) {
  return quotient_module(m, k_Z(z, m));
}

template <class F>
Quotient<F> c_Z(const ClosedSub<F>& z, const Module<F>& m) {
  return quotient_module(m, sub_Z(z, m));
}

template <class F>
Submodule<F> sub_Z_intrinsic(const ClosedSub<F>& z, const Module<F>& m) {
  using Z = ClosedSub<F>;
  const auto& k = m.field();
  if (auto* p = std::get_if<typename Z::ByPoint>(&z.descriptor())) {
    auto homs = hom_space(p->point, m);
    return {m, Subspace<F>::span(Matrix<F>::vstack(k, m.dim(), homs))};
  }
  if (z.is_gabriel()) return sub_intrinsic_factors(z.factors(), 0, m);
  return sub_Z(z, m);
}

template <class F>
Submodule<F> k_Z_intrinsic(const ClosedSub<F>& z, const Module<F>& m) {
  using Z = ClosedSub<F>;
  const auto& k = m.field();
  if (auto* p = std::get_if<typename Z::ByPoint>(&z.descriptor())) {
    auto homs = hom_space(m, p->point);
    if (homs.empty()) return full_submodule(m);
    return {m, kernel(Matrix<F>::hstack(k, m.dim(), homs))};
  }
  if (z.is_gabriel()) return k_intrinsic_factors(z.factors(), 0, m);
  return k_Z(z, m);
}

template <class F>
Submodule<F> map_submodule(const Submodule<F>& s, const Morphism<F>& f) {
  return {f.target, Subspace<F>::span(s.space.basis() * f.matrix)};
}

template <class F>
std::size_t k_Z_homology(const ClosedSub<F>& z, const Morphism<F>& mono) {
  auto km = k_Z(z, mono.target);
  auto kn = k_Z(z, mono.source);
  auto meet = km.space.intersect(image(mono.matrix));
  auto pushed = map_submodule(kn, mono);
  if (!pushed.space.is_subspace_of(meet)) throw std::logic_error("k_Z is not functorial on the given mono");
  return meet.dim() - pushed.dim();
}

#define EFFACENGINE_INSTANTIATE(F)                                                             \
  template SimplicityCertificate<F> certify_simple(const Module<F>&, std::size_t);             \
  template class ClosedSub<F>;                                                                 \
  template bool member(const ClosedSub<F>&, const Module<F>&);                                 \
  template IsoVerdict member_by_point_sum(const ClosedSub<F>&, const Module<F>&);              \
  template Submodule<F> sub_Z(const ClosedSub<F>&, const Module<F>&);                          \
  template Submodule<F> k_Z(const ClosedSub<F>&, const Module<F>&);                            \
  template Quotient<F> quot_Z(const ClosedSub<F>&, const Module<F>&);                          \
  template Quotient<F> c_Z(const ClosedSub<F>&, const Module<F>&);                             \
  template Submodule<F> sub_Z_intrinsic(const ClosedSub<F>&, const Module<F>&);                \
  template Submodule<F> k_Z_intrinsic(const ClosedSub<F>&, const Module<F>&);                  \
  template Submodule<F> map_submodule(const Submodule<F>&, const Morphism<F>&);                \
  template std::size_t k_Z_homology(const ClosedSub<F>&, const Morphism<F>&);

EFFACENGINE_INSTANTIATE(PrimeField)
EFFACENGINE_INSTANTIATE(Rationals)

#undef EFFACENGINE_INSTANTIATE

}  // namespace effacengine
