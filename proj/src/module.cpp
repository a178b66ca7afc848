#include "effacengine/module.hpp"

#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

namespace effacengine {

namespace {

template <class F>
void require_same_algebra(const Module<F>& a, const Module<F>& b, const char* what) {
  if (!a.same_algebra(b)) throw std::invalid_argument(std::string(what) + ": modules over different algebras");
}

template <class F>
void require_shape(const Matrix<F>& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                                ", got " + m.shape());
  }
}

}  // namespace

// --- Module -----------------------------------------------------------------

template <class F>
Module<F>::Module(AlgebraPtr<F> algebra, std::size_t dim, std::vector<Matrix<F>> action) {
  if (!algebra) throw std::invalid_argument("module without algebra");
  if (action.size() != algebra->dim()) {
    throw std::invalid_argument("module has " + std::to_string(action.size()) + " action matrices, algebra dimension is " +
                                std::to_string(algebra->dim()));
  }
  for (const auto& a : action) require_shape(a, dim, dim, "action matrix");
  auto rep = std::make_shared<Rep>();
  rep->algebra = std::move(algebra);
  rep->dim = dim;
  rep->action = std::move(action);
  rep_ = std::move(rep);
}

template <class F>
Module<F> Module<F>::regular(const AlgebraPtr<F>& algebra) {
  std::vector<Matrix<F>> action;
  for (std::size_t j = 0; j < algebra->dim(); ++j) action.push_back(algebra->right_mult(j));
  return Module(algebra, algebra->dim(), std::move(action));
}

template <class F>
Module<F> Module<F>::zero(const AlgebraPtr<F>& algebra) {
  std::vector<Matrix<F>> action(algebra->dim(), Matrix<F>(algebra->field(), 0, 0));
  return Module(algebra, 0, std::move(action));
}

template <class F>
Module<F> Module<F>::dual_regular(const AlgebraPtr<F>& algebra) {
  const auto& a = *algebra;
  const std::size_t n = a.dim();
  std::vector<Matrix<F>> action;
  for (std::size_t j = 0; j < n; ++j) {
    // (e_i^* . e_j)(e_l) = e_i^*(e_j e_l)
    Matrix<F> rho(a.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) rho(i, l) = a.product(j, l)(0, i);
    action.push_back(std::move(rho));
  }
  return Module(algebra, n, std::move(action));
}

template <class F>
Matrix<F> Module<F>::act(const Matrix<F>& vectors, const Matrix<F>& element) const {
  const auto& k = field();
  Matrix<F> r(k, vectors.rows(), dim());
  for (std::size_t i = 0; i < algebra().dim(); ++i) {
    if (k.is_zero(element(0, i))) continue;
    r.add_scaled(element(0, i), vectors * action(i));
  }
  return r;
}

template <class F>
AxiomCheck Module<F>::validate() const {
  const auto& a = algebra();
  const auto& k = field();
  Matrix<F> unit_action(k, dim(), dim());
  for (std::size_t i = 0; i < a.dim(); ++i) unit_action.add_scaled(a.unit()(0, i), action(i));
  if (!unit_action.is_identity()) return AxiomCheck::fail("unit", "rho(1) is not the identity");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Matrix<F> rhs(k, dim(), dim());
      for (std::size_t l = 0; l < a.dim(); ++l) rhs.add_scaled(a.product(i, j)(0, l), action(l));
      if (!(action(i) * action(j) == rhs)) {
        return AxiomCheck::fail("homomorphism", "rho(" + a.basis_names()[i] + ")rho(" + a.basis_names()[j] +
                                                    ") != rho(" + a.basis_names()[i] + a.basis_names()[j] + ")");
      }
    }
  return AxiomCheck::pass();
}

template <class F>
std::string Module<F>::fingerprint() const {
  std::ostringstream os;
  os << static_cast<const void*>(rep_->algebra.get()) << '|' << dim();
  for (const auto& a : rep_->action) os << '|' << a.to_string();
  return os.str();
}

template <class F>
const GeneratorFrame<F>& Module<F>::frame() const {
  std::call_once(rep_->frame_once, [this] {
    const auto& k = field();
    const std::size_t m = dim();
    const std::size_t na = algebra().dim();
    // greedy over the standard basis, then drop redundant generators
    std::vector<std::size_t> chosen;
    Subspace<F> covered(k, m);
    for (std::size_t b = 0; b < m; ++b) {
      Matrix<F> e(k, 1, m);
      e(0, b) = k.one();
      if (covered.contains(e)) continue;
      chosen.push_back(b);
      Matrix<F> gens(k, chosen.size(), m);
      for (std::size_t t = 0; t < chosen.size(); ++t) gens(t, chosen[t]) = k.one();
      covered = submodule_generated(*this, gens).space;
    }
    for (std::size_t t = 0; t < chosen.size() && chosen.size() > 1;) {
      std::vector<std::size_t> rest;
      for (std::size_t u = 0; u < chosen.size(); ++u)
        if (u != t) rest.push_back(chosen[u]);
      Matrix<F> gens(k, rest.size(), m);
      for (std::size_t u = 0; u < rest.size(); ++u) gens(u, rest[u]) = k.one();
      if (submodule_generated(*this, gens).space.dim() == m) {
        chosen = std::move(rest);
      } else {
        ++t;
      }
    }
    auto frame = std::make_unique<GeneratorFrame<F>>(GeneratorFrame<F>{
        Matrix<F>(k, chosen.size(), m), Matrix<F>(k, chosen.size() * na, m), Matrix<F>(k, m, chosen.size() * na),
        Subspace<F>(k, chosen.size() * na)});
    for (std::size_t t = 0; t < chosen.size(); ++t) frame->generators(t, chosen[t]) = k.one();
    for (std::size_t t = 0; t < chosen.size(); ++t)
      for (std::size_t i = 0; i < na; ++i)
        frame->spread.set_block(t * na + i, 0, frame->generators.row_matrix(t) * action(i));
    LeftSolver<F> solver(frame->spread);
    auto expr = solver.solve(Matrix<F>::identity(k, m));
    if (!expr) throw std::logic_error("generator frame does not span the module");
    frame->expression = std::move(*expr);
    frame->relations = solver.null_space();
    rep_->frame = std::move(frame);
  });
  return *rep_->frame;
}

// --- Morphisms, submodules, extensions ---------------------------------------

template <class F>
AxiomCheck Morphism<F>::validate() const {
  if (!source.same_algebra(target)) return AxiomCheck::fail("algebra", "source and target over different algebras");
  if (matrix.rows() != source.dim() || matrix.cols() != target.dim()) {
    return AxiomCheck::fail("shape", "matrix " + matrix.shape() + " does not match " + std::to_string(source.dim()) +
                                         "x" + std::to_string(target.dim()));
  }
  for (std::size_t i = 0; i < source.algebra().dim(); ++i) {
    if (!(source.action(i) * matrix == matrix * target.action(i))) {
      return AxiomCheck::fail("intertwining", "fails for " + source.algebra().basis_names()[i]);
    }
  }
  return AxiomCheck::pass();
}

template <class F>
Morphism<F> compose(const Morphism<F>& g, const Morphism<F>& f) {
  if (f.target.dim() != g.source.dim()) throw std::invalid_argument("compose: target/source dimension mismatch");
  return {f.source, g.target, f.matrix * g.matrix};
}

template <class F>
AxiomCheck Submodule<F>::validate() const {
  if (space.ambient_dim() != parent.dim()) return AxiomCheck::fail("shape", "subspace ambient dimension mismatch");
  for (std::size_t i = 0; i < parent.algebra().dim(); ++i) {
    if (!space.contains(space.basis() * parent.action(i))) {
      return AxiomCheck::fail("stable", "not stable under " + parent.algebra().basis_names()[i]);
    }
  }
  return AxiomCheck::pass();
}

template <class F>
AxiomCheck Extension<F>::validate() const {
  for (const auto* f : {&incl, &proj}) {
    auto c = f->validate();
    if (!c.ok) return c;
  }
  if (!incl.target.identical(total) && incl.target.dim() != total.dim()) return AxiomCheck::fail("shape", "incl target is not the total module");
  if (!incl.is_mono()) return AxiomCheck::fail("mono", "inclusion is not injective");
  if (!proj.is_epi()) return AxiomCheck::fail("epi", "projection is not surjective");
  if (!(image(incl.matrix) == kernel(proj.matrix))) return AxiomCheck::fail("exact", "image(incl) != kernel(proj)");
  return AxiomCheck::pass();
}

template <class F>
Submodule<F> submodule_generated(const Module<F>& m, const Matrix<F>& vectors) {
  if (vectors.cols() != m.dim()) throw std::invalid_argument("submodule_generated: vectors do not live in the module");
  const auto& k = m.field();
  auto current = Subspace<F>::span(vectors);
  while (true) {
    std::vector<Matrix<F>> parts{current.basis()};
    for (const auto& a : m.actions()) parts.push_back(current.basis() * a);
    auto next = Subspace<F>::span(Matrix<F>::vstack(k, m.dim(), parts));
    if (next.dim() == current.dim()) break;
    current = std::move(next);
  }
  return {m, std::move(current)};
}

template <class F>
Restriction<F> restrict_to(const Submodule<F>& s) {
  const auto& m = s.parent;
  std::vector<Matrix<F>> action;
  for (const auto& a : m.actions()) {
    auto coords = s.space.coordinates(s.space.basis() * a);
    if (!coords) throw std::invalid_argument("restrict_to: subspace is not a submodule");
    action.push_back(std::move(*coords));
  }
  Module<F> sub(m.algebra_ptr(), s.space.dim(), std::move(action));
  return {sub, Morphism<F>{sub, m, s.space.basis()}};
}

template <class F>
Quotient<F> quotient_module(const Module<F>& m, const Submodule<F>& s) {
  if (s.space.ambient_dim() != m.dim()) throw std::invalid_argument("quotient_module: submodule of another module");
  auto q = quotient_space(s.space);
  std::vector<Matrix<F>> action;
  for (const auto& a : m.actions()) action.push_back(q.section * a * q.projection);
  Module<F> quot(m.algebra_ptr(), q.dim, std::move(action));
  return {quot, Morphism<F>{m, quot, q.projection}, q.section};
}

template <class F>
Submodule<F> kernel_of(const Morphism<F>& f) {
  return {f.source, kernel(f.matrix)};
}

template <class F>
Submodule<F> image_of(const Morphism<F>& f) {
  return {f.target, image(f.matrix)};
}

template <class F>
Quotient<F> cokernel_of(const Morphism<F>& f) {
  return quotient_module(f.target, image_of(f));
}

template <class F>
Biproduct<F> direct_sum(const AlgebraPtr<F>& algebra, const std::vector<Module<F>>& ms) {
  const auto& k = algebra->field();
  std::size_t total = 0;
  for (const auto& m : ms) {
    if (m.algebra_ptr() != algebra) throw std::invalid_argument("direct_sum: modules over different algebras");
    total += m.dim();
  }
  std::vector<Matrix<F>> action;
  for (std::size_t i = 0; i < algebra->dim(); ++i) {
    std::vector<Matrix<F>> blocks;
    for (const auto& m : ms) blocks.push_back(m.action(i));
    action.push_back(Matrix<F>::block_diagonal(k, blocks));
  }
  Module<F> sum(algebra, total, std::move(action));
  Biproduct<F> b{sum, {}, {}};
  std::size_t offset = 0;
  for (const auto& m : ms) {
    Matrix<F> inj(k, m.dim(), total), pr(k, total, m.dim());
    for (std::size_t t = 0; t < m.dim(); ++t) {
      inj(t, offset + t) = k.one();
      pr(offset + t, t) = k.one();
    }
    b.injections.push_back({m, sum, inj});
    b.projections.push_back({sum, m, pr});
    offset += m.dim();
  }
  return b;
}

template <class F>
Square<F> pullback(const Morphism<F>& f, const Morphism<F>& g) {
  require_same_algebra(f.source, g.source, "pullback");
  if (f.target.dim() != g.target.dim()) throw std::invalid_argument("pullback: maps have different targets");
  const auto& k = f.source.field();
  auto sum = direct_sum(f.source.algebra_ptr(), {f.source, g.source});
  Matrix<F> stacked = Matrix<F>::vstack(k, f.target.dim(), {f.matrix, g.matrix.scaled(k.neg(k.one()))});
  auto r = restrict_to(Submodule<F>{sum.sum, kernel(stacked)});
  return {r.module, compose(sum.projections[0], r.inclusion), compose(sum.projections[1], r.inclusion)};
}

template <class F>
Square<F> pushout(const Morphism<F>& f, const Morphism<F>& g) {
  require_same_algebra(f.source, g.source, "pushout");
  if (f.source.dim() != g.source.dim()) throw std::invalid_argument("pushout: maps have different sources");
  const auto& k = f.source.field();
  auto sum = direct_sum(f.source.algebra_ptr(), {f.target, g.target});
  Matrix<F> both = Matrix<F>::hstack(k, f.source.dim(), {f.matrix, g.matrix.scaled(k.neg(k.one()))});
  auto q = quotient_module(sum.sum, Submodule<F>{sum.sum, image(both)});
  return {q.module, compose(q.projection, sum.injections[0]), compose(q.projection, sum.injections[1])};
}

// --- Solving for morphisms ---------------------------------------------------

template <class F>
MorphismCondition<F> commutes_after(const Module<F>& source, const Matrix<F>& right, const Matrix<F>& value) {
  const auto& g = source.frame().generators;
  return {g, right, g * value};
}

template <class F>
MorphismCondition<F> restricts_to(const Morphism<F>& incl, const Matrix<F>& value) {
  const auto& g = incl.source.frame().generators;
  const auto& k = incl.source.field();
  return {g * incl.matrix, Matrix<F>::identity(k, value.cols()), g * value};
}

namespace {

// Coefficient block of the linear map Y -> sum_{j,i} w[j,i] Y_j rho_N(e_i) P, with rows
// indexed by unknowns (j, b) and columns by the components c of the result.
template <class F>
void add_condition_columns(Matrix<F>& coeff, std::size_t col0, const Matrix<F>& w, const std::vector<Matrix<F>>& rho_p,
                           std::size_t r, std::size_t na, std::size_t n) {
  const auto& k = coeff.field();
  const std::size_t c_count = rho_p.empty() ? 0 : rho_p[0].cols();
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < na; ++i) {
      const auto& wji = w(0, j * na + i);
      if (k.is_zero(wji)) continue;
      const auto& block = rho_p[i];
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < c_count; ++c) {
          const auto& v = block(b, c);
          if (!k.is_zero(v)) k.axpy_in(coeff(j * n + b, col0 + c), wji, v);
        }
    }
}

template <class F>
Matrix<F> morphism_from_generator_images(const Module<F>& m, const Module<F>& n, const Matrix<F>& y_flat) {
  const auto& fr = m.frame();
  const auto& k = m.field();
  const std::size_t r = fr.generators.rows();
  const std::size_t na = m.algebra().dim();
  Matrix<F> y = Matrix<F>::unflatten(y_flat, r, n.dim());
  Matrix<F> phi(k, r * na, n.dim());
  for (std::size_t j = 0; j < r; ++j) {
    Matrix<F> yj = y.row_matrix(j);
    for (std::size_t i = 0; i < na; ++i) phi.set_block(j * na + i, 0, yj * n.action(i));
  }
  return fr.expression * phi;
}

}  // namespace

template <class F>
std::optional<MorphismSolution<F>> solve_morphism(const Module<F>& m, const Module<F>& n,
                                                  const std::vector<MorphismCondition<F>>& conditions) {
  require_same_algebra(m, n, "solve_morphism");
  const auto& k = m.field();
  const auto& fr = m.frame();
  const std::size_t r = fr.generators.rows();
  const std::size_t na = m.algebra().dim();
  const std::size_t nd = n.dim();
  const std::size_t unknowns = r * nd;

  std::size_t total_cols = fr.relations.dim() * nd;
  for (const auto& c : conditions) {
    if (c.left.cols() != m.dim() || c.right.rows() != nd || c.value.rows() != c.left.rows() ||
        c.value.cols() != c.right.cols()) {
      throw std::invalid_argument("solve_morphism: condition shapes do not match");
    }
    total_cols += c.left.rows() * c.right.cols();
  }
  Matrix<F> coeff(k, unknowns, total_cols);
  Matrix<F> rhs(k, 1, total_cols);

  std::size_t col = 0;
  {
    const auto& id_blocks = n.actions();
    for (std::size_t t = 0; t < fr.relations.dim(); ++t) {
      add_condition_columns(coeff, col, fr.relations.basis().row_matrix(t), id_blocks, r, na, nd);
      col += nd;
    }
  }
  for (const auto& c : conditions) {
    std::vector<Matrix<F>> rho_p;
    for (std::size_t i = 0; i < na; ++i) rho_p.push_back(n.action(i) * c.right);
    Matrix<F> w = c.left * fr.expression;
    for (std::size_t s = 0; s < w.rows(); ++s) {
      add_condition_columns(coeff, col, w.row_matrix(s), rho_p, r, na, nd);
      for (std::size_t t = 0; t < c.right.cols(); ++t) rhs(0, col + t) = c.value(s, t);
      col += c.right.cols();
    }
  }

  LeftSolver<F> solver(coeff);
  auto x = solver.solve(rhs);
  if (!x) return std::nullopt;
  MorphismSolution<F> sol{morphism_from_generator_images(m, n, *x), {}};
  auto null = solver.null_space();
  for (std::size_t t = 0; t < null.dim(); ++t) {
    sol.homogeneous.push_back(morphism_from_generator_images(m, n, null.basis().row_matrix(t)));
  }
  return sol;
}

template <class F>
std::vector<Matrix<F>> hom_space(const Module<F>& m, const Module<F>& n) {
  if (m.dim() == 0 || n.dim() == 0) {
    require_same_algebra(m, n, "hom_space");
    return {};
  }
  return solve_morphism(m, n, {})->homogeneous;
}

template <class F>
std::vector<Matrix<F>> hom_space_naive(const Module<F>& m, const Module<F>& n) {
  require_same_algebra(m, n, "hom_space_naive");
  const auto& k = m.field();
  const std::size_t md = m.dim(), nd = n.dim(), na = m.algebra().dim();
  if (md == 0 || nd == 0) return {};
  // unknown H (md x nd) flattened; equation rho_M(e_i) H - H rho_N(e_i) = 0
  Matrix<F> coeff(k, md * nd, na * md * nd);
  for (std::size_t i = 0; i < na; ++i) {
    const auto& rm = m.action(i);
    const auto& rn = n.action(i);
    const std::size_t base = i * md * nd;
    for (std::size_t a = 0; a < md; ++a)
      for (std::size_t b = 0; b < nd; ++b) {
        // unknown H(a, b) contributes to entry (p, q) of rho_M H with rho_M(p, a) at q = b
        for (std::size_t p = 0; p < md; ++p)
          if (!k.is_zero(rm(p, a))) coeff(a * nd + b, base + p * nd + b) = k.add(coeff(a * nd + b, base + p * nd + b), rm(p, a));
        // and to entry (a, q) of H rho_N with rho_N(b, q)
        for (std::size_t q = 0; q < nd; ++q)
          if (!k.is_zero(rn(b, q))) coeff(a * nd + b, base + a * nd + q) = k.sub(coeff(a * nd + b, base + a * nd + q), rn(b, q));
      }
  }
  auto ker = kernel(coeff);
  std::vector<Matrix<F>> basis;
  for (std::size_t t = 0; t < ker.dim(); ++t) basis.push_back(Matrix<F>::unflatten(ker.basis().row_matrix(t), md, nd));
  return basis;
}

template <class F>
Matrix<F> factor_through_mono(const Matrix<F>& g, const Matrix<F>& mono) {
  auto x = solve(mono, g);
  if (!x) throw std::logic_error("factor_through_mono: map does not land in the image");
  return *x;
}

template <class F>
Restriction<F> change_basis(const Module<F>& m, const Matrix<F>& basis_change) {
  auto inv = inverse(basis_change);
  std::vector<Matrix<F>> action;
  for (const auto& a : m.actions()) action.push_back(basis_change * a * inv);
  Module<F> out(m.algebra_ptr(), m.dim(), std::move(action));
  return {out, Morphism<F>{out, m, basis_change}};
}

std::size_t default_trial_bound() {
  if (const char* env = std::getenv("EFFACENGINE_TRIAL_BOUND")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 256;
}

template <class F>
IsoResult<F> is_isomorphic(const Module<F>& m, const Module<F>& n, const IsoOptions& options) {
  require_same_algebra(m, n, "is_isomorphic");
  const auto& k = m.field();
  if (m.dim() != n.dim()) return {IsoVerdict::no, std::nullopt, "dimensions differ"};
  if (m.dim() == 0) return {IsoVerdict::yes, Matrix<F>(k, 0, 0), "zero modules"};
  // ranks of basis elements and of pairwise sums are invariants
  const std::size_t na = m.algebra().dim();
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = a; b < na; ++b) {
      Matrix<F> x = m.action(a), y = n.action(a);
      if (b != a) {
        x = x + m.action(b);
        y = y + n.action(b);
      }
      if (rank(x) != rank(y)) return {IsoVerdict::no, std::nullopt, "action ranks differ"};
    }
  auto mn = hom_space(m, n);
  auto nm = hom_space(n, m);
  if (mn.size() != nm.size()) {
    return {IsoVerdict::no, std::nullopt,
            "dim Hom(M,N) = " + std::to_string(mn.size()) + " but dim Hom(N,M) = " + std::to_string(nm.size())};
  }
  if (mn.empty()) return {IsoVerdict::no, std::nullopt, "no nonzero morphisms"};
  const std::size_t em = hom_space(m, m).size(), en = hom_space(n, n).size();
  if (em != en || em != mn.size()) {
    return {IsoVerdict::no, std::nullopt,
            "dim End(M) = " + std::to_string(em) + ", dim End(N) = " + std::to_string(en) + ", dim Hom(M,N) = " +
                std::to_string(mn.size())};
  }

  auto accept = [&](const Matrix<F>& h) { return is_invertible(h); };
  for (const auto& h : mn)
    if (accept(h)) return {IsoVerdict::yes, h, "basis element"};
  const long long small[] = {1, -1, 2};
  for (std::size_t a = 0; a < mn.size(); ++a)
    for (std::size_t b = a + 1; b < mn.size(); ++b)
      for (long long c : small) {
        Matrix<F> h = mn[a];
        h.add_scaled(k.from_int(c), mn[b]);
        if (accept(h)) return {IsoVerdict::yes, h, "pair combination"};
      }
  {
    Matrix<F> h = mn[0];
    for (std::size_t a = 1; a < mn.size(); ++a) h = h + mn[a];
    if (accept(h)) return {IsoVerdict::yes, h, "sum of basis"};
  }
  const std::size_t trials = options.trial_bound ? options.trial_bound : default_trial_bound();
  std::mt19937_64 rng(options.seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix<F> h(k, m.dim(), n.dim());
    for (const auto& b : mn) h.add_scaled(k.random_small(rng, 3), b);
    if (accept(h)) return {IsoVerdict::yes, h, "random combination"};
  }
  return {IsoVerdict::undetermined, std::nullopt, "no invertible morphism found in " + std::to_string(trials) + " trials"};
}

template <class F>
Ideal<F> annihilator_ideal(const Module<F>& m) {
  const auto& a = m.algebra();
  const std::size_t d = m.dim();
  Matrix<F> flat(a.field(), a.dim(), d * d);
  for (std::size_t i = 0; i < a.dim(); ++i) flat.set_block(i, 0, m.action(i).flattened());
  return Ideal<F>(m.algebra_ptr(), kernel(flat));
}

#define EFFACENGINE_INSTANTIATE(F)                                                                              \
  template class Module<F>;                                                                                     \
  template struct Morphism<F>;                                                                                  \
  template struct Submodule<F>;                                                                                 \
  template struct Extension<F>;                                                                                 \
  template Morphism<F> compose(const Morphism<F>&, const Morphism<F>&);                                          \
  template Submodule<F> submodule_generated(const Module<F>&, const Matrix<F>&);                                 \
  template Restriction<F> restrict_to(const Submodule<F>&);                                                     \
  template Quotient<F> quotient_module(const Module<F>&, const Submodule<F>&);                                  \
  template Submodule<F> kernel_of(const Morphism<F>&);                                                          \
  template Submodule<F> image_of(const Morphism<F>&);                                                           \
  template Quotient<F> cokernel_of(const Morphism<F>&);                                                         \
  template Biproduct<F> direct_sum(const AlgebraPtr<F>&, const std::vector<Module<F>>&);                        \
  template Square<F> pullback(const Morphism<F>&, const Morphism<F>&);                                          \
  template Square<F> pushout(const Morphism<F>&, const Morphism<F>&);                                           \
  template MorphismCondition<F> commutes_after(const Module<F>&, const Matrix<F>&, const Matrix<F>&);           \
  template MorphismCondition<F> restricts_to(const Morphism<F>&, const Matrix<F>&);                             \
  template std::optional<MorphismSolution<F>> solve_morphism(const Module<F>&, const Module<F>&,                \
                                                             const std::vector<MorphismCondition<F>>&);         \
  template std::vector<Matrix<F>> hom_space(const Module<F>&, const Module<F>&);                                \
  template std::vector<Matrix<F>> hom_space_naive(const Module<F>&, const Module<F>&);                          \
  template Matrix<F> factor_through_mono(const Matrix<F>&, const Matrix<F>&);                                   \
  template Restriction<F> change_basis(const Module<F>&, const Matrix<F>&);                                     \
  template IsoResult<F> is_isomorphic(const Module<F>&, const Module<F>&, const IsoOptions&);                    \
  template Ideal<F> annihilator_ideal(const Module<F>&);

EFFACENGINE_INSTANTIATE(PrimeField)
EFFACENGINE_INSTANTIATE(Rationals)

#undef EFFACENGINE_INSTANTIATE

}  // namespace effacengine
