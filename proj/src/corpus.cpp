#include "effacengine/corpus.hpp"

#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <json.hpp>

namespace effacengine {

using json = nlohmann::ordered_json;

// --- Scenario ---------------------------------------------------------------

namespace {

template <class T>
const T& find_named(const std::vector<Named<T>>& items, const std::string& n, const char* what) {
  for (const auto& it : items)
    if (it.name == n) return it.value;
  throw InputError(std::string("unknown ") + what + " '" + n + "'");
}

}  // namespace

template <class F>
const Ideal<F>& Scenario<F>::ideal(const std::string& n) const {
  return find_named(ideals, n, "ideal");
}

template <class F>
const Module<F>& Scenario<F>::module(const std::string& n) const {
  return find_named(modules, n, "module");
}

template <class F>
const ClosedSubPtr<F>& Scenario<F>::closed_sub(const std::string& n) const {
  for (const auto& [spec, named] : closed_subs)
    if (named.name == n) return named.value;
  throw InputError("unknown closed subcategory '" + n + "'");
}

template <class F>
void Scenario<F>::add_closed_sub(std::string n, ClosedSubSpec spec) {
  ClosedSubPtr<F> z;
  if (spec.kind == "ideal") {
    if (spec.refs.size() != 1) throw InputError("closed subcategory '" + n + "': ideal form takes one ideal name");
    z = ClosedSub<F>::by_ideal(ideal(spec.refs[0]));
  } else if (spec.kind == "point") {
    if (spec.refs.size() != 1) throw InputError("closed subcategory '" + n + "': point form takes one module name");
    try {
      z = ClosedSub<F>::by_point(module(spec.refs[0]));
    } catch (const std::invalid_argument& e) {
      throw InputError("closed subcategory '" + n + "': " + e.what());
    }
  } else if (spec.kind == "gabriel") {
    if (spec.refs.empty()) throw InputError("closed subcategory '" + n + "': empty Gabriel product");
    std::vector<ClosedSubPtr<F>> factors;
    for (const auto& r : spec.refs) factors.push_back(closed_sub(r));
    z = ClosedSub<F>::gabriel(std::move(factors));
  } else {
    throw InputError("closed subcategory '" + n + "': unknown kind '" + spec.kind + "'");
  }
  closed_subs.push_back({std::move(spec), {std::move(n), std::move(z)}});
}

template <class F>
AxiomCheck Scenario<F>::validate() const {
  auto c = algebra->validate();
  if (!c.ok) return c;
  for (const auto& i : ideals) {
    c = i.value.check_two_sided();
    if (!c.ok) return AxiomCheck::fail(c.axiom, "ideal " + i.name + ": " + c.message);
  }
  for (const auto& m : modules) {
    c = m.value.validate();
    if (!c.ok) return AxiomCheck::fail(c.axiom, "module " + m.name + ": " + c.message);
  }
  for (const auto& [spec, z] : closed_subs) {
    c = z.value->validate();
    if (!c.ok) return AxiomCheck::fail(c.axiom, "closed subcategory " + z.name + ": " + c.message);
  }
  for (const auto& e : expected) {
    if (e.provenance != "trivial" && e.provenance.rfind("derived:", 0) != 0) {
      return AxiomCheck::fail("provenance", "expectation " + e.kind + " lacks a provenance tag");
    }
  }
  return AxiomCheck::pass();
}

std::string scenario_name(const AnyScenario& s) {
  return std::visit([](const auto& x) { return x.name; }, s);
}

// --- Algebras -----------------------------------------------------------------

namespace {

template <class F>
AlgebraPtr<F> make_algebra(const F& k, std::size_t n, const std::function<std::vector<long long>(std::size_t, std::size_t)>& mult,
                           std::vector<long long> unit, std::vector<std::string> names) {
  std::vector<Matrix<F>> table;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto coeffs = mult(i, j);
      Matrix<F> row(k, 1, n);
      for (std::size_t t = 0; t < n; ++t) row(0, t) = k.from_int(coeffs[t]);
      table.push_back(std::move(row));
    }
  Matrix<F> u(k, 1, n);
  for (std::size_t t = 0; t < n; ++t) u(0, t) = k.from_int(unit[t]);
  return std::make_shared<const Algebra<F>>(k, n, std::move(table), std::move(u), std::move(names));
}

}  // namespace

template <class F>
AlgebraPtr<F> truncated_polynomial_algebra(const F& k, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  std::vector<long long> unit(n, 0);
  unit[0] = 1;
  return make_algebra<F>(
      k, n,
      [n](std::size_t i, std::size_t j) {
        std::vector<long long> r(n, 0);
        if (i + j < n) r[i + j] = 1;
        return r;
      },
      unit, names);
}

template <class F>
AlgebraPtr<F> upper_triangular_algebra(const F& k, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      idx.emplace_back(i, j);
      names.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  const std::size_t d = idx.size();
  std::vector<long long> unit(d, 0);
  for (std::size_t t = 0; t < d; ++t)
    if (idx[t].first == idx[t].second) unit[t] = 1;
  return make_algebra<F>(
      k, d,
      [idx, d](std::size_t a, std::size_t b) {
        std::vector<long long> r(d, 0);
        if (idx[a].second == idx[b].first) {
          for (std::size_t t = 0; t < d; ++t)
            if (idx[t].first == idx[a].first && idx[t].second == idx[b].second) r[t] = 1;
        }
        return r;
      },
      unit, names);
}

template <class F>
AlgebraPtr<F> local_two_generator_algebra(const F& k) {
  return make_algebra<F>(
      k, 3,
      [](std::size_t i, std::size_t j) {
        std::vector<long long> r(3, 0);
        if (i == 0) r[j] = 1;
        else if (j == 0) r[i] = 1;
        return r;
      },
      {1, 0, 0}, {"1", "a", "b"});
}

// --- Builtin scenarios ----------------------------------------------------------

namespace {

template <class F>
Module<F> one_dimensional(const AlgebraPtr<F>& a, const std::vector<long long>& scalars) {
  const auto& k = a->field();
  std::vector<Matrix<F>> action;
  for (long long s : scalars) {
    Matrix<F> m(k, 1, 1);
    m(0, 0) = k.from_int(s);
    action.push_back(std::move(m));
  }
  return Module<F>(a, 1, std::move(action));
}

template <class F>
Module<F> regular_quotient(const Ideal<F>& i) {
  auto a = Module<F>::regular(i.algebra());
  return quotient_module(a, Submodule<F>{a, i.space()}).module;
}

template <class F>
Ideal<F> ideal_of(const AlgebraPtr<F>& a, std::initializer_list<std::initializer_list<long long>> gens) {
  const auto& k = a->field();
  Matrix<F> g(k, gens.size(), a->dim());
  std::size_t r = 0;
  for (const auto& row : gens) {
    std::size_t c = 0;
    for (long long v : row) g(r, c++) = k.from_int(v);
    ++r;
  }
  return ideal_generated(a, g);
}

Expectation expect(std::string kind, std::string z, std::string m, std::string n, std::int64_t value, std::string prov,
                   std::string strategy = "") {
  return {std::move(kind), std::move(z), std::move(m), std::move(n), std::move(strategy), value, std::move(prov)};
}

template <class F>
Scenario<F> base(std::string name, const AlgebraPtr<F>& a) {
  return Scenario<F>{std::move(name) + "/" + a->field().name(), a->field(), a, {}, {}, {}, {}};
}

template <class F>
Scenario<F> dual_numbers(const F& k) {
  auto a = truncated_polynomial_algebra(k, 2);
  auto s = base<F>("dual-numbers", a);
  s.add_ideal("x", ideal_of(a, {{0, 1}}));
  s.add_module("A", Module<F>::regular(a));
  s.add_module("S", one_dimensional(a, {1, 0}));
  s.add_closed_sub("Zx", {"ideal", {"x"}});
  s.add_closed_sub("pointS", {"point", {"S"}});
  s.add_closed_sub("Zx.Zx", {"gabriel", {"Zx", "Zx"}});
  s.expected = {
      expect("dim_F", "Zx", "A", "", 1, "derived:tensor-oracle"),
      expect("dim_F", "Zx", "S", "", 1, "derived:tensor-oracle"),
      expect("dim_G", "Zx", "A", "", 1, "derived:hom-oracle"),
      expect("dim_G", "Zx", "S", "", 1, "derived:hom-oracle"),
      expect("dim_F", "Zx.Zx", "A", "", 0, "trivial"),
      expect("dim_ext1", "", "S", "S", 1, "derived:extension-enumeration"),
      expect("dim_ext1", "", "A", "S", 0, "trivial"),
      expect("copies", "pointS", "S", "", 1, "derived:universal-extension"),
      expect("domain_iso", "pointS", "S", "A", 1, "derived:universal-extension", "point"),
      expect("effacement", "pointS", "S", "", 1, "derived:ext-pullback", "point"),
      expect("effacement", "Zx", "S", "", 1, "derived:ext-pullback", "ideal"),
      expect("effacement", "Zx.Zx", "A", "", 1, "derived:ext-pullback", "composite"),
  };
  return s;
}

template <class F>
Scenario<F> zero_ideal(const F& k) {
  auto a = truncated_polynomial_algebra(k, 2);
  auto s = base<F>("zero-ideal", a);
  s.add_ideal("zero", Ideal<F>::zero(a));
  s.add_ideal("unit", Ideal<F>::unit(a));
  s.add_module("A", Module<F>::regular(a));
  s.add_module("S", one_dimensional(a, {1, 0}));
  s.add_closed_sub("Zall", {"ideal", {"zero"}});
  s.add_closed_sub("Znone", {"ideal", {"unit"}});
  s.expected = {
      expect("dim_F", "Zall", "A", "", 0, "trivial"),
      expect("dim_G", "Zall", "A", "", 0, "trivial"),
      expect("dim_F", "Znone", "A", "", 2, "trivial"),
      expect("dim_G", "Znone", "S", "", 1, "trivial"),
      expect("effacement", "Zall", "S", "", 1, "derived:ext-pullback", "ideal"),
  };
  return s;
}

template <class F>
Scenario<F> truncated(const F& k, std::size_t n) {
  auto a = truncated_polynomial_algebra(k, n);
  auto s = base<F>("trunc" + std::to_string(n), a);
  std::vector<long long> x(n, 0), x2(n, 0), simple(n, 0);
  x[1] = 1;
  x2[2] = 1;
  simple[0] = 1;
  Matrix<F> gx(k, 1, n), gx2(k, 1, n);
  gx(0, 1) = k.one();
  gx2(0, 2) = k.one();
  s.add_ideal("x", ideal_generated(a, gx));
  s.add_ideal("x2", ideal_generated(a, gx2));
  s.add_module("A", Module<F>::regular(a));
  s.add_module("S", one_dimensional(a, simple));
  s.add_module("A/x2", regular_quotient(s.ideal("x2")));
  if (n >= 4) {
    Matrix<F> gx3(k, 1, n);
    gx3(0, 3) = k.one();
    s.add_module("A/x3", regular_quotient(ideal_generated(a, gx3)));
  }
  s.add_closed_sub("Zx", {"ideal", {"x"}});
  s.add_closed_sub("Zx2", {"ideal", {"x2"}});
  s.add_closed_sub("pointS", {"point", {"S"}});
  s.add_closed_sub("Zx.Zx", {"gabriel", {"Zx", "Zx"}});
  if (n == 3) {
    s.expected = {
        expect("dim_F", "Zx", "A/x2", "", 2, "derived:tensor-oracle"),
        expect("dim_G", "Zx", "S", "", 1, "derived:hom-oracle"),
        expect("dim_F", "Zx.Zx", "A", "", 1, "derived:tensor-oracle"),
        expect("dim_ext1", "", "A/x2", "S", 1, "derived:cocycle-solve"),
        expect("copies", "pointS", "A/x2", "", 1, "derived:universal-extension"),
        expect("domain_iso", "pointS", "A/x2", "A", 1, "derived:universal-extension", "point"),
        expect("effacement", "Zx.Zx", "S", "", 1, "derived:ext-pullback", "composite"),
    };
  } else {
    s.expected = {
        expect("dim_F", "Zx", "A", "", 3, "derived:tensor-oracle"),
        expect("dim_ext1", "", "S", "S", 1, "derived:cocycle-solve"),
        expect("effacement", "pointS", "A/x2", "", 1, "derived:ext-pullback", "point"),
    };
  }
  return s;
}

template <class F>
Scenario<F> triangular(const F& k, std::size_t n) {
  auto a = upper_triangular_algebra(k, n);
  auto s = base<F>("triangular" + std::to_string(n), a);
  const std::size_t d = a->dim();
  // indices of e_ij in the basis
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) idx.emplace_back(i, j);
  Matrix<F> arrows(k, 0, d);
  std::vector<Matrix<F>> rows;
  for (std::size_t t = 0; t < d; ++t)
    if (idx[t].first != idx[t].second) rows.push_back(a->basis_element(t));
  s.add_ideal("arrows", ideal_generated(a, Matrix<F>::vstack(k, d, rows)));
  auto regular = Module<F>::regular(a);
  s.add_module("A", regular);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<long long> scalars(d, 0);
    for (std::size_t t = 0; t < d; ++t)
      if (idx[t].first == v && idx[t].second == v) scalars[t] = 1;
    s.add_module("S" + std::to_string(v + 1), one_dimensional(a, scalars));
  }
  // e11 A, the projective cover of S1
  std::vector<Matrix<F>> top;
  for (std::size_t t = 0; t < d; ++t)
    if (idx[t].first == 0) top.push_back(a->basis_element(t));
  s.add_module("P1", restrict_to(Submodule<F>{regular, Subspace<F>::span(Matrix<F>::vstack(k, d, top))}).module);
  s.add_closed_sub("Zarrows", {"ideal", {"arrows"}});
  for (std::size_t v = 0; v < n; ++v) {
    s.add_closed_sub("pointS" + std::to_string(v + 1), {"point", {"S" + std::to_string(v + 1)}});
  }
  s.add_closed_sub("pointS1.pointS2", {"gabriel", {"pointS1", "pointS2"}});
  s.expected = {
      expect("dim_ext1", "", "S1", "S2", 1, "derived:cocycle-solve"),
      expect("dim_ext1", "", "S2", "S1", 0, "derived:cocycle-solve"),
      expect("effacement", "pointS2", "S1", "", 1, "derived:ext-pullback", "point"),
  };
  if (n == 2) {
    s.expected.push_back(expect("domain_iso", "pointS2", "S1", "P1", 1, "derived:universal-extension", "point"));
    s.expected.push_back(expect("dim_F", "Zarrows", "P1", "", 1, "derived:tensor-oracle"));
    s.expected.push_back(expect("dim_G", "Zarrows", "S2", "", 1, "derived:hom-oracle"));
  }
  return s;
}

template <class F>
Scenario<F> local3(const F& k) {
  auto a = local_two_generator_algebra(k);
  auto s = base<F>("local3", a);
  s.add_ideal("rad", ideal_of(a, {{0, 1, 0}, {0, 0, 1}}));
  s.add_ideal("a", ideal_of(a, {{0, 1, 0}}));
  s.add_module("A", Module<F>::regular(a));
  s.add_module("S", one_dimensional(a, {1, 0, 0}));
  s.add_module("D", Module<F>::dual_regular(a));
  s.add_module("A/a", regular_quotient(s.ideal("a")));
  s.add_closed_sub("Zrad", {"ideal", {"rad"}});
  s.add_closed_sub("Za", {"ideal", {"a"}});
  s.add_closed_sub("pointS", {"point", {"S"}});
  s.add_closed_sub("Zrad.Zrad", {"gabriel", {"Zrad", "Zrad"}});
  s.expected = {
      expect("dim_ext1", "", "S", "S", 2, "derived:cocycle-solve"),
      expect("copies", "pointS", "S", "", 2, "derived:universal-extension"),
      expect("domain_iso", "pointS", "S", "A", 1, "derived:universal-extension", "point"),
      expect("dim_F", "Zrad", "S", "", 2, "derived:tensor-oracle"),
      expect("dim_G", "Zrad", "A", "", 4, "derived:hom-oracle"),
      expect("iso", "", "A", "D", 0, "derived:hom-dimension"),
  };
  return s;
}

template <class F>
void add_all(std::vector<AnyScenario>& out, const F& k) {
  out.emplace_back(dual_numbers(k));
  out.emplace_back(zero_ideal(k));
  out.emplace_back(truncated(k, 3));
  out.emplace_back(truncated(k, 4));
  out.emplace_back(triangular(k, 2));
  out.emplace_back(triangular(k, 3));
  out.emplace_back(local3(k));
}

}  // namespace

std::vector<AnyScenario> builtin_scenarios() {
  std::vector<AnyScenario> out;
  add_all(out, PrimeField(5));
  add_all(out, Rationals{});
  return out;
}

// --- Random modules -----------------------------------------------------------------

template <class F>
Module<F> random_module(const AlgebraPtr<F>& algebra, std::size_t dim, std::uint64_t seed) {
  if (dim > kRandomModuleMaxDim) throw std::invalid_argument("random_module: dimension above the configured bound");
  if (dim == 0) return Module<F>::zero(algebra);
  const auto& k = algebra->field();
  const std::size_t n = algebra->dim();
  std::mt19937_64 rng(seed);
  auto rand_vec = [&](std::size_t len) {
    Matrix<F> v(k, 1, len);
    for (std::size_t t = 0; t < len; ++t) v(0, t) = k.random_small(rng, 2);
    return v;
  };
  const std::size_t min_rank = (dim + n - 1) / n;
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::size_t rank = min_rank + std::uniform_int_distribution<std::size_t>(0, 1)(rng);
    std::vector<Module<F>> copies(rank, Module<F>::regular(algebra));
    Module<F> q = direct_sum(algebra, copies).sum;
    int stalls = 0;
    while (q.dim() > dim && stalls < 64) {
      Matrix<F> w = rand_vec(q.dim());
      std::size_t steps = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
      for (std::size_t s = 0; s < steps; ++s) w = w * q.action(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
      if (w.is_zero()) {
        ++stalls;
        continue;
      }
      auto sub = submodule_generated(q, w);
      if (q.dim() - sub.dim() < dim) {
        ++stalls;
        continue;
      }
      q = quotient_module(q, sub).module;
    }
    if (q.dim() != dim) continue;
    Matrix<F> t(k, dim, dim);
    do {
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) t(i, j) = k.random_small(rng, 2);
    } while (!is_invertible(t));
    return change_basis(q, t).module;
  }
  throw std::runtime_error("random_module: no quotient of the requested dimension found");
}

// --- Serialization ---------------------------------------------------------------

namespace {

json element_json(const PrimeField& k, const PrimeField::Element& e) { return k.to_int(e); }

json element_json(const Rationals&, const Rationals::Element& e) {
  if (e.get_den() == 1 && e.get_num().fits_slong_p()) return e.get_num().get_si();
  return e.get_str();
}

template <class F>
json matrix_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_json(m.field(), m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class F>
json vector_json(const Matrix<F>& v) {
  return matrix_json(v)[0];
}

template <class F>
json scenario_json(const Scenario<F>& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = s.name;
  j["field"] = s.field.name();
  const auto& a = *s.algebra;
  json alg;
  alg["dim"] = a.dim();
  alg["basis"] = a.basis_names();
  alg["unit"] = vector_json(a.unit());
  json table = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t t = 0; t < a.dim(); ++t) table.push_back(vector_json(a.product(i, t)));
  alg["table"] = std::move(table);
  j["algebra"] = std::move(alg);
  json ideals = json::object();
  for (const auto& i : s.ideals) ideals[i.name] = {{"generators", matrix_json(i.value.basis())}};
  j["ideals"] = std::move(ideals);
  json modules = json::object();
  for (const auto& m : s.modules) {
    json action = json::array();
    for (const auto& r : m.value.actions()) action.push_back(matrix_json(r));
    modules[m.name] = {{"dim", m.value.dim()}, {"action", std::move(action)}};
  }
  j["modules"] = std::move(modules);
  json zs = json::object();
  for (const auto& [spec, z] : s.closed_subs) {
    if (spec.kind == "gabriel") zs[z.name] = {{"gabriel", spec.refs}};
    else zs[z.name] = {{spec.kind, spec.refs.at(0)}};
  }
  j["closed_subs"] = std::move(zs);
  json ex = json::array();
  for (const auto& e : s.expected) {
    json r;
    r["kind"] = e.kind;
    if (!e.z.empty()) r["z"] = e.z;
    if (!e.m.empty()) r["m"] = e.m;
    if (!e.n.empty()) r["n"] = e.n;
    if (!e.strategy.empty()) r["strategy"] = e.strategy;
    r["value"] = e.value;
    r["provenance"] = e.provenance;
    ex.push_back(std::move(r));
  }
  j["expected"] = std::move(ex);
  return j;
}

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw InputError("scenario field '" + path + "': " + msg);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path + "." + key, "missing");
  return *it;
}

template <class F>
typename F::Element parse_element(const F& k, const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return k.from_int(j.get<std::int64_t>());
    if (j.is_string()) return k.parse(j.get<std::string>());
  } catch (const std::exception& e) {
    schema_error(path, e.what());
  }
  schema_error(path, "expected an integer or a \"p/q\" string");
}

template <class F>
Matrix<F> parse_matrix(const F& k, const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  if (!j.is_array() || j.size() != rows) schema_error(path, "expected " + std::to_string(rows) + " rows");
  Matrix<F> m(k, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != cols) schema_error(rp, "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = parse_element(k, row[c], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

template <class F>
Matrix<F> parse_vector(const F& k, const json& j, std::size_t len, const std::string& path) {
  return parse_matrix(k, json::array({j}), 1, len, path);
}

std::size_t parse_count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    schema_error(path, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::string parse_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

template <class F>
Scenario<F> scenario_from_json(const F& k, const json& j) {
  const auto& ja = require(j, "algebra", "");
  const std::size_t n = parse_count(require(ja, "dim", "algebra"), "algebra.dim");
  std::vector<std::string> names;
  if (ja.contains("basis")) {
    const auto& b = ja["basis"];
    if (!b.is_array() || b.size() != n) schema_error("algebra.basis", "expected " + std::to_string(n) + " names");
    for (std::size_t i = 0; i < n; ++i) names.push_back(parse_string(b[i], "algebra.basis[" + std::to_string(i) + "]"));
  }
  Matrix<F> unit = parse_vector(k, require(ja, "unit", "algebra"), n, "algebra.unit");
  const auto& jt = require(ja, "table", "algebra");
  if (!jt.is_array() || jt.size() != n * n) schema_error("algebra.table", "expected " + std::to_string(n * n) + " product vectors");
  std::vector<Matrix<F>> table;
  for (std::size_t t = 0; t < n * n; ++t) table.push_back(parse_vector(k, jt[t], n, "algebra.table[" + std::to_string(t) + "]"));
  AlgebraPtr<F> a;
  try {
    a = std::make_shared<const Algebra<F>>(k, n, std::move(table), std::move(unit), std::move(names));
  } catch (const std::invalid_argument& e) {
    schema_error("algebra", e.what());
  }

  Scenario<F> s{parse_string(require(j, "name", ""), "name"), k, a, {}, {}, {}, {}};
  if (j.contains("ideals")) {
    if (!j["ideals"].is_object()) schema_error("ideals", "expected an object");
    for (const auto& [name, ji] : j["ideals"].items()) {
      const std::string path = "ideals." + name;
      const auto& g = require(ji, "generators", path);
      if (!g.is_array()) schema_error(path + ".generators", "expected a list of vectors");
      Matrix<F> gens = parse_matrix(k, g, g.size(), n, path + ".generators");
      s.add_ideal(name, ideal_generated(a, gens));
    }
  }
  if (j.contains("modules")) {
    if (!j["modules"].is_object()) schema_error("modules", "expected an object");
    for (const auto& [name, jm] : j["modules"].items()) {
      const std::string path = "modules." + name;
      const std::size_t d = parse_count(require(jm, "dim", path), path + ".dim");
      const auto& act = require(jm, "action", path);
      if (!act.is_array() || act.size() != n) schema_error(path + ".action", "expected " + std::to_string(n) + " matrices");
      std::vector<Matrix<F>> action;
      for (std::size_t i = 0; i < n; ++i) {
        action.push_back(parse_matrix(k, act[i], d, d, path + ".action[" + std::to_string(i) + "]"));
      }
      s.add_module(name, Module<F>(a, d, std::move(action)));
    }
  }
  if (j.contains("closed_subs")) {
    if (!j["closed_subs"].is_object()) schema_error("closed_subs", "expected an object");
    for (const auto& [name, jz] : j["closed_subs"].items()) {
      const std::string path = "closed_subs." + name;
      if (!jz.is_object() || jz.size() != 1) schema_error(path, "expected exactly one of ideal, point, gabriel");
      ClosedSubSpec spec;
      spec.kind = jz.begin().key();
      if (spec.kind == "gabriel") {
        const auto& refs = jz.begin().value();
        if (!refs.is_array()) schema_error(path + ".gabriel", "expected a list of names");
        for (std::size_t i = 0; i < refs.size(); ++i) spec.refs.push_back(parse_string(refs[i], path + ".gabriel"));
      } else {
        spec.refs.push_back(parse_string(jz.begin().value(), path + "." + spec.kind));
      }
      s.add_closed_sub(name, std::move(spec));
    }
  }
  if (j.contains("expected")) {
    const auto& ex = j["expected"];
    if (!ex.is_array()) schema_error("expected", "expected a list");
    for (std::size_t t = 0; t < ex.size(); ++t) {
      const std::string path = "expected[" + std::to_string(t) + "]";
      const auto& r = ex[t];
      Expectation e;
      e.kind = parse_string(require(r, "kind", path), path + ".kind");
      if (r.contains("z")) e.z = parse_string(r["z"], path + ".z");
      if (r.contains("m")) e.m = parse_string(r["m"], path + ".m");
      if (r.contains("n")) e.n = parse_string(r["n"], path + ".n");
      if (r.contains("strategy")) e.strategy = parse_string(r["strategy"], path + ".strategy");
      if (r.contains("value")) {
        if (!r["value"].is_number_integer()) schema_error(path + ".value", "expected an integer");
        e.value = r["value"].get<std::int64_t>();
      }
      e.provenance = parse_string(require(r, "provenance", path), path + ".provenance");
      s.expected.push_back(std::move(e));
    }
  }
  return s;
}

}  // namespace

AnyScenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  const auto& version = require(j, "schema_version", "");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    schema_error("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  const std::string field = parse_string(require(j, "field", ""), "field");
  try {
    if (field == "Q") return scenario_from_json(Rationals{}, j);
    if (field.size() > 1 && field[0] == 'F' && field.find_first_not_of("0123456789", 1) == std::string::npos &&
        field.size() < 12) {
      std::int64_t p = std::stoll(field.substr(1));
      if (!is_prime(p) || p >= (std::int64_t{1} << 31)) schema_error("field", "'" + field + "' is not a prime field");
      return scenario_from_json(PrimeField(p), j);
    }
  } catch (const InputError&) {
    throw;
  } catch (const json::exception& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
  schema_error("field", "expected \"Q\" or \"F<p>\" for a prime p, got '" + field + "'");
}

AnyScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const AnyScenario& s) {
  return std::visit([](const auto& x) { return scenario_json(x).dump(2); }, s) + "\n";
}

#define EFFACENGINE_INSTANTIATE(F)                                                          \
  template struct Scenario<F>;                                                              \
  template AlgebraPtr<F> truncated_polynomial_algebra(const F&, std::size_t);               \
  template AlgebraPtr<F> upper_triangular_algebra(const F&, std::size_t);                   \
  template AlgebraPtr<F> local_two_generator_algebra(const F&);                             \
  template Module<F> random_module(const AlgebraPtr<F>&, std::size_t, std::uint64_t);

EFFACENGINE_INSTANTIATE(PrimeField)
EFFACENGINE_INSTANTIATE(Rationals)

#undef EFFACENGINE_INSTANTIATE

}  // namespace effacengine
