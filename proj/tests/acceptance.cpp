// One pass/fail line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "effacengine/effacement.hpp"
#include "effacengine/functors.hpp"
#include "effacengine/homology.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace effacengine;
using testing_support::corpus;

namespace {

struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failed++ == 0) first = what;
  }
};

template <class Fn>
void each_scenario(Fn&& fn) {
  for (const auto& any : corpus()) std::visit(fn, any);
}

template <class F>
std::vector<ClosedSubPtr<F>> subs(const Scenario<F>& s) {
  std::vector<ClosedSubPtr<F>> out;
  for (const auto& [spec, z] : s.closed_subs) out.push_back(z.value);
  return out;
}

template <class F>
std::string label(const Scenario<F>& s, const std::string& z, const std::string& m) {
  return s.name + " " + z + " " + m;
}

// is_isomorphic's witness, re-checked by direct products
template <class F>
bool iso_with_witness(const Module<F>& m, const Module<F>& n) {
  auto r = is_isomorphic(m, n);
  if (!r.yes() || !r.witness) return false;
  if (m.dim() == 0) return n.dim() == 0;
  return oracle::is_iso_witness(m, n, *r.witness, inverse(*r.witness));
}

// F(M) vs the tensor oracle and G(M) vs the Hom oracle, plus the exact structure maps
template <class F>
void oracle_pair(Tally& t, const ClosedSubPtr<F>& z, const Module<F>& m, const std::string& where) {
  FunctorContext<F> ctx(z);
  auto f = apply_F(ctx, m);
  auto g = apply_G(ctx, m);
  t.expect(iso_with_witness(f.object, oracle_tensor(*z, m).object), "F vs tensor " + where);
  t.expect(iso_with_witness(g.object, oracle_hom(*z, m).object), "G vs Hom " + where);
}

std::string verdict(const Tally& t, const std::string& summary) {
  std::ostringstream os;
  os << summary << " (" << t.checked << " checks";
  if (t.failed) os << ", " << t.failed << " failed, first: " << t.first;
  os << ")";
  return os.str();
}

struct Criterion {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

std::pair<bool, std::string> oracle_equivalence() {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  each_scenario([&](const auto& s) {
    for (const auto& [spec, z] : s.closed_subs)
      for (const auto& m : s.modules) oracle_pair(t, z.value, m.value, label(s, z.name, m.name));
  });
  std::size_t randoms = 0;
  std::uint64_t seed = 1000;
  while (randoms < 240) {
    for (const auto& any : corpus()) {
      std::visit(
          [&](const auto& s) {
            if (s.algebra->dim() > 4) return;
            std::size_t dim = 1 + seed % 8;
            auto m = random_module(s.algebra, dim, seed);
            ++randoms;
            for (const auto& [spec, z] : s.closed_subs)
              oracle_pair(t, z.value, m, s.name + " " + z.name + " random seed " + std::to_string(seed));
          },
          any);
      ++seed;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs < 120.0, "runtime " + std::to_string(secs) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f s", secs);
  return {t.failed == 0, verdict(t, std::to_string(randoms) + " random modules, " + buf)};
}

std::pair<bool, std::string> adjunction() {
  Tally t;
  std::size_t pairs = 0;
  each_scenario([&](const auto& s) {
    using F = std::decay_t<decltype(s.field)>;
    for (const auto& [spec, z] : s.closed_subs) {
      FunctorContext<F> ctx(z.value);
      for (const auto& m : s.modules)
        for (const auto& n : s.modules) {
          auto r = adjunction_check(ctx, m.value, n.value);
          // recompute both Hom dimensions with the reference solver
          auto lhs = hom_space_naive(apply_F(ctx, m.value).object, n.value).size();
          auto rhs = hom_space_naive(m.value, apply_G(ctx, n.value).object).size();
          t.expect(r.ok() && lhs == rhs && lhs == r.middle, label(s, z.name, m.name + "," + n.name) + " " + r.describe());
          ++pairs;
        }
    }
  });
  t.expect(pairs >= 100, "only " + std::to_string(pairs) + " pairs");
  return {t.failed == 0, verdict(t, std::to_string(pairs) + " pairs")};
}

std::pair<bool, std::string> effacement_certificates() {
  Tally t;
  std::size_t built = 0;
  each_scenario([&](const auto& s) {
    using F = std::decay_t<decltype(s.field)>;
    for (const auto& [spec, z] : s.closed_subs)
      for (const auto& m : s.modules) {
        std::vector<Effacement<F>> es{efface_by_ideal(z.value, m.value)};
        if (z.value->is_point()) es.push_back(efface_point(z.value, m.value));
        if (z.value->is_gabriel()) es.push_back(efface_natural(z.value, m.value));
        for (const auto& e : es) {
          auto v = verify_effacement(e);
          bool zero = !v.matrices.empty();
          for (const auto& mat : v.matrices) zero = zero && mat.is_zero();
          t.expect(e.validate().ok && v.ok && zero, label(s, z.name, m.name) + " " + to_string(e.scope));
          ++built;
        }
      }
  });
  bool control = true;
  for (const auto& name : {std::string("dual-numbers/F5"), std::string("dual-numbers/Q")}) {
    auto check = [&](const auto& s) {
      auto v = verify_effacement(identity_effacement(s.closed_sub("pointS"), s.module("S")),
                                 {{"S", s.module("S")}});
      control = control && !v.ok && v.violation && v.violation->pullback.rows() == 1 &&
                v.violation->pullback.cols() == 1 && !v.violation->pullback.is_zero();
    };
    if (name.back() == '5')
      check(testing_support::builtin<PrimeField>(name));
    else
      check(testing_support::builtin<Rationals>(name));
  }
  t.expect(control, "negative control did not fail with a nonzero 1x1 matrix");
  return {t.failed == 0, verdict(t, std::to_string(built) + " effacements verified, identity control fails")};
}

std::pair<bool, std::string> closed_point() {
  Tally t;
  auto run = [&](const auto& dual, const auto& t3) {
    const auto& S = dual.module("S");
    auto e = efface_point(dual.closed_sub("pointS"), S);
    t.expect(iso_with_witness(e.domain, dual.module("A")), dual.name + " domain not A");
    t.expect(ext1(S, S).dim() == 1 && e.kernel.dim() == 1, dual.name + " n != 1");

    const auto& M = t3.module("A/x2");
    auto u = efface_point(t3.closed_sub("pointS"), M);
    t.expect(ext1(M, t3.module("S")).dim() == 1 && u.kernel.dim() == 1, t3.name + " n != 1");
    auto z = t3.closed_sub("Zx");
    using F = std::decay_t<decltype(t3.field)>;
    FunctorContext<F> ctx(z);
    auto fm = apply_F(ctx, M);
    t.expect(fm.object.dim() == 2, t3.name + " dim F(M) = " + std::to_string(fm.object.dim()));
    t.expect(k_Z(*z, M).dim() == 1, t3.name + " dim M I");
    t.expect(kernel(fm.structure.matrix).dim() == 1, t3.name + " ker nu");
  };
  run(testing_support::f5("dual-numbers"), testing_support::f5("trunc3"));
  run(testing_support::q("dual-numbers"), testing_support::q("trunc3"));
  return {t.failed == 0, verdict(t, "dual numbers n = 1 with domain A, trunc3 ker nu of dim 1")};
}

std::pair<bool, std::string> choice_independence() {
  Tally t;
  std::vector<FunctorOptions> alternates(3);
  alternates[0].cover = CoverChoice::minimal;
  alternates[1].strategy = EffacementStrategy::ideal;
  alternates[1].container_seed = 23;
  alternates[2].container_seed = 99;
  alternates[2].extra_copies = 1;
  each_scenario([&](const auto& s) {
    using F = std::decay_t<decltype(s.field)>;
    for (const auto& [spec, z] : s.closed_subs) {
      FunctorContext<F> base(z.value);
      for (const auto& opt : alternates) {
        FunctorContext<F> alt(z.value, opt);
        for (const auto& m : s.modules) {
          t.expect(canonical_F_iso(base, alt, m.value).ok(), label(s, z.name, m.name) + " F");
          t.expect(canonical_G_iso(base, alt, m.value).ok(), label(s, z.name, m.name) + " G");
        }
      }
    }
  });
  return {t.failed == 0, verdict(t, "3 alternate contexts per closed subcategory")};
}

std::pair<bool, std::string> exactness() {
  Tally t;
  std::size_t sequences = 0;
  each_scenario([&](const auto& s) {
    using F = std::decay_t<decltype(s.field)>;
    std::vector<Extension<F>> ses;
    for (const auto& m : s.modules)
      for (const auto& n : s.modules) {
        auto e = ext1(m.value, n.value);
        ses.push_back(class_to_extension(e, Matrix<F>(s.field, 1, e.dim())));
        for (std::size_t i = 0; i < e.dim(); ++i) {
          Matrix<F> c(s.field, 1, e.dim());
          c(0, i) = s.field.one();
          ses.push_back(class_to_extension(e, c));
        }
      }
    for (const auto& [spec, z] : s.closed_subs) {
      FunctorContext<F> ctx(z.value);
      for (const auto& e : ses) {
        auto r = exactness_suite(ctx, e);
        t.expect(r.ok, s.name + " " + z.name + " " + r.failure);
        ++sequences;
      }
      for (const auto& m : s.modules) {
        auto nu = apply_F(ctx, m.value).structure;
        auto mu = apply_G(ctx, m.value).structure;
        t.expect(image(nu.matrix) == k_Z(*z.value, m.value).space, label(s, z.name, m.name) + " coker nu");
        t.expect(iso_with_witness(cokernel_of(nu).module, quot_Z(*z.value, m.value).module),
                 label(s, z.name, m.name) + " coker nu iso");
        t.expect(kernel(mu.matrix) == sub_Z(*z.value, m.value).space, label(s, z.name, m.name) + " ker mu");
      }
    }
  });
  t.expect(sequences >= 50, "only " + std::to_string(sequences) + " sequences");
  return {t.failed == 0, verdict(t, std::to_string(sequences) + " sequence runs")};
}

std::pair<bool, std::string> gabriel() {
  Tally t;
  each_scenario([&](const auto& s) {
    using F = std::decay_t<decltype(s.field)>;
    for (const auto& [spec, z] : s.closed_subs) {
      if (!z.value->is_gabriel()) continue;
      const auto& fs = z.value->factors();
      auto product = ClosedSub<F>::by_ideal(ideal_product(fs[0]->ideal(), fs[1]->ideal()));
      FunctorContext<F> ctx(z.value);
      for (const auto& m : s.modules) {
        auto r = gabriel_functor_check(fs[0], fs[1], m.value);
        t.expect(r.ok, label(s, z.name, m.name) + " " + r.verdict);
        t.expect(iso_with_witness(apply_F(ctx, m.value).object, oracle_tensor(*product, m.value).object),
                 label(s, z.name, m.name) + " vs tensor with I1 I2");
      }
    }
  });
  auto vanish = [&](const auto& dual) {
    auto zx = dual.closed_sub("Zx");
    using F = std::decay_t<decltype(dual.field)>;
    FunctorContext<F> ctx(ClosedSub<F>::gabriel({zx, zx}));
    for (const auto& m : dual.modules) t.expect(apply_F(ctx, m.value).object.dim() == 0, dual.name + " F nonzero on " + m.name);
    for (std::uint64_t seed = 0; seed < 10; ++seed)
      t.expect(apply_F(ctx, random_module(dual.algebra, 1 + seed % 6, seed)).object.dim() == 0, dual.name + " F nonzero");
  };
  vanish(testing_support::f5("dual-numbers"));
  vanish(testing_support::q("dual-numbers"));
  return {t.failed == 0, verdict(t, "composite F against I1 I2, and zero for Mod-k twice over dual numbers")};
}

std::pair<bool, std::string> ext_bruteforce() {
  Tally t;
  std::size_t algebras = 0;
  for (int d = 1; d <= 3; ++d)
    for (const auto& a : oracle::algebras_f2(d)) {
      ++algebras;
      auto alg = oracle::to_library(a);
      std::vector<oracle::Mod> mods;
      for (int n = 0; n <= 2; ++n)
        for (auto& m : oracle::modules_f2(a, n)) mods.push_back(m);
      for (const auto& m : mods)
        for (const auto& n : mods) {
          auto lib = ext1(oracle::to_library(alg, m), oracle::to_library(alg, n)).dim();
          auto brute = oracle::ext_class_count(a, m, n);
          t.expect((std::uint64_t{1} << lib) == brute, "algebra dim " + std::to_string(d) + ": " +
                                                           std::to_string(1u << lib) + " vs " + std::to_string(brute));
        }
    }
  return {t.failed == 0, verdict(t, std::to_string(algebras) + " algebras over F2 up to isomorphism")};
}

std::pair<bool, std::string> ext_sum_product() {
  Tally t;
  each_scenario([&](const auto& s) {
    for (const auto& a : s.modules)
      for (const auto& b : s.modules)
        for (const auto& c : s.modules) {
          auto sum = ext_sum_compat(a.value, b.value, c.value);
          auto prod = ext_product_compat(a.value, b.value, c.value);
          auto square_invertible = [](const auto& r) {
            return r.source_dim == r.target_dim && (r.source_dim == 0 || is_invertible(r.matrix));
          };
          std::string where = s.name + " " + a.name + "," + b.name + "," + c.name;
          t.expect(sum.iso && square_invertible(sum), where + " sum");
          t.expect(prod.iso && square_invertible(prod), where + " product");
        }
  });
  return {t.failed == 0, verdict(t, "every corpus triple")};
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"1 oracle equivalence", oracle_equivalence},
      {"2 adjunction dimensions", adjunction},
      {"3 effacement certificates", effacement_certificates},
      {"4 closed-point universal extension", closed_point},
      {"5 choice independence", choice_independence},
      {"6 exactness", exactness},
      {"7 Gabriel product", gabriel},
      {"8 Ext^1 brute force over F2", ext_bruteforce},
      {"9 Ext of finite sums and products", ext_sum_product},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::pair<bool, std::string> r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !r.first;
    std::printf("%s  criterion %s: %s [%.1f s]\n", r.first ? "PASS" : "FAIL", c.name.c_str(), r.second.c_str(), secs);
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
