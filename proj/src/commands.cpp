#include "effacengine/commands.hpp"

#include <sstream>

#include "effacengine/functors.hpp"
#include "effacengine/suite.hpp"

namespace effacengine {

namespace {

template <class F>
std::string describe_module(const Module<F>& m) {
  std::ostringstream os;
  os << "  dim " << m.dim() << "\n";
  const auto& names = m.algebra().basis_names();
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    os << "  action " << (i < names.size() ? names[i] : "e" + std::to_string(i)) << ": " << m.action(i).to_string()
       << "\n";
  }
  return os.str();
}

Status verdict_status(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::yes:
      return Status::pass;
    case IsoVerdict::no:
      return Status::fail;
    case IsoVerdict::undetermined:
      return Status::undetermined;
  }
  return Status::fail;
}

template <class F>
Report validate_scenario(const Scenario<F>& s) {
  Report r;
  r.command = "validate";
  r.scenario = s.name;
  auto c = s.algebra->validate();
  r.add("algebra", c.ok, c.ok ? "dim " + std::to_string(s.algebra->dim()) : c.axiom + " " + c.message);
  if (!c.ok) {
    r.sort();
    return r;
  }
  for (const auto& i : s.ideals) {
    auto ci = i.value.check_two_sided();
    r.add("ideal " + i.name, ci.ok, ci.ok ? "dim " + std::to_string(i.value.dim()) : ci.axiom + " " + ci.message);
  }
  for (const auto& m : s.modules) {
    auto cm = m.value.validate();
    r.add("module " + m.name, cm.ok, cm.ok ? "dim " + std::to_string(m.value.dim()) : cm.axiom + " " + cm.message);
  }
  for (const auto& [spec, z] : s.closed_subs) {
    auto cz = z.value->validate();
    std::string details = z.value->kind() + ", ideal dim " + std::to_string(z.value->ideal().dim());
    if (z.value->is_point()) {
      const auto& cert = std::get<typename ClosedSub<F>::ByPoint>(z.value->descriptor()).certificate;
      details += ", simple by " + cert.method;
    }
    r.add("closed-sub " + z.name, cz.ok, cz.ok ? details : cz.axiom + " " + cz.message);
  }
  bool tagged = true;
  std::string untagged;
  for (const auto& e : s.expected) {
    if (e.provenance != "trivial" && e.provenance.rfind("derived:", 0) != 0) {
      tagged = false;
      untagged = e.kind;
    }
  }
  r.add("expectations", tagged,
        tagged ? std::to_string(s.expected.size()) + " records" : "record " + untagged + " has no provenance tag");
  r.sort();
  return r;
}

template <class F>
Report functor_scenario(const Scenario<F>& s, const std::string& zname, const std::string& mname, Which which) {
  const auto& z = s.closed_sub(zname);
  const auto& m = s.module(mname);
  Report r;
  r.command = which == Which::F ? "functor F" : "functor G";
  r.scenario = s.name;
  FunctorContext<F> ctx(z);
  std::ostringstream os;
  if (which == Which::F) {
    auto v = apply_F(ctx, m);
    auto o = oracle_tensor(*z, m);
    os << "F_" << zname << "(" << mname << ")\n" << describe_module(v.object);
    os << "  nu: " << v.structure.matrix.to_string() << "\n";
    r.add("value", v.object.validate().ok && v.structure.validate().ok, "dim " + std::to_string(v.object.dim()));
    auto iso = is_isomorphic(v.object, o.object);
    r.add("oracle tensor", verdict_status(iso.verdict), "oracle dim " + std::to_string(o.object.dim()) + ", " + iso.reason);
    bool img = image(v.structure.matrix) == k_Z(*z, m).space && image(o.canonical.matrix) == k_Z(*z, m).space;
    r.add("image of nu", img, "image dim " + std::to_string(rank(v.structure.matrix)));
  } else {
    auto v = apply_G(ctx, m);
    auto o = oracle_hom(*z, m);
    os << "G_" << zname << "(" << mname << ")\n" << describe_module(v.object);
    os << "  mu: " << v.structure.matrix.to_string() << "\n";
    r.add("value", v.object.validate().ok && v.structure.validate().ok, "dim " + std::to_string(v.object.dim()));
    auto iso = is_isomorphic(v.object, o.object);
    r.add("oracle hom", verdict_status(iso.verdict), "oracle dim " + std::to_string(o.object.dim()) + ", " + iso.reason);
    bool ker = kernel(v.structure.matrix) == sub_Z(*z, m).space;
    r.add("kernel of mu", ker, "kernel dim " + std::to_string(kernel(v.structure.matrix).dim()));
  }
  r.output = os.str();
  r.sort();
  return r;
}

template <class F>
Report efface_scenario(const Scenario<F>& s, const std::string& zname, const std::string& mname,
                       const std::string& strategy) {
  const auto& z = s.closed_sub(zname);
  const auto& m = s.module(mname);
  Effacement<F> e = [&] {
    if (strategy == "ideal") return efface_by_ideal(z, m);
    if (strategy == "point") {
      if (!z->is_point()) throw InputError("strategy point needs a closed point, '" + zname + "' is " + z->kind());
      return efface_point(z, m);
    }
    if (strategy == "composite") {
      if (!z->is_gabriel()) throw InputError("strategy composite needs a Gabriel product, '" + zname + "' is " + z->kind());
      return efface_natural(z, m);
    }
    throw InputError("unknown strategy '" + strategy + "'");
  }();
  Report r;
  r.command = "efface " + strategy;
  r.scenario = s.name;
  std::ostringstream os;
  os << "effacement of " << mname << " for " << zname << " (" << to_string(e.scope) << ", " << e.certificate << ")\n";
  os << "domain\n" << describe_module(e.domain);
  os << "  epi: " << e.epi.matrix.to_string() << "\n";
  os << "  kernel basis: " << e.kernel.space.basis().to_string() << "\n";
  auto c = e.validate();
  r.add("structure", c.ok, c.ok ? "epi with kernel dim " + std::to_string(e.kernel.dim()) + " in Z" : c.axiom + " " + c.message);
  auto v = verify_effacement(e);
  std::string details;
  for (std::size_t i = 0; i < v.tested.size(); ++i) {
    if (i) details += ", ";
    details += v.tested[i] + " " + v.matrices[i].shape();
  }
  if (v.violation) {
    details = "violation against " + v.violation->test_object + ": class " + v.violation->class_coeffs.to_string() +
              " pulls back nonzero, pullback matrix " + v.violation->pullback.to_string();
  }
  r.add("pullback vanishes", v.ok, details);
  if (z->is_point()) {
    auto iso = is_isomorphic(e.domain, Module<F>::regular(s.algebra));
    os << "  domain vs A: " << (iso.yes() ? "isomorphic" : iso.verdict == IsoVerdict::no ? "not isomorphic" : "undetermined")
       << "\n";
  }
  r.output = os.str();
  r.sort();
  return r;
}

}  // namespace

Report cmd_validate(const AnyScenario& s) {
  return std::visit([](const auto& x) { return validate_scenario(x); }, s);
}

Report cmd_functor(const AnyScenario& s, const std::string& z, const std::string& m, Which which) {
  return std::visit([&](const auto& x) { return functor_scenario(x, z, m, which); }, s);
}

Report cmd_efface(const AnyScenario& s, const std::string& z, const std::string& m, const std::string& strategy) {
  return std::visit([&](const auto& x) { return efface_scenario(x, z, m, strategy); }, s);
}

Report cmd_check(const std::vector<AnyScenario>& scenarios, const CheckOptions& options) {
  SuiteOptions so;
  so.seed = options.seed;
  so.trials = options.trials;
  so.parallel = options.parallel;
  so.only = options.only;
  for (const auto& id : so.only)
    if (!find_case(id)) throw InputError("unknown check '" + id + "'");
  auto all = scenarios;
  auto trials = trial_scenarios(options.seed, options.trials);
  all.insert(all.end(), trials.begin(), trials.end());
  Report r = run_suite(all, so);
  r.command = "check";
  r.scenario = scenarios.size() == 1 ? scenario_name(scenarios.front()) : std::to_string(scenarios.size()) + " scenarios";
  r.seed = options.seed;
  return r;
}

}  // namespace effacengine
