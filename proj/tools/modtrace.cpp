// Command-line front end: validate, unimodular, decompose, ambi, mdim, scan, export.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "modtrace/ambitrace.hpp"
#include "modtrace/errors.hpp"
#include "modtrace/io.hpp"

using nlohmann::json;
using namespace modtrace;

namespace {

enum Exit { kOk = 0, kDomain = 1, kUsage = 2 };

struct Options {
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
  bool timing = false;
};

struct Report {
  json doc = json::object();
  bool failed = false;

  void assertion(const std::string& name, bool passed) {
    doc["assertions"].push_back({{"name", name}, {"passed", passed}});
    if (!passed) failed = true;
  }
  void error(const std::string& kind, const std::string& what) {
    doc["error"] = {{"kind", kind}, {"message", what}};
  }
};

void flatten(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

std::string render(const json& doc, const Options& opt) {
  if (opt.format == "machine") return doc.dump(2) + "\n";
  std::ostringstream os;
  flatten(doc, "", os);
  return os.str();
}

void emit(const std::string& text, const Options& opt) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw MalformedInput("cannot write '" + opt.out + "'");
  f << text;
}

json inputs_json(const Family& fam, const std::string& ref) {
  return {{"algebra", ref}, {"algebra_name", fam.algebra->name()}, {"algebra_hash", hex64(fam.algebra->fingerprint())}};
}

json module_json(const ModulePtr& m, const std::string& ref) {
  return {{"ref", ref}, {"dim", m->dim()}, {"hash", hex64(m->fingerprint())}};
}

json axioms_json(const ValidationReport& r) {
  json a = json::array();
  for (const auto& x : r.axioms) {
    json e = {{"name", x.name}, {"passed", x.passed}};
    if (!x.passed) {
      e["witness"] = x.witness;
      if (!x.detail.empty()) e["detail"] = x.detail;
    }
    a.push_back(std::move(e));
  }
  return a;
}

// ---------------------------------------------------------------------------

json unimodular_json(const Family& fam, std::uint64_t seed, Report& rep) {
  json v;
  const bool integral = is_unimodular(*fam.algebra);
  v["integral_route"] = integral;
  if (fam.algebra->field().is_prime()) {
    ProjectiveCover pc = projective_cover_unit(fam.algebra, seed);
    v["socle_route"] = pc.socle_is_trivial;
    v["projective_cover_dim"] = pc.summand.module->dim();
    rep.assertion("unimodularity routes agree", integral == pc.socle_is_trivial);
  } else {
    v["socle_route"] = "unsupported over " + fam.algebra->field().to_string();
  }
  return v;
}

json ambi_json(const AmbiVerdict& a, Report& rep) {
  json v;
  if (a.direct) v["direct"] = *a.direct;
  if (a.witness) v["direct_witness"] = *a.witness;
  if (a.direct) rep.assertion("raw equation audit consistent", a.audit_consistent);
  if (a.structural) {
    v["structural"] = *a.structural;
    v["j"] = *a.j;
    v["jprime"] = *a.jprime;
    v["summand_dims"] = a.summand_dims;
    v["self_dual"] = a.self_dual ? json(*a.self_dual) : json("not found");
    if (a.direct) rep.assertion("direct and structural verdicts agree", !a.disagreement());
    if (a.self_dual) rep.assertion("j = j' agrees with W_j* ~ W_j", *a.self_dual == *a.structural);
  } else if (!a.structural_note.empty()) {
    v["structural"] = "absent: " + a.structural_note;
  }
  return v;
}

json mdim_json(const TraceFunctional& t, const ModulePtr& target, Report& rep) {
  json v;
  const Splitting& s = t.splitting(target);
  const Matrix id = Matrix::identity(target->field(), target->dim());
  const Scalar d = t.trace_via(s, id, target);
  v["modified_dimension"] = d.to_string();
  if (s.alternative_alpha) {
    const Scalar d2 = t.trace_via_alpha(s, s.alternative_alpha->matrix(), id, target);
    rep.assertion("independent splittings agree", d == d2);
  }
  return v;
}

// ---------------------------------------------------------------------------

int run_validate(const std::string& input, const std::string& algebra_ref, const Options& opt, Report& rep) {
  rep.doc["command"] = "validate";
  bool ok = true;
  if (input.rfind("builder:", 0) == 0) {
    Family fam = resolve_algebra(input);
    rep.doc["inputs"] = inputs_json(fam, input);
    ValidationReport h = validate_hopf(*fam.algebra);
    ValidationReport p = validate_pivot(*fam.algebra);
    rep.doc["hopf_axioms"] = axioms_json(h);
    rep.doc["pivot_axioms"] = axioms_json(p);
    ok = h.passed() && p.passed();
    for (const auto& [name, m] : fam.modules) {
      ValidationReport r = validate_module(*m);
      rep.doc["modules"][name] = r.passed();
      ok = ok && r.passed();
    }
  } else {
    const std::string text = read_text_file(input);
    const std::string kind = document_kind(text);
    rep.doc["inputs"]["file"] = input;
    if (kind == "hopf") {
      HopfPtr h = HopfPresentation::create(hopf_from_json(text));
      rep.doc["inputs"]["algebra_hash"] = hex64(h->fingerprint());
      ValidationReport hr = validate_hopf(*h);
      rep.doc["hopf_axioms"] = axioms_json(hr);
      ok = hr.passed();
      if (ok) {
        ValidationReport pr = validate_pivot(*h);
        rep.doc["pivot_axioms"] = axioms_json(pr);
        ok = pr.passed();
      }
    } else {
      if (algebra_ref.empty()) throw CLI::ValidationError("--algebra", "module documents need --algebra");
      Family fam = resolve_algebra(algebra_ref);
      ModulePtr m = module_from_json(text, fam.algebra);
      ValidationReport r = validate_module(*m);
      rep.doc["module_axioms"] = axioms_json(r);
      ok = r.passed();
    }
  }
  rep.doc["valid"] = ok;
  (void)opt;
  return ok ? kOk : kDomain;
}

int run_unimodular(const std::string& alg, const Options& opt, Report& rep) {
  rep.doc["command"] = "unimodular";
  Family fam = resolve_algebra(alg);
  rep.doc["inputs"] = inputs_json(fam, alg);
  rep.doc["verdicts"] = unimodular_json(fam, opt.seed, rep);
  return kOk;
}

int run_decompose(const std::string& alg, const std::string& mod, const Options& opt, Report& rep) {
  rep.doc["command"] = "decompose";
  Family fam = resolve_algebra(alg);
  ModulePtr m = resolve_module(fam, mod, opt.seed);
  rep.doc["inputs"] = inputs_json(fam, alg);
  rep.doc["inputs"]["module"] = module_json(m, mod);
  DecompositionResult d = decompose(m, opt.seed);
  ModulePtr one = trivial_module(fam.algebra);
  json summands = json::array();
  for (const auto& s : d.summands)
    summands.push_back({{"dim", s.module->dim()},
                        {"status", to_string(s.status)},
                        {"hom_from_unit", hom_basis(one, s.module).dim()},
                        {"hom_to_unit", hom_basis(s.module, one).dim()}});
  rep.doc["summands"] = summands;
  rep.doc["fully_certified"] = d.fully_certified();
  auto err = check_decomposition(d);
  rep.assertion("idempotents are complete and orthogonal", !err.has_value());
  if (err) rep.doc["decomposition_error"] = *err;
  return kOk;
}

int run_ambi(const std::string& alg, const std::string& mod, const std::string& method, const Options& opt,
             Report& rep) {
  rep.doc["command"] = "ambi";
  Family fam = resolve_algebra(alg);
  ModulePtr m = resolve_module(fam, mod, opt.seed);
  rep.doc["inputs"] = inputs_json(fam, alg);
  rep.doc["inputs"]["module"] = module_json(m, mod);
  rep.doc["method"] = method;
  AmbiMethod am = method == "direct" ? AmbiMethod::direct : method == "structural" ? AmbiMethod::structural : AmbiMethod::both;
  rep.doc["verdicts"] = ambi_json(decide_ambi(m, am, opt.seed), rep);
  return kOk;
}

int run_mdim(const std::string& alg, const std::string& ambi, const std::string& target, const Options& opt,
             Report& rep) {
  rep.doc["command"] = "mdim";
  Family fam = resolve_algebra(alg);
  ModulePtr v = resolve_module(fam, ambi, opt.seed);
  ModulePtr u = resolve_module(fam, target, opt.seed);
  rep.doc["inputs"] = inputs_json(fam, alg);
  rep.doc["inputs"]["ambi"] = module_json(v, ambi);
  rep.doc["inputs"]["target"] = module_json(u, target);
  TraceFunctional t(v);
  rep.doc["verdicts"] = mdim_json(t, u, rep);
  return kOk;
}

std::vector<std::string> scan_refs(const std::string& builder, const std::vector<std::string>& params) {
  std::vector<std::string> refs;
  for (const auto& p : params) {
    if (builder == "usl2") refs.push_back("builder:usl2:p=" + (p.rfind("p=", 0) == 0 ? p.substr(2) : p));
    else if (builder == "quantum") refs.push_back("builder:quantum:l=" + (p.rfind("l=", 0) == 0 ? p.substr(2) : p));
    else if (builder == "group" || builder == "double" || builder == "sweedler") refs.push_back("builder:" + builder + ":" + p);
    else throw CLI::ValidationError("--builder", "unknown builder '" + builder + "'");
  }
  return refs;
}

json scan_instance(const std::string& ref, const Options& opt, bool& failed) {
  Report rep;
  rep.doc["instance"] = ref;
  try {
    Family fam = resolve_algebra(ref);
    rep.doc["inputs"] = inputs_json(fam, ref);
    rep.doc["valid"] = validate_hopf(*fam.algebra).passed() && validate_pivot(*fam.algebra).passed();
    rep.assertion("algebra validates", rep.doc["valid"].get<bool>());
    rep.doc["unimodular"] = unimodular_json(fam, opt.seed, rep);
    for (const auto& name : fam.simples) {
      try {
        rep.doc["ambi"][name] = ambi_json(decide_ambi(fam.module(name), AmbiMethod::both, opt.seed), rep);
      } catch (const NotAbsolutelySimple& e) {
        rep.doc["ambi"][name] = {{"error", e.what()}};
      }
    }
    if (!fam.distinguished.empty() && fam.algebra->field().is_prime()) {
      try {
        TraceFunctional t(fam.module(fam.distinguished));
        rep.doc["mdim_reference"] = fam.distinguished;
        DecompositionResult reg = decompose(regular_module(fam.algebra), opt.seed);
        std::vector<ModulePtr> seen;
        json proj = json::array();
        for (const auto& s : reg.summands) {
          bool dup = false;
          for (const auto& m : seen)
            if (m->dim() == s.module->dim() &&
                iso_test(m, s.module, opt.seed, true).verdict == IsoResult::Verdict::isomorphic)
              dup = true;
          if (dup) continue;
          seen.push_back(s.module);
          json e = {{"dim", s.module->dim()}, {"hom_to_unit", hom_basis(s.module, trivial_module(fam.algebra)).dim()}};
          try {
            e.update(mdim_json(t, s.module, rep));
          } catch (const NoSplitting& ns) {
            e["modified_dimension"] = std::string("no splitting: ") + ns.what();
          }
          proj.push_back(std::move(e));
        }
        rep.doc["indecomposable_projectives"] = proj;
      } catch (const NotAmbi& e) {
        rep.doc["mdim_reference"] = std::string("not ambidextrous: ") + e.what();
      }
    }
  } catch (const Error& e) {
    rep.error("instance failed", e.what());
    rep.failed = true;
  }
  failed = failed || rep.failed;
  return rep.doc;
}

int run_scan(const std::string& builder, const std::vector<std::string>& params, const Options& opt, Report& rep) {
  rep.doc["command"] = "scan";
  rep.doc["builder"] = builder;
  bool failed = false;
  json instances = json::array();
  for (const auto& ref : scan_refs(builder, params)) instances.push_back(scan_instance(ref, opt, failed));
  rep.doc["instances"] = instances;
  if (failed) rep.failed = true;
  return kOk;
}

int run_export(const std::string& alg, const std::string& mod, const Options& opt, Report& rep) {
  Family fam = resolve_algebra(alg);
  const std::string text =
      mod.empty() ? hopf_to_json(*fam.algebra) : module_to_json(*resolve_module(fam, mod, opt.seed));
  emit(text + "\n", opt);
  rep.doc.clear();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modtrace: ambidextrous modules and modified traces over finite-dimensional pivotal Hopf algebras"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--seed", opt.seed, "seed for randomized steps")->capture_default_str();
  app.add_option("--format", opt.format, "text or machine")->check(CLI::IsMember({"text", "machine"}))->capture_default_str();
  app.add_option("--out", opt.out, "write the report to a file");
  app.add_flag("--timing", opt.timing, "include wall-clock timing in reports");

  std::string input, algebra_ref, alg, mod, method = "both", ambi, target, builder;
  std::vector<std::string> params;

  auto* validate = app.add_subcommand("validate", "check Hopf or module axioms");
  validate->add_option("input", input, "builder reference or document path")->required();
  validate->add_option("--algebra", algebra_ref, "algebra for a module document");

  auto* unimodular = app.add_subcommand("unimodular", "decide unimodularity by integrals and by the socle of P_1");
  unimodular->add_option("algebra", alg)->required();

  auto* decomp = app.add_subcommand("decompose", "Krull-Schmidt decomposition of a module");
  decomp->add_option("algebra", alg)->required();
  decomp->add_option("module", mod)->required();

  auto* ambic = app.add_subcommand("ambi", "decide right ambidexterity");
  ambic->add_option("algebra", alg)->required();
  ambic->add_option("module", mod)->required();
  ambic->add_option("--method", method)->check(CLI::IsMember({"direct", "structural", "both"}))->capture_default_str();

  auto* mdim = app.add_subcommand("mdim", "modified dimension with respect to an ambidextrous module");
  mdim->add_option("algebra", alg)->required();
  mdim->add_option("--ambi", ambi)->required();
  mdim->add_option("--target", target)->required();

  auto* scan = app.add_subcommand("scan", "run the example battery over a builder family");
  scan->add_option("--builder", builder)->required();
  scan->add_option("--params", params, "e.g. 3 5 7 for usl2, S3:F2 for group")->required();

  auto* exportc = app.add_subcommand("export", "write a builder algebra or module as a document");
  exportc->add_option("algebra", alg)->required();
  exportc->add_option("--module", mod);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Report rep;
  int code = kOk;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*validate) code = run_validate(input, algebra_ref, opt, rep);
    else if (*unimodular) code = run_unimodular(alg, opt, rep);
    else if (*decomp) code = run_decompose(alg, mod, opt, rep);
    else if (*ambic) code = run_ambi(alg, mod, method, opt, rep);
    else if (*mdim) code = run_mdim(alg, ambi, target, opt, rep);
    else if (*scan) code = run_scan(builder, params, opt, rep);
    else if (*exportc) return run_export(alg, mod, opt, rep);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Unsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotAbsolutelySimple& e) {
    rep.error("NotAbsolutelySimple", e.what());
    code = kDomain;
  } catch (const NotAmbi& e) {
    rep.error("NotAmbi", e.what());
    code = kDomain;
  } catch (const NoSplitting& e) {
    rep.error("NoSplitting", e.what());
    code = kDomain;
  } catch (const Error& e) {
    rep.error("Error", e.what());
    code = kDomain;
  }
  rep.doc["seed"] = opt.seed;
  if (opt.timing)
    rep.doc["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (rep.failed && code == kOk) code = kDomain;
  try {
    emit(render(rep.doc, opt), opt);
  } catch (const MalformedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
