#include "cmdir/report.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "cmdir/analytic.hpp"
#include "cmdir/cocycle.hpp"
#include "cmdir/gross.hpp"
#include "cmdir/heckechar.hpp"
#include "cmdir/qexp.hpp"

namespace cmdir {

using json = nlohmann::ordered_json;

namespace {

int digits_for(prec_t prec) { return std::max(10, static_cast<int>(prec * 0.30103) - 3); }

json int_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());  // beyond 64 bits: decimal string
}

json cyclo_json(const CycloElem& x) {
  json c = json::array();
  for (const auto& q : x.coeffs()) c.push_back(q.get_str());
  return json{{"field", "Q(zeta_" + std::to_string(x.modulus()) + ")"}, {"basis", "powers of zeta"}, {"coeffs", c}};
}

json exact_json(const CycloElem& x) {
  if (x.is_rational() && x.coeffs()[0].get_den() == 1) return int_json(x.coeffs()[0].get_num());
  if (x.is_rational()) return json(x.coeffs()[0].get_str());
  return cyclo_json(x);
}

json hecke_json(const HeckeReport& r) {
  json j{{"exact", r.exact},
         {"pass", r.pass()},
         {"p_column_zero", r.p_column_zero},
         {"multiplicative_checks", r.multiplicative_checks},
         {"multiplicative_failures", r.multiplicative_failures},
         {"max_multiplicative_residual", r.max_multiplicative_residual},
         {"recursion_checks", r.recursion_checks},
         {"recursion_failures", r.recursion_failures},
         {"max_recursion_residual", r.max_recursion_residual}};
  j["sample_failures"] = r.sample_failures;
  return j;
}

json delta_choices(const Cocycle& c) {
  const auto& r = c.report();
  json reps = json::array();
  for (const auto& x : c.field().class_reps()) reps.push_back(to_string(x));
  return json{{"class_representatives", reps},
              {"twelfth_root_index", r.root_choice},
              {"candidates_examined", r.candidates},
              {"consistent_assignments", r.consistent},
              {"precision_used", r.prec_used},
              {"principal_rule", c.principal_rule()}};
}

json delta_residuals(const Cocycle& c) {
  const auto& r = c.report();
  return json{{"integrality", r.integrality_residual},     {"relation_on_representatives", r.relation_residual},
              {"conjugation", r.conjugation_residual},     {"twelfth_power", r.twelfth_power_residual},
              {"norm_is_square_mod_p", r.jacobi_ok},       {"norm_generates_x_to_the_h", r.capitulation_ok}};
}

std::vector<Ideal> coprime_ideals(const FieldContext& k, i64 max_norm) {
  std::vector<Ideal> out;
  for (i64 n = 1; n <= max_norm; ++n)
    for (const auto& x : k.ideals_of_norm(n)) out.push_back(x);
  return out;
}

json base_document(const RunConfig& cfg) {
  json config{{"p", cfg.p}, {"terms", cfg.terms}, {"prec", cfg.prec}, {"format", cfg.format}};
  config["order"] = cfg.order ? json(*cfg.order) : json(nullptr);
  return json{{"schema_version", kSchemaVersion},
              {"command", cfg.command},
              {"config", config},
              {"results", json::object()},
              {"residuals", json::object()},
              {"choices", json::object()}};
}

// -- commands ---------------------------------------------------------------

void cmd_chars(const FieldContext& k, json& doc) {
  json rows = json::array();
  for (const auto& o : enumerate_characters(k)) {
    auto s = splitting_field_data(k, o.d);
    json ts = json::array();
    for (const auto& m : o.members) ts.push_back(m.t);
    rows.push_back(json{{"d", o.d},
                        {"ord_eta", 2 * o.d},
                        {"dim_Af", o.dimension},
                        {"K_p_over_H", s.kp_over_h},
                        {"L_over_H", s.l_over_h},
                        {"L_over_K", s.l_over_k},
                        {"eta_exponents_t", ts}});
  }
  doc["results"] = json{{"h", k.class_number()}, {"orbits", rows}};
  doc["choices"] = json{{"generator", primitive_root(k.p())}, {"eta", "eta(a) = zeta_{p-1}^{t ind_g(a)}"}};
}

void cmd_qexp(const FieldContext& k, const RunConfig& cfg, json& doc) {
  i64 d = cfg.order.value_or(1);
  Cocycle c = Cocycle::compute(k, cfg.prec);
  EtaCharacter chi = canonical_eta(k.p(), d);
  CocycleSpace s(c, chi, cfg.prec);
  TwistWitness w = s.make_modular();
  QExpansion qe = d == 1 ? canonical_direction(k, c, cfg.terms) : direction_from_twist(s, w, cfg.terms);

  json coeffs = json::array();
  for (std::size_t n = 1; n <= qe.bound; ++n) {
    json row{{"n", n}, {"value", complex_json(qe.a(n))}};
    row["exact"] = qe.has_exact() ? exact_json(qe.exact[n - 1]) : json(nullptr);
    coeffs.push_back(row);
  }
  json witness{{"branch", w.branch}, {"description", w.description}, {"trace_phi", complex_json(w.trace)}};
  witness["u"] = w.exact ? cyclo_json(*w.exact) : json(nullptr);
  if (!w.exact) {
    json emb = json::array();
    for (const auto& v : w.u) emb.push_back(complex_json(v));
    witness["u_embeddings"] = emb;
  }
  doc["results"] = json{{"level", qe.level()},
                        {"nebentypus_order", qe.d},
                        {"h", qe.h},
                        {"terms", qe.bound},
                        {"integral", qe.integral},
                        {"exact_recognition", qe.has_exact() ? "exact arithmetic" : "not available for h > 1"},
                        {"twist_witness", witness},
                        {"coefficients", coeffs}};
  json res{{"trace_phi_minus_degree", abs(w.trace - Complex(static_cast<long>(s.degree()), cfg.prec)).to_double()}};
  if (qe.bound >= 20) res["hecke"] = hecke_json(hecke_verify(qe, chi));
  res["delta"] = delta_residuals(c);
  doc["residuals"] = res;
  doc["choices"] = json{{"delta", delta_choices(c)},
                        {"psi_extension", s.family().choice_description()},
                        {"direction", qe.provenance}};
}

json gross_results(const GrossCurveData& g) {
  json r{{"h", g.h}, {"recognized", g.recognized()}, {"prec_used", g.prec}};
  if (g.exact) {
    const auto& e = *g.exact;
    r["j0"] = int_json(e.j0);
    r["m"] = int_json(e.m);
    r["n"] = int_json(e.n);
    r["c4"] = int_json(e.c4);
    r["c6"] = int_json(e.c6);
    r["disc"] = int_json(e.disc);
    json a = json::array();
    for (const auto& v : e.a) a.push_back(int_json(v));
    r["minimal_model"] = a;
  } else {
    r["j0"] = complex_json(g.j0);
    r["m"] = complex_json(g.m);
    r["n"] = complex_json(g.n);
    r["c4"] = complex_json(g.c4);
    r["c6"] = complex_json(g.c6);
    r["disc"] = complex_json(g.disc);
  }
  return r;
}

void cmd_gross(const FieldContext& k, const RunConfig& cfg, json& doc) {
  auto g = gross_curve(k, cfg.prec);
  doc["results"] = gross_results(g);
  long p = static_cast<long>(k.p());
  Complex target(-p * p * p, g.prec);
  doc["residuals"] = json{{"disc_plus_p_cubed", (abs(g.disc - target) / (p * p * p)).to_double()},
                          {"m_cubed_minus_j0", (abs(pow(g.m, 3L) - g.j0) / (Real(1L, g.prec) + abs(g.j0))).to_double()}};
  doc["choices"] = json{{"m", "real cube root of j(O_K)"}, {"n_sign", "(2/p) = " + std::to_string(legendre(2, p))}};
}

void cmd_period(const FieldContext& k, const RunConfig& cfg, json& doc) {
  Cocycle c = Cocycle::compute(k, cfg.prec);
  auto pd = omega_period(c, cfg.prec);
  long p = static_cast<long>(k.p());
  json r{{"h", pd.h},
         {"Omega", complex_json(pd.omega)},
         {"Omega_in", pd.real ? "R" : "iR"},
         {"rho", complex_json(pd.rho)},
         {"lattice", json{{"omega1", complex_json(pd.lattice.omega1)}, {"omega2", complex_json(pd.lattice.omega2)}}},
         {"Delta_of_Omega_OK", complex_json(pd.lattice_delta)}};
  json res{{"Delta_plus_p_cubed",
            (abs(pd.lattice_delta - Complex(-p * p * p, cfg.prec)) / (p * p * p)).to_double()},
           {"rho_norm_abs_minus_one", abs(rho_norm_abs(c) - 1L).to_double()},
           {"delta", delta_residuals(c)}};
  if (k.class_number() == 1) {
    auto chk = period_cross_check(gross_curve(k, cfg.prec), pd, cfg.prec);
    r["cross_check"] = json{{"pass", chk.pass}, {"agm_lattice", chk.agm_lattice}, {"omega_lattice", chk.omega_lattice}};
    res["agm_relative_error"] = chk.relative_error;
  } else {
    r["cross_check"] = json{{"pass", nullptr}, {"note", "AGM comparison runs for h = 1 only"}};
  }
  doc["results"] = r;
  doc["residuals"] = res;
  doc["choices"] = json{{"delta", delta_choices(c)}, {"sign", "Omega normalized to positive real or imaginary part"}};
}

void cmd_verify(const FieldContext& k, const RunConfig& cfg, json& doc) {
  prec_t pr = cfg.prec;
  json checks = json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool pass, double residual, json extra = json::object()) {
    json row{{"name", name}, {"pass", pass}, {"residual", residual}};
    for (auto& [key, v] : extra.items()) row[key] = v;
    checks.push_back(row);
    all = all && pass;
  };
  const double tol = 1e-25;

  Cocycle c = Cocycle::compute(k, pr);
  {
    const auto& r = c.report();
    double worst = std::max({r.integrality_residual, r.relation_residual, r.conjugation_residual, r.twelfth_power_residual});
    add("delta_certification", r.consistent == 1 && r.jacobi_ok && r.capitulation_ok && worst < tol, worst);
    auto ideals = coprime_ideals(k, 60);
    std::mt19937_64 rng(static_cast<std::uint64_t>(k.p()));
    std::uniform_int_distribution<std::size_t> pick(0, ideals.size() - 1);
    double rel = 0;
    for (int t = 0; t < 20; ++t) {
      const Ideal& a = ideals[pick(rng)];
      const Ideal& b = ideals[pick(rng)];
      Complex lhs = c.delta(k.mul(a, b));
      Complex rhs = c.delta(a) * c.delta_conjugate(k.class_inv(k.class_index(a)), b);
      rel = std::max(rel, (abs(lhs - rhs) / abs(lhs)).to_double());
    }
    add("cocycle_relation_random_pairs", rel < tol, rel);
  }

  std::size_t B = std::min<std::size_t>(cfg.terms, 500);
  for (const auto& o : enumerate_characters(k)) {
    EtaCharacter chi = canonical_eta(k.p(), o.d);
    CocycleSpace s(c, chi, pr);
    std::string tag = "d=" + std::to_string(o.d);
    if (s.degree() <= 120) {
      CMatrix m = s.projector_matrix();
      Real err = max_abs(sub(matmul(m, m), scale(m, Complex(static_cast<long>(s.degree()), pr))));
      std::size_t rk = rank(m, epsilon(pr / 3, pr));
      add("projector_law " + tag, err.to_double() < tol && rk == static_cast<std::size_t>(o.dimension), err.to_double(),
          json{{"rank", rk}, {"expected_rank", o.dimension}});
    }
    double tv = 0;
    bool exact_ok = true;
    for (const auto& x : k.class_reps()) {
      if (k.class_index(x) == 0) continue;
      tv = std::max(tv, abs(s.family().trace(x)).to_double());
      exact_ok = exact_ok && trace_psi(k, chi, x).is_zero();
    }
    for (const auto& x : coprime_ideals(k, 30)) {
      auto g = k.is_principal(x);
      if (!g) continue;
      Complex e = trace_psi(k, chi, x).embed(pr);
      tv = std::max(tv, (abs(s.family().trace(x) - e) / (Real(1L, pr) + abs(e))).to_double());
    }
    add("trace_vanishing " + tag, exact_ok && tv < tol, tv);

    TwistWitness w = s.make_modular();
    double trace_res = abs(w.trace - Complex(static_cast<long>(s.degree()), pr)).to_double();
    add("modular_twist " + tag, trace_res < tol, trace_res, json{{"branch", w.branch}});

    if (B >= 20) {
      auto nf = newform_expansion(s.family(), 0, B);
      auto hr = hecke_verify(nf, member_eta(s.family(), 0));
      add("hecke_newform " + tag, hr.pass(), std::max(hr.max_multiplicative_residual, hr.max_recursion_residual));
      if (o.dimension == 1) {
        auto qe = canonical_direction(k, c, B);
        auto hd = hecke_verify(qe, chi);
        add("hecke_direction " + tag, hd.pass(), std::max(hd.max_multiplicative_residual, hd.max_recursion_residual));
      }
    }
  }

  {
    double cs = chowla_selberg_residual(k, pr);
    add("chowla_selberg", cs < tol, cs);
    double gg = gauss_gamma_residual(static_cast<long>(k.p()), pr);
    add("gauss_gamma_product", gg < tol, gg);
    auto pd = omega_period(c, pr);
    long p = static_cast<long>(k.p());
    double dres = (abs(pd.lattice_delta - Complex(-p * p * p, pr)) / (p * p * p)).to_double();
    add("Delta_of_Omega_OK", dres < tol, dres);
    add("Omega_reality", pd.real == (p % 8 == 7), 0.0);
    auto g = gross_curve(k, pr);
    double gres = (abs(g.disc - Complex(-p * p * p, g.prec)) / (p * p * p)).to_double();
    add("gross_discriminant", gres < tol && (k.class_number() > 1 || g.recognized()), gres);
    if (k.class_number() == 1) {
      auto chk = period_cross_check(g, pd, pr);
      add("agm_period_lattice", chk.pass, chk.relative_error);
    }
  }
  doc["results"] = json{{"all_pass", all}, {"checks", checks}};
  json res = json::object();
  for (const auto& ch : checks) res[ch["name"].get<std::string>()] = ch["residual"];
  doc["residuals"] = res;
  doc["choices"] = json{{"delta", delta_choices(c)}, {"tolerance", tol}};
}

}  // namespace

json complex_json(const Complex& z) {
  int dg = digits_for(z.prec());
  return json{{"re", z.re().str(dg)}, {"im", z.im().str(dg)}, {"prec_bits", z.prec()}};
}

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> cmds{"chars", "qexp", "gross", "period", "verify"};
  if (std::find(cmds.begin(), cmds.end(), cfg.command) == cmds.end())
    throw UsageError("unknown command '" + cfg.command + "'");
  if (!is_prime(cfg.p)) throw UsageError("p = " + std::to_string(cfg.p) + " is not prime");
  if (cfg.p <= 3 || cfg.p % 4 != 3) throw UsageError("p must satisfy p = 3 mod 4 and p > 3");
  if (cfg.terms < 1) throw UsageError("--terms must be at least 1");
  if (cfg.prec < 64) throw UsageError("--prec must be at least 64 bits");
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
  if (cfg.format == "csv" && cfg.command != "qexp") throw UsageError("csv output is defined for qexp only");
  if (cfg.order) {
    if (*cfg.order < 1 || ((cfg.p - 1) / 2) % *cfg.order != 0)
      throw UsageError("--order " + std::to_string(*cfg.order) + " does not divide (p-1)/2");
    if (cfg.command != "qexp") throw UsageError("--order applies to qexp only");
  }
}

json run_command(const RunConfig& cfg) {
  validate(cfg);
  FieldContext k(cfg.p);
  json doc = base_document(cfg);
  if (cfg.command == "chars") cmd_chars(k, doc);
  else if (cfg.command == "qexp") cmd_qexp(k, cfg, doc);
  else if (cfg.command == "gross") cmd_gross(k, cfg, doc);
  else if (cfg.command == "period") cmd_period(k, cfg, doc);
  else cmd_verify(k, cfg, doc);
  return doc;
}

std::string to_csv(const json& doc) {
  if (doc.at("command") != "qexp") throw UsageError("csv output is defined for qexp only");
  std::ostringstream out;
  out << "n,re,im,exact\n";
  for (const auto& row : doc["results"]["coefficients"]) {
    out << row["n"].get<std::size_t>() << ',' << row["value"]["re"].get<std::string>() << ','
        << row["value"]["im"].get<std::string>() << ',';
    const auto& e = row["exact"];
    if (e.is_number_integer()) out << e.get<long>();
    else if (e.is_string()) out << e.get<std::string>();
    else if (e.is_object()) {
      // coefficient vector in the power basis, ';'-separated
      bool first = true;
      for (const auto& q : e["coeffs"]) {
        out << (first ? "" : ";") << q.get<std::string>();
        first = false;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cmdir
