#include "spec_io.hpp"

#include <fstream>
#include <sstream>

namespace ahm {

std::string library_version() { return "0.1.0"; }

namespace {

int parse_order(const std::string& key) {
  try {
    size_t pos = 0;
    const int v = std::stoi(key, &pos);
    if (pos != key.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw SpecError("bad radial order key '" + key + "'");
  }
}

std::pair<int, int> parse_component(const std::string& key, int n) {
  const auto comma = key.find(',');
  if (comma == std::string::npos)
    throw SpecError("w_hat component key must look like \"i,j\"");
  const int i = parse_order(key.substr(0, comma));
  const int j = parse_order(key.substr(comma + 1));
  if (i < 3 || j < 3 || i > n || j > n)
    throw SpecError("w_hat component indices must lie in 3..n");
  return {i - 3, j - 3};
}

}  // namespace

MetricSpec spec_from_json(const ordered_json& j) {
  if (!j.is_object()) throw SpecError("spec document must be a JSON object");
  BackgroundParams p;
  try {
    p.n = j.at("n").get<int>();
    p.a = j.at("a").get<double>();
    p.r0 = j.at("r0").get<double>();
    p.torus_periods = j.at("lambda").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("spec document: ") + e.what());
  }
  Background bg(p);
  const double beta = bg.beta();
  std::vector<double> periods;
  periods.push_back(beta);
  for (double l : p.torus_periods) periods.push_back(l);

  ScalarRadialSeries eu;
  if (j.contains("exp_u_hat")) {
    for (const auto& [key, val] : j.at("exp_u_hat").at("terms").items())
      eu.set(parse_order(key), val.get<double>());
  }

  AngularRadialSeries ev(beta);
  if (j.contains("exp_v_hat")) {
    for (const auto& [key, val] : j.at("exp_v_hat").at("terms").items()) {
      AngularSeries s(beta);
      for (const auto& [mode, amps] : val.items()) {
        const auto pair = amps.get<std::vector<double>>();
        if (pair.size() != 2)
          throw SpecError("exp_v_hat mode entries are [cos, sin] pairs");
        s.add(parse_order(mode), pair[0], pair[1]);
      }
      ev.set(parse_order(key), std::move(s));
    }
  }

  TensorRadialSeries w(p.n - 2, periods);
  if (j.contains("w_hat")) {
    for (const auto& [key, val] : j.at("w_hat").at("terms").items()) {
      TorusTensorSeries t(p.n - 2, periods);
      for (const auto& [comp, terms] : val.items()) {
        const auto [ci, cj] = parse_component(comp, p.n);
        for (const auto& term : terms) {
          FourierTerm ft;
          ft.amp = term.at("amp").get<double>();
          ft.k = term.at("k").get<std::vector<int>>();
          const auto ph = term.at("phase").get<std::vector<int>>();
          if (ft.k.size() != periods.size() || ph.size() != periods.size())
            throw SpecError("w_hat term k/phase must have n-1 entries");
          for (int x : ph) {
            if (x != 0 && x != 1) throw SpecError("phase entries are 0 or 1");
            ft.phase.push_back(uint8_t(x));
          }
          t.at(ci, cj).add_term(std::move(ft));
        }
      }
      w.set(parse_order(key), std::move(t));
    }
  }
  return MetricSpec(std::move(bg), std::move(eu), std::move(ev), std::move(w));
}

MetricSpec spec_from_string(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("spec parse: ") + e.what());
  }
  return spec_from_json(j);
}

MetricSpec spec_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return spec_from_string(ss.str());
}

ordered_json spec_to_json(const MetricSpec& spec) {
  const Background& bg = spec.background();
  ordered_json j;
  j["n"] = bg.n();
  j["a"] = bg.a();
  j["r0"] = bg.r0();
  j["lambda"] = bg.torus_periods();

  ordered_json ut = ordered_json::object();
  for (const auto& [order, c] : spec.exp_u_hat_series().terms())
    if (order > 0) ut[std::to_string(order)] = c;
  j["exp_u_hat"] = {{"terms", ut}};

  ordered_json vt = ordered_json::object();
  for (const auto& [order, s] : spec.exp_v_hat_series().terms()) {
    if (order == 0) continue;
    ordered_json modes = ordered_json::object();
    for (const auto& [k, ab] : s.modes())
      modes[std::to_string(k)] = {ab.first, ab.second};
    vt[std::to_string(order)] = modes;
  }
  j["exp_v_hat"] = {{"terms", vt}};

  ordered_json wt = ordered_json::object();
  for (const auto& [order, t] : spec.w_hat_series().terms()) {
    ordered_json comps = ordered_json::object();
    for (int i = 0; i < t.dim(); ++i)
      for (int jj = i; jj < t.dim(); ++jj) {
        const MultiFourier& mf = t.at(i, jj);
        if (mf.empty()) continue;
        ordered_json terms = ordered_json::array();
        for (const auto& term : mf.terms()) {
          ordered_json e;
          e["k"] = term.k;
          std::vector<int> ph(term.phase.begin(), term.phase.end());
          e["phase"] = ph;
          e["amp"] = term.amp;
          terms.push_back(e);
        }
        comps[std::to_string(i + 3) + "," + std::to_string(jj + 3)] = terms;
      }
    wt[std::to_string(order)] = comps;
  }
  j["w_hat"] = {{"terms", wt}};
  return j;
}

ordered_json diagnostics_to_json(const SpecDiagnostics& diag) {
  ordered_json j;
  j["exp_u_positive"] = diag.exp_u_positive;
  j["exp_v_positive"] = diag.exp_v_positive;
  j["gamma_positive"] = diag.gamma_positive;
  j["leading_orders_ok"] = diag.leading_orders_ok;
  j["regularity_residual"] = diag.regularity_residual;
  j["regularity_ok"] = diag.regularity_ok;
  j["pass"] = diag.pass();
  if (diag.failure_point) {
    j["failure_point"] = {{"r", diag.failure_point->r},
                          {"xi", diag.failure_point->xi},
                          {"phi", diag.failure_point->phi}};
  }
  if (!diag.note.empty()) j["note"] = diag.note;
  return j;
}

ordered_json report_to_json(const EnergyReport& rep) {
  ordered_json j;
  j["library_version"] = library_version();
  j["E_g"] = rep.E_g;
  j["E_hm"] = rep.E_hm;
  j["difference"] = rep.difference;
  j["r_tilde_0"] = rep.r_tilde_0;
  j["r_breve_0"] = rep.r_breve_0;
  j["identity_residual"] = rep.identity_residual;
  j["A_integral"] = rep.A_integral;
  j["lower_bound"] = rep.lower_bound;
  j["lower_bound_ok"] = rep.lower_bound_ok;
  j["min_deficit"] = rep.min_deficit;
  j["l1_sup"] = rep.l1_sup;
  j["regularity_residual"] = rep.regularity_residual;
  j["horizon_residual"] = rep.horizon_residual;
  j["xi_cancellation"] = rep.xi_cancellation;
  j["hypotheses"] = {{"spec_valid", rep.flags.spec_valid},
                     {"regularity", rep.flags.regularity},
                     {"beta_match", rep.flags.beta_match},
                     {"scalar_curvature_gate", rep.flags.r_gate},
                     {"trace_condition", rep.flags.l1},
                     {"torus_condition", rep.flags.torus_condition}};
  switch (rep.verdict) {
    case Verdict::strict: j["verdict"] = "strict"; break;
    case Verdict::equality: j["verdict"] = "equality"; break;
    case Verdict::hypothesis_failed: j["verdict"] = "hypothesis_failed"; break;
  }
  j["rigidity_residual"] = rep.rigidity_residual;
  j["rigidity_evaluated"] = rep.rigidity_evaluated;
  j["tolerances"] = {{"identity", rep.options.tol_identity},
                     {"equality", rep.options.tol_equality},
                     {"rigidity", rep.options.tol_rigidity},
                     {"scalar_curvature_gate", rep.options.tol_r_gate},
                     {"trace_condition", rep.options.tol_l1},
                     {"torus_condition", rep.options.tol_torus},
                     {"regularity", rep.options.tol_regularity}};
  j["grid"] = {{"nr", rep.options.nr},
               {"nxi", rep.options.nxi},
               {"nphi", rep.options.nphi},
               {"identity_nxi", rep.options.identity.nxi},
               {"identity_nphi", rep.options.identity.nphi}};
  return j;
}

}  // namespace ahm
