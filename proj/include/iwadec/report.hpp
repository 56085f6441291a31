#pragma once

// JSON documents for the command-line front end. Keys are sorted by the json
// library, arrays follow the engine's deterministic orders.

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwadec/sk1.hpp"
#include "iwadec/specfile.hpp"
#include "iwadec/wedderburn.hpp"

namespace iwadec {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json checks_json(const std::vector<Check>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return a;
}

inline json spec_json(const LoadedSpec& s) {
  json j;
  j["origin"] = s.file.origin;
  j["text"] = serialize(s.file);
  if (!(s.resolved == s.file)) j["resolved"] = serialize(s.resolved);
  j["l"] = s.spec.l;
  j["m"] = s.spec.m;
  j["h_order"] = s.spec.H->order();
  j["fin_order"] = s.spec.fin_order();
  return j;
}

inline json component_json(const ComponentReport& r) {
  const auto& o = r.orbit;
  json j;
  j["representative"] = o.representative;
  j["members"] = o.members;
  j["eta_degree"] = o.degree;
  j["w"] = o.w;
  j["v"] = o.v;
  j["center_field_degree"] = o.field_degree;
  j["eta_field_degree"] = o.eta_field_degree;
  j["eta_conductor"] = r.eta_conductor;
  j["g0_order"] = o.g0_order;
  j["dim"] = r.dim;
  j["dim_method"] = r.dim_method;
  j["center_dim"] = r.center_dim;
  j["chi_degree"] = r.chi_degree;
  j["dim_over_center"] = r.dim_over_center;
  // w/v is the Schur index when H is an l-group; otherwise it is reported unasserted
  j["schur_index"] = {{"value", r.schur_index}, {"asserted", r.pro_l}, {"basis", "w/v"}};
  j["matrix_degree"] = {{"value", r.matrix_degree}, {"asserted", r.pro_l}};
  j["cyclic_presentation"] = {{"sigma_exponent", r.sigma_exponent}, {"slot", "gamma^w"}, {"v", o.v}};
  j["checks"] = checks_json(r.verified);
  return j;
}

inline json verdict_json(const Verdict& v) {
  json j;
  j["status"] = to_string(v.status);
  j["rule"] = v.rule;
  j["group_class"] = to_string(v.group_class);
  if (v.q) j["q"] = v.q;
  if (v.footnote) j["footnote"] = "restrictions on H are not necessary for direct products";
  j["quotient_level"] = v.quotient_level;
  j["fin_order"] = v.fin_order;
  json obs = json::array();
  for (const auto& o : v.obligations)
    obs.push_back({{"conductor", o.conductor}, {"u_h_order", o.u.H->order()}, {"u_m", o.u.m}, {"u_fin_order", o.u_fin_order},
                   {"u_h_abelian", o.u.H->is_abelian()}});
  j["obligations"] = obs;
  if (!v.subgroup.empty()) j["subgroup"] = v.subgroup;
  if (!v.reduction_tree.empty()) {
    json t = json::array();
    for (const auto& c : v.reduction_tree) t.push_back(verdict_json(c));
    j["reduction_tree"] = t;
  }
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

inline json table_json(const CharacterTable& t) {
  json j;
  j["order"] = t.group_order;
  j["conductor"] = t.conductor;
  j["prime"] = t.prime;
  json cls = json::array();
  for (const auto& c : t.classes) cls.push_back({{"representative", c[0]}, {"size", c.size()}});
  j["classes"] = cls;
  j["degrees"] = t.degrees;
  json rows = json::array();
  for (const auto& r : t.values) {
    json row = json::array();
    for (const auto& v : r) row.push_back(v.minimized().str());
    rows.push_back(row);
  }
  j["values"] = rows;
  return j;
}

inline std::vector<std::string> deviations() {
  return {
      "v_chi is the least j >= 1 with eta^(gamma^j) conjugate to eta under the decomposition group (j = w when none is smaller)",
      "coefficients live in Q(zeta_e), e = exp(H); Gal(Q_l(zeta_e)/Q_l) is modelled by the decomposition group in (Z/e)^x",
      "ranks and centers over the function field are computed at T = 1 through the grading (h, i) -> t^-i (h, i), t^(l^m) = T",
      "ideals with |<supp e>| > 27 are sized by the trace |E| e(1) of the verified idempotent",
      "schur_index and matrix_degree are asserted from w/v, not recomputed from the algebra",
  };
}

struct DecomposeOptions {
  std::size_t cap = kDefaultCap;
  long level = -1;
  bool timing = false;
  bool centralizer = true;
};

/// Full component report. On an internal-consistency failure the document is
/// returned as far as it got, with "status" = "failed" and the failing identity.
inline json decompose_document(const LoadedSpec& ls, const DecomposeOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const GSpec& spec = ls.spec;
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["spec"] = spec_json(ls);
  doc["deviations"] = deviations();
  doc["components"] = json::array();
  doc["status"] = "ok";
  try {
    const Truncation tr = truncate(spec);
    const auto A = character_actions(spec);
    std::vector<GroupRingElement> eps;
    long total = 0;
    for (const auto& o : galois_orbits(A, spec.l)) {
      auto r = component_report(spec, tr, A, o);
      total += r.dim;
      eps.push_back(r.idempotent);
      doc["components"].push_back(component_json(r));
    }
    const FiniteGroup& g = tr.group;
    auto family = [&](const std::vector<GroupRingElement>& es) {
      GroupRingElement sum = gr_zero(g);
      bool orth = true, central = true;
      for (std::size_t a = 0; a < es.size(); ++a) {
        sum = gr_add(sum, es[a]);
        central = central && commutes_with(g, es[a], generating_set(g, whole(g)));
        for (std::size_t b = a + 1; b < es.size(); ++b) orth = orth && gr_is_zero(gr_mul(g, es[a], es[b]));
      }
      bool one = gr_equal(sum, gr_basis(g, g.identity()));
      if (!one || !orth || !central) throw InternalConsistency("idempotent family laws fail");
      return json{{"count", es.size()}, {"sum_is_one", one}, {"pairwise_orthogonal", orth}, {"central", central}};
    };
    doc["idempotent_checks"]["eps"] = family(eps);
    doc["idempotent_checks"]["eps"]["dim_total"] = total;
    if (total != g.order()) throw InternalConsistency("component dims sum to " + std::to_string(total) + ", not |G_fin|");

    auto d = is_q_elementary(spec, spec.l);
    if (d) {
      if (ls.designated_s && !std::binary_search(d->s_elements.begin(), d->s_elements.end(), *ls.designated_s))
        throw InternalConsistency("designated_s is not in the cyclic normal part");
      if (ls.designated_s && g.element_order(*ls.designated_s) != d->s_order)
        throw InternalConsistency("designated_s does not generate the cyclic normal part");
      json el = json::array();
      std::vector<GroupRingElement> es;
      for (const auto& part : elementary_decomposition(spec, tr, *d)) {
        es.push_back(part.e_i);
        json p;
        p["k"] = part.k;
        p["zeta_order"] = part.zeta_order;
        p["zeta_degree"] = part.zeta_degree;
        p["dim"] = part.ideal.dim;
        p["u_i_order"] = part.u_i.size();
        p["n"] = part.star.n;
        p["tau"] = part.star.tau;
        p["checks"] = checks_json(part.verified);
        json base = json::array();
        for (const auto& b : part.star.base)
          base.push_back({{"dim", b.ideal.dim}, {"schur_index", b.report.schur_index}, {"center_dim_in_G_i", b.report.center_dim}});
        p["base_components"] = base;
        json orbs = json::array();
        bool centralizer_done = !opt.centralizer;
        for (const auto& og : part.star.orbits) {
          json oj;
          oj["d"] = og.d;
          oj["members"] = og.members;
          oj["checks"] = checks_json(verify_orbit(g, part.star, og, spec.l));
          const auto& W = part.star.base[og.members.front()];
          if (!centralizer_done && og.d == 0 && part.star.ln > 1 && part.star.ln <= kCentralizerMaxLn &&
              W.ideal.dim <= kCentralizerMaxDimW) {
            auto cr = centralizer_check(g, part.star.b, part.star.x, part.star.ln, W.idempotent);
            oj["centralizer"] = {{"dim_w", cr.dim_w},   {"dim_f", cr.dim_f}, {"dim_e", cr.dim_e},
                                 {"dim_v", cr.dim_v},   {"dim_a", cr.dim_a}, {"dim_centralizer", cr.dim_centralizer},
                                 {"checks", checks_json(cr.verified)}};
            centralizer_done = true;
          }
          orbs.push_back(oj);
        }
        p["orbits"] = orbs;
        el.push_back(p);
      }
      doc["elementary"] = el;
      doc["idempotent_checks"]["e_i"] = family(es);
    }
    doc["verdict"] = verdict_json(verdict(spec, opt.cap, opt.level));
  } catch (const InternalConsistency& e) {
    doc["status"] = "failed";
    doc["error"] = e.what();
  }
  if (opt.timing)
    doc["timing"] = {{"recorded", true},
                     {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  else
    doc["timing"] = {{"recorded", false}};
  return doc;
}

}  // namespace iwadec
