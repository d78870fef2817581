#include "brnr/json_io.hpp"

#include <sstream>

#include "brnr/errors.hpp"

namespace brnr {

using nlohmann::json;

nlohmann::json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // translate the byte offset into line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "malformed JSON at line " << line << ", column " << col << ": " << e.what();
    throw ArgumentError(os.str());
  }
}

namespace {

std::vector<ElementId> element_ids(const json& j, const char* what) {
  if (!j.is_array()) throw ArgumentError(std::string(what) + " must be an array");
  std::vector<ElementId> out;
  for (const auto& v : j) out.push_back(v.get<ElementId>());
  return out;
}

}  // namespace

GroupPtr group_from_json(const json& j, std::int64_t element_cap) {
  if (!j.is_object() || !j.contains("kind"))
    throw ArgumentError("group JSON must be an object with a \"kind\" field");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "permutation") {
    int degree = j.at("degree").get<int>();
    std::vector<std::vector<int>> gens;
    for (const auto& g : j.at("generators")) gens.push_back(g.get<std::vector<int>>());
    return permutation_group(degree, gens, element_cap);
  }
  if (kind == "demarche")
    return demarche_group(j.at("l").get<std::int64_t>(), j.at("m").get<int>(), element_cap);
  if (kind == "abelian")
    return abelian_group_backend(j.at("invariants").get<std::vector<std::int64_t>>(),
                                 element_cap);
  if (kind == "direct_product") {
    const auto& factors = j.at("factors");
    if (!factors.is_array() || factors.empty())
      throw ArgumentError("direct_product needs a nonempty factor list");
    GroupPtr g = group_from_json(factors[0], element_cap);
    for (std::size_t i = 1; i < factors.size(); ++i)
      g = direct_product(g, group_from_json(factors[i], element_cap), element_cap);
    return g;
  }
  if (kind == "semidirect") {
    GroupPtr n = group_from_json(j.at("normal"), element_cap);
    GroupPtr h = group_from_json(j.at("acting"), element_cap);
    std::vector<std::vector<ElementId>> actions;
    for (const auto& a : j.at("action")) actions.push_back(element_ids(a, "action"));
    return semidirect_product(n, h, actions, element_cap);
  }
  throw ArgumentError("unknown group kind: " + kind);
}

namespace {

std::vector<ElementId> action_or_trivial(const json& j, const Group& g) {
  if (j.is_string()) {
    if (j.get<std::string>() == "trivial") return identity_table(g);
    throw ArgumentError("action must be \"trivial\" or an image array");
  }
  return element_ids(j, "action");
}

}  // namespace

GaloisSpec galois_from_json(const json& j, GroupPtr g) {
  if (!j.is_object() || !j.contains("mode"))
    throw ArgumentError("galois JSON must be an object with a \"mode\" field");
  GaloisSpec spec;
  spec.mode = j.at("mode").get<std::string>();
  if (spec.mode == "fq" || spec.mode == "local_unramified") {
    std::vector<ElementId> action = j.contains("action")
                                        ? action_or_trivial(j.at("action"), *g)
                                        : identity_table(*g);
    spec.frobenius = validate_frobenius(g, j.at("q").get<std::int64_t>(), std::move(action));
    return spec;
  }
  if (spec.mode == "real") {
    std::vector<ElementId> action = j.contains("action")
                                        ? action_or_trivial(j.at("action"), *g)
                                        : identity_table(*g);
    spec.finite = real_data(g, std::move(action));
    return spec;
  }
  if (spec.mode == "char0") {
    GroupPtr gamma = group_from_json(j.at("gamma"));
    std::vector<std::vector<ElementId>> action(gamma->order());
    std::vector<std::int64_t> cyclo(gamma->order());
    std::vector<bool> have_a(gamma->order(), false), have_c(gamma->order(), false);
    for (const auto& [key, val] : j.at("action").items()) {
      std::int64_t idx = std::stoll(key);
      if (idx < 0 || idx >= gamma->order())
        throw ArgumentError("action key out of range: " + key);
      action[idx] = action_or_trivial(val, *g);
      have_a[idx] = true;
    }
    for (const auto& [key, val] : j.at("cyclo").items()) {
      std::int64_t idx = std::stoll(key);
      if (idx < 0 || idx >= gamma->order())
        throw ArgumentError("cyclo key out of range: " + key);
      cyclo[idx] = val.get<std::int64_t>();
      have_c[idx] = true;
    }
    for (std::int64_t i = 0; i < gamma->order(); ++i)
      if (!have_a[i] || !have_c[i])
        throw ArgumentError("char0 data must cover every Galois element");
    spec.finite = validate_finite_galois(g, gamma, std::move(action), std::move(cyclo));
    return spec;
  }
  throw ArgumentError("unknown galois mode: " + spec.mode);
}

json element_to_json(const AbelianElement& e) { return json(e.coords); }

json invariants_to_json(const AbelianGroup& a) {
  return json{{"invariants", a.invariants()}};
}

json result_to_json(const BrauerResult& r, bool witnesses) {
  json out;
  out["mode"] = r.mode;
  out["brnral"] = invariants_to_json(r.invariants);
  out["h1"] = invariants_to_json(r.h1_invariants);
  json fixed = json::array();
  for (const auto& e : r.fixed_subgroup_gens) fixed.push_back(element_to_json(e));
  out["fixed_subgroup"] = fixed;
  json norms = json::array();
  for (const auto& e : r.norm_subgroup_gens) norms.push_back(element_to_json(e));
  out["norm_subgroup"] = norms;
  if (r.sha) out["sha1cyc"] = invariants_to_json(*r.sha);

  json certs = json::object();
  if (r.real_certificate) certs["real_orthogonality"] = *r.real_certificate;
  if (!r.local_certificates.empty()) {
    json lc = json::array();
    for (const auto& c : r.local_certificates)
      lc.push_back({{"n", c.n}, {"relevable_size", c.set_size}, {"orthogonal", c.orthogonal}});
    certs["relevable"] = lc;
  }
  out["certificates"] = certs;

  if (witnesses) {
    json w;
    w["gab"] = invariants_to_json(r.gab);
    w["gder_order"] = r.gder_order;
    if (!r.fixed_invariants.trivial() || r.mode == "fq" || r.mode == "local_unramified")
      w["fixed_invariants"] = invariants_to_json(r.fixed_invariants);
    json nw = json::array();
    for (const auto& x : r.norm_witnesses)
      nw.push_back({{"element", x.element}, {"n", x.length}, {"norm", element_to_json(x.value)}});
    w["generator_norms"] = nw;
    if (!r.surviving_reps.empty()) {
      json sc = json::array();
      for (const auto& a : r.surviving_reps) {
        json vals = json::array();
        for (const auto& v : a.values) vals.push_back(element_to_json(v));
        sc.push_back(vals);
      }
      w["surviving_cocycles"] = sc;
    }
    out["witnesses"] = w;
  }
  return out;
}

json report_to_json(const OracleReport& r) {
  return json{{"case", r.case_id},
              {"check", r.check},
              {"agreement", r.agreement},
              {"detail", r.detail}};
}

}  // namespace brnr
