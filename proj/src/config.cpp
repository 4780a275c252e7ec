#include "oadlc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "oadlc/units.hpp"

namespace oadlc {

using json = nlohmann::ordered_json;

namespace {

// Reads keys from one object and remembers which were consumed, so leftovers
// can be reported as unknown.
class Block {
 public:
  Block(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
    if (!doc_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return doc_.contains(key) && !doc_.at(key).is_null();
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
    return v.get<double>();
  }

  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  int integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
    return v.get<int>();
  }

  int integer(const std::string& key, int fallback) { return has(key) ? integer(key) : fallback; }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) throw ConfigError(where(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::pair<double, double> pair(const std::string& key, std::pair<double, double> fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ConfigError(where(key) + ": expected [lo, hi]");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  std::optional<Block> child(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return Block(doc_.at(key), path_.empty() ? key : path_ + "." + key);
  }

  void finish() const {
    for (const auto& item : doc_.items())
      if (!seen_.count(item.key())) throw ConfigError(where(item.key()) + ": unknown key");
  }

  std::string where(const std::string& key = {}) const {
    std::string p = path_;
    if (!key.empty()) p += p.empty() ? key : "." + key;
    return "config key '" + (p.empty() ? std::string("<root>") : p) + "'";
  }

 private:
  const json& at(const std::string& key) {
    seen_.insert(key);
    if (!doc_.contains(key)) throw ConfigError(where(key) + ": missing");
    return doc_.at(key);
  }

  const json& doc_;
  std::string path_;
  std::set<std::string> seen_;
};

LayerGeometry read_geometry(Block& b) {
  LayerGeometry g;
  g.W = units::mm_to_m(b.number("W_mm"));
  g.n = b.integer("n");
  g.alpha = units::deg_to_rad(b.number("alpha_deg"));
  return g;
}

Layout read_layout(Block& b) {
  const std::string kind = b.text("layout", "square");
  if (kind == "square") {
    if (b.has("R_mm")) throw ConfigError(b.where("R_mm") + ": only valid for a circular layout");
    return Layout::square();
  }
  if (kind == "circular") return Layout::circular(units::mm_to_m(b.number("R_mm")));
  throw ConfigError(b.where("layout") + ": expected \"square\" or \"circular\"");
}

json geometry_json(const LayerGeometry& g) {
  return {{"W_mm", units::m_to_mm(g.W)}, {"n", g.n}, {"alpha_deg", units::rad_to_deg(g.alpha)}};
}

}  // namespace

Material default_material() {
  return {.youngs_modulus = units::gpa_to_pa(2.7),
          .poisson_ratio = 0.43,
          .thickness = units::mm_to_m(0.125),
          .density = units::g_cm3_to_kg_m3(1.39)};
}

Assembly DesignConfig::assembly() const {
  if (!layer1) throw ConfigError("config key 'assembly': missing");
  const LayerGeometry& g2 = layer2 ? *layer2 : *layer1;
  return {make_layer(material, layer1->W, layer1->alpha, layer1->n, layout),
          make_layer(material, g2.W, g2.alpha, g2.n, layout)};
}

DesignPoint DesignConfig::design_point() const {
  if (!layer1) throw ConfigError("config key 'assembly': missing");
  return {layer1->W, layer1->alpha, layer1->n};
}

DesignConfig parse_config(const json& doc) {
  DesignConfig cfg;
  cfg.material = default_material();
  Block root(doc, "");

  if (auto m = root.child("material")) {
    cfg.material.youngs_modulus = units::gpa_to_pa(m->number("E_GPa", 2.7));
    cfg.material.poisson_ratio = m->number("nu", cfg.material.poisson_ratio);
    cfg.material.thickness = units::mm_to_m(m->number("t_mm", 0.125));
    cfg.material.density = units::g_cm3_to_kg_m3(m->number("rho_g_cm3", 1.39));
    m->finish();
  }
  try {
    validate(cfg.material);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config key 'material': ") + e.what());
  }

  if (auto a = root.child("assembly")) {
    cfg.layer1 = read_geometry(*a);
    cfg.eta = units::deg_to_rad(a->number("eta_deg", 0.0));
    cfg.layout = read_layout(*a);
    if (auto l2 = a->child("layer2")) {
      cfg.layer2 = read_geometry(*l2);
      l2->finish();
    }
    a->finish();
  }
  cfg.constraints.layout = cfg.layout;

  if (auto c = root.child("constraints")) {
    cfg.has_constraints = true;
    DesignConstraints& k = cfg.constraints;
    auto mm = [](std::optional<double> v) -> std::optional<double> {
      if (v) return units::mm_to_m(*v);
      return std::nullopt;
    };
    k.fab_length = mm(c->optional_number("L_fab_mm"));
    k.folded_length_min = mm(c->optional_number("L_min_mm"));
    k.folded_length_max = mm(c->optional_number("L_max_mm"));
    k.thickness_min = mm(c->optional_number("t_min_mm"));
    k.thickness_max = mm(c->optional_number("t_max_mm"));
    if (auto K = c->optional_number("K_min_N_per_mm")) k.K_min = units::n_per_mm_to_n_per_m(*K);
    if (auto D = c->optional_number("D_min_mNm")) k.D_min = units::mnm_to_nm(*D);
    const auto W = c->pair("W_bounds_mm", {1.0, 50.0});
    k.W_bounds = {units::mm_to_m(W.first), units::mm_to_m(W.second)};
    if (c->has("n_bounds")) {
      const json& nb = doc.at("constraints").at("n_bounds");
      if (!nb.is_array() || nb.size() != 2 || !nb[0].is_number_integer() || !nb[1].is_number_integer())
        throw ConfigError(c->where("n_bounds") + ": expected [lo, hi] integers");
      k.n_bounds = {nb[0].get<int>(), nb[1].get<int>()};
    }
    const auto A = c->pair("alpha_bounds_deg", {5.0, 175.0});
    k.alpha_bounds = {units::deg_to_rad(A.first), units::deg_to_rad(A.second)};
    k.eta = units::deg_to_rad(c->number("eta_deg", 0.0));
    c->finish();
    try {
      validate(k);
    } catch (const InvalidProblem& e) {
      throw ConfigError(std::string("config key 'constraints': ") + e.what());
    }
  }

  if (auto m = root.child("model")) {
    const std::string units_mode = m->text("unit_count", "n");
    if (units_mode == "n") {
      cfg.model.unit_count = UnitCount::Creases;
    } else if (units_mode == "n+1") {
      cfg.model.unit_count = UnitCount::Panels;
    } else {
      throw ConfigError(m->where("unit_count") + ": expected \"n\" or \"n+1\"");
    }
    m->finish();
  }
  cfg.optimizer.model = cfg.model;

  if (auto o = root.child("optimizer")) {
    if (o->has("seed_grid")) {
      const json& g = doc.at("optimizer").at("seed_grid");
      if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer() ||
          g[0].get<int>() < 1 || g[1].get<int>() < 1)
        throw ConfigError(o->where("seed_grid") + ": expected [W_count, alpha_count] >= 1");
      cfg.optimizer.seed_W = g[0].get<int>();
      cfg.optimizer.seed_alpha = g[1].get<int>();
    }
    const int threads = o->integer("threads", 0);
    if (threads < 0) throw ConfigError(o->where("threads") + ": must be >= 0");
    cfg.optimizer.threads = static_cast<unsigned>(threads);
    cfg.optimizer.polish_tolerance = o->number("polish_tolerance", cfg.optimizer.polish_tolerance);
    cfg.exhaustive_grid.W_step = units::mm_to_m(o->number("exhaustive_W_step_mm", 0.5));
    cfg.exhaustive_grid.alpha_step = units::deg_to_rad(o->number("exhaustive_alpha_step_deg", 1.0));
    if (!(cfg.exhaustive_grid.W_step > 0.0 && cfg.exhaustive_grid.alpha_step > 0.0))
      throw ConfigError(o->where() + ": exhaustive grid steps must be > 0");
    o->finish();
  }

  if (auto out = root.child("output")) {
    cfg.output_dir = out->text("dir", "");
    cfg.connector_allowance = out->number("connector_allowance", 0.0);
    if (!(cfg.connector_allowance >= 0.0))
      throw ConfigError(out->where("connector_allowance") + ": must be >= 0");
    if (auto t = out->child("tabs")) {
      cfg.pattern.tabs.enabled = t->boolean("enabled", true);
      cfg.pattern.tabs.depth_mm = t->number("depth_mm", cfg.pattern.tabs.depth_mm);
      cfg.pattern.tabs.inset_fraction = t->number("inset_fraction", cfg.pattern.tabs.inset_fraction);
      t->finish();
    }
    cfg.pattern.kerf_mm = out->number("kerf_mm", 0.0);
    const std::string first = out->text("first_crease", "mountain");
    if (first == "mountain") {
      cfg.pattern.first_crease = CreaseKind::Mountain;
    } else if (first == "valley") {
      cfg.pattern.first_crease = CreaseKind::Valley;
    } else {
      throw ConfigError(out->where("first_crease") + ": expected \"mountain\" or \"valley\"");
    }
    cfg.segments_csv = out->boolean("segments_csv", false);
    out->finish();
  }
  cfg.optimizer.connector_allowance = cfg.connector_allowance;
  if (cfg.has_constraints && cfg.constraints.fab_length)
    cfg.pattern.fab_limit_mm = units::m_to_mm(*cfg.constraints.fab_length);

  root.finish();
  return cfg;
}

DesignConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(doc);
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + assignment + "' must look like key.path=value");
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;
  }

  json* node = &doc;
  std::istringstream parts(path);
  std::string part;
  std::vector<std::string> keys;
  while (std::getline(parts, part, '.')) keys.push_back(part);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].empty()) throw ConfigError("override '" + assignment + "' has an empty key");
    if (!node->is_object()) throw ConfigError("override '" + assignment + "' descends into a non-object");
    if (i + 1 == keys.size()) {
      (*node)[keys[i]] = value;
    } else {
      if (!node->contains(keys[i])) (*node)[keys[i]] = json::object();
      node = &(*node)[keys[i]];
    }
  }
}

DesignConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc);
}

json to_json(const DesignConfig& cfg) {
  json out;
  out["material"] = {{"E_GPa", units::pa_to_gpa(cfg.material.youngs_modulus)},
                     {"nu", cfg.material.poisson_ratio},
                     {"t_mm", units::m_to_mm(cfg.material.thickness)},
                     {"rho_g_cm3", units::kg_m3_to_g_cm3(cfg.material.density)}};
  if (cfg.layer1) {
    json a = geometry_json(*cfg.layer1);
    a["eta_deg"] = units::rad_to_deg(cfg.eta);
    a["layout"] = to_string(cfg.layout.kind);
    if (cfg.layout.kind == Layout::Kind::Circular) a["R_mm"] = units::m_to_mm(cfg.layout.radius);
    a["layer2"] = geometry_json(cfg.layer2 ? *cfg.layer2 : *cfg.layer1);
    out["assembly"] = a;
  }
  if (cfg.has_constraints) {
    const DesignConstraints& k = cfg.constraints;
    auto mm = [](const std::optional<double>& v) -> json {
      return v ? json(units::m_to_mm(*v)) : json(nullptr);
    };
    out["constraints"] = {
        {"L_fab_mm", mm(k.fab_length)},
        {"L_min_mm", mm(k.folded_length_min)},
        {"L_max_mm", mm(k.folded_length_max)},
        {"t_min_mm", mm(k.thickness_min)},
        {"t_max_mm", mm(k.thickness_max)},
        {"K_min_N_per_mm", k.K_min ? json(units::n_per_m_to_n_per_mm(*k.K_min)) : json(nullptr)},
        {"D_min_mNm", k.D_min ? json(units::nm_to_mnm(*k.D_min)) : json(nullptr)},
        {"W_bounds_mm", {units::m_to_mm(k.W_bounds.lo), units::m_to_mm(k.W_bounds.hi)}},
        {"n_bounds", {k.n_bounds.lo, k.n_bounds.hi}},
        {"alpha_bounds_deg",
         {units::rad_to_deg(k.alpha_bounds.lo), units::rad_to_deg(k.alpha_bounds.hi)}},
        {"eta_deg", units::rad_to_deg(k.eta)},
    };
  }
  out["model"] = {{"unit_count", cfg.model.unit_count == UnitCount::Creases ? "n" : "n+1"}};
  out["optimizer"] = {
      {"seed_grid", {cfg.optimizer.seed_W, cfg.optimizer.seed_alpha}},
      {"threads", cfg.optimizer.threads},
      {"polish_tolerance", cfg.optimizer.polish_tolerance},
      {"exhaustive_W_step_mm", units::m_to_mm(cfg.exhaustive_grid.W_step)},
      {"exhaustive_alpha_step_deg", units::rad_to_deg(cfg.exhaustive_grid.alpha_step)},
  };
  out["output"] = {
      {"dir", cfg.output_dir},
      {"connector_allowance", cfg.connector_allowance},
      {"tabs",
       {{"enabled", cfg.pattern.tabs.enabled},
        {"depth_mm", cfg.pattern.tabs.depth_mm},
        {"inset_fraction", cfg.pattern.tabs.inset_fraction}}},
      {"kerf_mm", cfg.pattern.kerf_mm},
      {"first_crease", to_string(cfg.pattern.first_crease)},
      {"segments_csv", cfg.segments_csv},
  };
  return out;
}

}  // namespace oadlc
