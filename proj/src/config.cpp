#include "fastice/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fastice/errors.hpp"
#include "fastice/mesh.hpp"

namespace fastice {

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || !std::isfinite(x)) {
    throw ConfigError("'" + key + "' expects a finite number, got '" + value + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
  return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + value + "'");
}

std::string format_bool(bool b) { return b ? "true" : "false"; }

template <typename Enum>
struct EnumNames {
  std::vector<std::pair<Enum, std::string>> names;

  Enum parse(const std::string& key, const std::string& value) const {
    std::string valid;
    for (const auto& [e, n] : names) {
      if (n == value) return e;
      valid += (valid.empty() ? "" : ", ") + n;
    }
    throw ConfigError("'" + key + "' must be one of: " + valid + " (got '" + value + "')");
  }
  std::string format(Enum e) const {
    for (const auto& [v, n] : names) {
      if (v == e) return n;
    }
    return {};
  }
};

const EnumNames<StrengthSign> kStrengthSign{
    {{StrengthSign::hibler, "hibler"}, {StrengthSign::printed, "printed"}}};
const EnumNames<OceanDragMode> kOceanDrag{
    {{OceanDragMode::quadratic, "quadratic"}, {OceanDragMode::linearized, "linearized"}}};
const EnumNames<BergDragTreatment> kBergDrag{{{BergDragTreatment::lagged, "lagged"},
                                              {BergDragTreatment::semi_implicit, "semi_implicit"}}};
const EnumNames<FunctionalMode> kPhiMode{{{FunctionalMode::discrete_point, "discrete_point"},
                                          {FunctionalMode::continuous_norm, "continuous_norm"}}};
const EnumNames<LinearMethod> kLinearMethod{
    {{LinearMethod::direct, "direct"}, {LinearMethod::krylov, "krylov"}}};

struct Entry {
  std::string key;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define FASTICE_DOUBLE(KEY, FIELD)                                                           \
  Entry{KEY, [](ScenarioConfig& c, const std::string& v) { c.FIELD = parse_double(KEY, v); }, \
        [](const ScenarioConfig& c) { return format_double(c.FIELD); }}
#define FASTICE_INT(KEY, FIELD)                                                           \
  Entry{KEY, [](ScenarioConfig& c, const std::string& v) { c.FIELD = parse_int(KEY, v); }, \
        [](const ScenarioConfig& c) { return std::to_string(c.FIELD); }}
#define FASTICE_BOOL(KEY, FIELD)                                                           \
  Entry{KEY, [](ScenarioConfig& c, const std::string& v) { c.FIELD = parse_bool(KEY, v); }, \
        [](const ScenarioConfig& c) { return format_bool(c.FIELD); }}
#define FASTICE_ENUM(KEY, FIELD, NAMES)                                                      \
  Entry{KEY, [](ScenarioConfig& c, const std::string& v) { c.FIELD = NAMES.parse(KEY, v); }, \
        [](const ScenarioConfig& c) { return NAMES.format(c.FIELD); }}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      Entry{"name", [](ScenarioConfig& c, const std::string& v) { c.name = v; },
            [](const ScenarioConfig& c) { return c.name; }},
      FASTICE_DOUBLE("domain.extent_x", extent.x()),
      FASTICE_DOUBLE("domain.extent_y", extent.y()),
      FASTICE_DOUBLE("mesh.resolution", resolution),
      FASTICE_INT("mesh.quadrature_order", quadrature_order),
      FASTICE_DOUBLE("time.dt", dt),
      FASTICE_DOUBLE("time.duration", duration),
      FASTICE_INT("output.every", output_every),
      FASTICE_DOUBLE("initial.a0", a0),
      FASTICE_DOUBLE("initial.h0", h0),
      Entry{"inflow.a_in",
            [](ScenarioConfig& c, const std::string& v) { c.a_in = parse_double("inflow.a_in", v); },
            [](const ScenarioConfig& c) { return format_double(c.boundary_data().a_in); }},
      Entry{"inflow.h_in",
            [](ScenarioConfig& c, const std::string& v) { c.h_in = parse_double("inflow.h_in", v); },
            [](const ScenarioConfig& c) { return format_double(c.boundary_data().h_in); }},
      FASTICE_DOUBLE("forcing.ocean_x", forcing.ocean_velocity.x()),
      FASTICE_DOUBLE("forcing.ocean_y", forcing.ocean_velocity.y()),
      FASTICE_DOUBLE("forcing.wind_x", forcing.wind_velocity.x()),
      FASTICE_DOUBLE("forcing.wind_y", forcing.wind_velocity.y()),
      FASTICE_BOOL("forcing.coriolis", forcing.coriolis_enabled),
      FASTICE_DOUBLE("forcing.coriolis_parameter", forcing.coriolis_parameter),
      FASTICE_DOUBLE("rheology.ice_strength", rheology.ice_strength_param),
      FASTICE_DOUBLE("rheology.concentration_param", rheology.concentration_param),
      FASTICE_DOUBLE("rheology.delta_min", rheology.delta_min),
      FASTICE_ENUM("rheology.strength_sign", rheology.strength_sign, kStrengthSign),
      FASTICE_DOUBLE("physics.ice_density", drag.ice_density),
      FASTICE_DOUBLE("physics.berg_density", drag.berg_density),
      FASTICE_DOUBLE("physics.ocean_density", drag.ocean_density),
      FASTICE_DOUBLE("physics.air_density", drag.air_density),
      FASTICE_DOUBLE("drag.ocean_coeff", drag.ocean_drag_coeff),
      FASTICE_DOUBLE("drag.air_coeff", drag.air_drag_coeff),
      FASTICE_DOUBLE("drag.ice_resistance_coeff", drag.ice_resistance_coeff),
      FASTICE_DOUBLE("drag.ocean_body_coeff", body.ocean_body_coeff),
      FASTICE_DOUBLE("drag.air_body_coeff", body.air_body_coeff),
      FASTICE_ENUM("drag.ocean_mode", drag.ocean_drag_mode, kOceanDrag),
      FASTICE_DOUBLE("drag.linear_velocity", drag.linear_drag_velocity),
      FASTICE_BOOL("drag.includes_concentration", drag.drag_includes_concentration),
      FASTICE_ENUM("drag.berg_treatment", berg_drag, kBergDrag),
      FASTICE_BOOL("advection.enabled", advection),
      FASTICE_ENUM("diagnostics.phi_mode", phi_mode, kPhiMode),
      FASTICE_INT("solver.picard_iterations", solver.picard_iterations),
      FASTICE_INT("solver.max_iterations", solver.max_iterations),
      FASTICE_DOUBLE("solver.relative_tolerance", solver.relative_tolerance),
      FASTICE_DOUBLE("solver.absolute_tolerance", solver.absolute_tolerance_density),
      FASTICE_INT("solver.line_search_halvings", solver.max_line_search_halvings),
      FASTICE_DOUBLE("solver.min_thickness", min_thickness),
      FASTICE_ENUM("solver.linear_method", solver.linear.method, kLinearMethod),
      FASTICE_DOUBLE("solver.linear_tolerance", solver.linear.relative_tolerance),
      FASTICE_INT("solver.linear_max_iterations", solver.linear.max_iterations),
      FASTICE_BOOL("solver.reuse_factorization", solver.linear.reuse_factorization),
      FASTICE_INT("solver.refactor_after", solver.linear.refactor_after),
  };
  return table;
}

#undef FASTICE_DOUBLE
#undef FASTICE_INT
#undef FASTICE_BOOL
#undef FASTICE_ENUM

const Entry* find_entry(const std::string& key) {
  for (const auto& e : entries()) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

void set_rect_value(Rect& r, std::map<std::string, bool>& seen, const std::string& key,
                    const std::string& field, const std::string& value) {
  const double x = parse_double(key, value);
  if (field == "x_min") r.lower_left.x() = x;
  else if (field == "y_min") r.lower_left.y() = x;
  else if (field == "x_max") r.upper_right.x() = x;
  else if (field == "y_max") r.upper_right.y() = x;
  else throw ConfigError("unknown key '" + key + "'");
  seen[field] = true;
}

}  // namespace

MomentumParams ScenarioConfig::momentum_params() const {
  MomentumParams p;
  p.rheology = rheology;
  p.drag = drag;
  p.berg_drag = berg_drag;
  p.quadrature_order = quadrature_order;
  p.min_thickness = min_thickness;
  return p;
}

int ScenarioConfig::num_steps() const {
  if (!(dt > 0.0)) return 0;
  return static_cast<int>(std::llround(duration / dt));
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig c;
  enum class Block { global, berg, region };
  Block block = Block::global;
  std::map<std::string, bool> grounding_seen;
  Rect grounding_rect;
  std::map<std::string, bool> region_seen;

  auto finish_region = [&] {
    if (block == Block::region && region_seen.size() < 4) {
      throw ConfigError("[region] block '" + c.regions.back().name +
                        "' needs x_min, y_min, x_max and y_max");
    }
  };

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";

    if (line.front() == '[') {
      finish_region();
      if (line == "[berg]") {
        block = Block::berg;
        c.bergs.emplace_back();
      } else if (line == "[region]") {
        block = Block::region;
        c.regions.push_back({"region" + std::to_string(c.regions.size()), {}});
        region_seen.clear();
      } else {
        throw ConfigError(where + "unknown block " + line + " (expected [berg] or [region])");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key.find('.') == std::string::npos && key != "name" && block == Block::berg) {
        BergSpec& b = c.bergs.back();
        if (key == "x") b.position.x() = parse_double(key, value);
        else if (key == "y") b.position.y() = parse_double(key, value);
        else if (key == "radius") b.radius = parse_double(key, value);
        else if (key == "height") b.height = parse_double(key, value);
        else if (key == "grounded") b.grounded = parse_bool(key, value);
        else throw ConfigError("unknown berg key '" + key + "'");
      } else if (key.find('.') == std::string::npos && block == Block::region) {
        if (key == "name") c.regions.back().name = value;
        else set_rect_value(c.regions.back().rect, region_seen, key, key, value);
      } else if (key.rfind("grounding.", 0) == 0) {
        set_rect_value(grounding_rect, grounding_seen, key, key.substr(10), value);
      } else if (const Entry* e = find_entry(key)) {
        e->set(c, value);
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& err) {
      throw ConfigError(where + err.what());
    }
  }
  finish_region();

  if (!grounding_seen.empty()) {
    if (grounding_seen.size() != 4) {
      throw ConfigError("grounding region needs x_min, y_min, x_max and y_max");
    }
    c.grounding = GroundingRegion{grounding_rect.lower_left, grounding_rect.upper_right};
  }
  return c;
}

ScenarioConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream os;
  for (const auto& e : entries()) os << e.key << " = " << e.get(c) << '\n';
  if (c.grounding) {
    os << "grounding.x_min = " << format_double(c.grounding->lower_left.x()) << '\n'
       << "grounding.y_min = " << format_double(c.grounding->lower_left.y()) << '\n'
       << "grounding.x_max = " << format_double(c.grounding->upper_right.x()) << '\n'
       << "grounding.y_max = " << format_double(c.grounding->upper_right.y()) << '\n';
  }
  for (const auto& r : c.regions) {
    os << "\n[region]\n"
       << "name = " << r.name << '\n'
       << "x_min = " << format_double(r.rect.lower_left.x()) << '\n'
       << "y_min = " << format_double(r.rect.lower_left.y()) << '\n'
       << "x_max = " << format_double(r.rect.upper_right.x()) << '\n'
       << "y_max = " << format_double(r.rect.upper_right.y()) << '\n';
  }
  for (const auto& b : c.bergs) {
    os << "\n[berg]\n"
       << "x = " << format_double(b.position.x()) << '\n'
       << "y = " << format_double(b.position.y()) << '\n'
       << "radius = " << format_double(b.radius) << '\n'
       << "height = " << format_double(b.height) << '\n'
       << "grounded = " << format_bool(b.grounded) << '\n';
  }
  return os.str();
}

void validate_config(const ScenarioConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(c.extent.x() > 0.0 && c.extent.y() > 0.0, "domain extents must be positive");
  require(c.resolution > 0.0, "mesh.resolution must be positive");
  require(c.quadrature_order >= 1 && c.quadrature_order <= 10,
          "mesh.quadrature_order must be between 1 and 10");
  require(c.dt > 0.0, "time.dt must be positive");
  require(c.duration >= 0.0, "time.duration must be non-negative");
  const double steps = c.duration / c.dt;
  require(std::abs(steps - std::round(steps)) <= 1e-9 * std::max(1.0, steps),
          "time.duration must be a whole number of time steps");
  require(c.output_every >= 0, "output.every must be non-negative");
  require(c.a0 >= 0.0 && c.a0 <= 1.0, "initial.a0 must lie in [0, 1]");
  require(c.h0 >= 0.0, "initial.h0 must be non-negative");
  const BoundaryData bd = c.boundary_data();
  require(bd.a_in >= 0.0 && bd.a_in <= 1.0, "inflow.a_in must lie in [0, 1]");
  require(bd.h_in >= 0.0, "inflow.h_in must be non-negative");
  require(c.rheology.ice_strength_param >= 0.0, "rheology.ice_strength must be non-negative");
  require(c.rheology.delta_min > 0.0, "rheology.delta_min must be positive");
  require(c.drag.ice_density > 0.0 && c.drag.berg_density > 0.0 && c.drag.ocean_density > 0.0 &&
              c.drag.air_density > 0.0,
          "densities must be positive");
  require(c.drag.ocean_drag_coeff >= 0.0 && c.drag.air_drag_coeff >= 0.0 &&
              c.drag.ice_resistance_coeff >= 0.0 && c.body.ocean_body_coeff >= 0.0 &&
              c.body.air_body_coeff >= 0.0,
          "drag coefficients must be non-negative");
  require(c.drag.linear_drag_velocity > 0.0, "drag.linear_velocity must be positive");
  require(c.min_thickness > 0.0, "solver.min_thickness must be positive");
  require(c.solver.max_iterations >= 1, "solver.max_iterations must be at least 1");
  require(c.solver.picard_iterations >= 0, "solver.picard_iterations must be non-negative");
  require(c.solver.relative_tolerance >= 0.0 && c.solver.absolute_tolerance_density >= 0.0 &&
              c.solver.relative_tolerance + c.solver.absolute_tolerance_density > 0.0,
          "solver tolerances must be non-negative and not both zero");
  require(c.solver.max_line_search_halvings >= 0,
          "solver.line_search_halvings must be non-negative");
  require(c.solver.linear.relative_tolerance > 0.0, "solver.linear_tolerance must be positive");

  try {
    (void)Mesh(c.extent.x(), c.extent.y(), c.resolution);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  const Rect domain{Vec2::Zero(), c.extent};
  for (std::size_t k = 0; k < c.bergs.size(); ++k) {
    const BergSpec& b = c.bergs[k];
    const std::string tag = "berg " + std::to_string(k);
    require(b.radius > 0.0, tag + ": radius must be positive");
    require(b.height > 0.0, tag + ": height must be positive");
    require(domain.contains(b.position), tag + ": position lies outside the domain");
  }
  if (c.grounding) {
    require(c.grounding->lower_left.x() < c.grounding->upper_right.x() &&
                c.grounding->lower_left.y() < c.grounding->upper_right.y(),
            "grounding region corners are not ordered");
  }
  for (const auto& r : c.regions) {
    require(r.rect.width() > 0.0 && r.rect.height() > 0.0, "region '" + r.name + "' is empty");
    require(domain.contains(r.rect.lower_left) && domain.contains(r.rect.upper_right),
            "region '" + r.name + "' extends outside the domain");
  }

  if (c.advection) {
    const double cfl = c.forcing.ocean_velocity.norm() * c.dt / c.resolution;
    if (cfl > 1.0) {
      throw ConfigError("advective CFL number " + format_double(cfl) +
                        " for the ocean velocity exceeds 1; reduce time.dt below " +
                        format_double(c.resolution / c.forcing.ocean_velocity.norm()) + " s");
    }
  }
}

}  // namespace fastice
