#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "casimag/dielectric.hpp"
#include "casimag/errors.hpp"
#include "casimag/materials.hpp"

namespace casimag::cli {

namespace {

using nlohmann::json;

struct Context {
  std::filesystem::path base_dir;
};

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

double number(const json& obj, const std::string& path, const std::string& key) {
  const json& v = field(obj, path, key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& path, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  return number(obj, path, key);
}

std::string text(const json& obj, const std::string& path, const std::string& key) {
  const json& v = field(obj, path, key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::filesystem::path resolve_file(const Context& ctx, const std::string& name,
                                   const std::string& path) {
  const std::filesystem::path p = name;
  if (p.is_absolute()) {
    if (!std::filesystem::exists(p)) fail(path, "data file '" + name + "' not found");
    return p;
  }
  for (const auto& base : {ctx.base_dir, materials::data_directory()}) {
    if (std::filesystem::exists(base / p)) return base / p;
  }
  fail(path, "data file '" + name + "' not found");
}

OpticalDataTable read_table(const Context& ctx, const json& obj, const std::string& path,
                            TableKind kind) {
  const auto file = resolve_file(ctx, text(obj, path, "file"), path + ".file");
  try {
    return OpticalDataTable::read_csv(file.string(), kind);
  } catch (const DataError& e) {
    fail(path + ".file", e.what());
  }
}

DrudeParams drude_params(const json& obj, const std::string& path) {
  DrudeParams p{number(obj, path, "plasma_frequency"), number(obj, path, "relaxation_rate")};
  try {
    p.validate();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return p;
}

TwoOscillatorParams oscillator_params(const json& obj, const std::string& path) {
  TwoOscillatorParams p{number(obj, path, "c_ir"), number(obj, path, "c_uv"),
                        number(obj, path, "w_ir"), number(obj, path, "w_uv")};
  try {
    p.validate();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return p;
}

// {"kind": "drude" | "two_oscillator" | "constant" | "table" | "offdiagonal_table" | "preset"}
DielectricModel parse_model(const Context& ctx, const json& obj, const std::string& path) {
  const std::string kind = text(obj, path, "kind");
  if (kind == "drude") return drude_model(drude_params(obj, path));
  if (kind == "two_oscillator") return two_oscillator_model(oscillator_params(obj, path));
  if (kind == "constant") return constant_model(number(obj, path, "value"));
  if (kind == "table") {
    auto table = read_table(ctx, obj, path, TableKind::diagonal);
    if (obj.contains("drude")) {
      return composite_metal_model(std::move(table), drude_params(obj["drude"], path + ".drude"))
          .tabulated();
    }
    return kk_diagonal_model(std::move(table)).tabulated();
  }
  if (kind == "offdiagonal_table") {
    return kk_offdiagonal_model(read_table(ctx, obj, path, TableKind::off_diagonal)).tabulated();
  }
  if (kind == "preset") {
    const std::string name = text(obj, path, "name");
    if (name == "gold") return materials::gold_epsilon();
    if (name == "iron_xx") return materials::iron_epsilon_xx();
    if (name == "iron_xy") return materials::iron_epsilon_xy();
    fail(path + ".name", "unknown preset '" + name + "' (gold, iron_xx, iron_xy)");
  }
  fail(path + ".kind", "unknown model kind '" + kind + "'");
}

MagnetizationOrientation orientation(const json& obj, const std::string& path) {
  MagnetizationOrientation o{number_or(obj, path, "theta", 0.0), number_or(obj, path, "phi", 0.0)};
  try {
    o.validate();
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  return o;
}

MirrorConfig parse_mirror(const Context& ctx, const json& obj, const std::string& path) {
  const std::string type = text(obj, path, "type");
  MirrorConfig m;
  m.description = type;
  if (type == "ideal") {
    m.spec = IdealMirror{};
  } else if (type == "gold") {
    m.spec = materials::gold();
  } else if (type == "iron") {
    m.spec = materials::iron(orientation(obj, path));
  } else if (type == "isotropic") {
    m.spec = IsotropicMetal{parse_model(ctx, field(obj, path, "epsilon"), path + ".epsilon")};
  } else if (type == "ferromagnet") {
    m.spec = Ferromagnet{parse_model(ctx, field(obj, path, "eps_xx"), path + ".eps_xx"),
                         parse_model(ctx, field(obj, path, "eps_xy"), path + ".eps_xy"),
                         orientation(obj, path)};
  } else if (type == "uniaxial") {
    const double zeta = number_or(obj, path, "zeta", 0.0);
    if (obj.contains("material")) {
      const std::string name = text(obj, path, "material");
      try {
        m.spec = materials::uniaxial_plate(name, zeta);
      } catch (const std::out_of_range& e) {
        fail(path + ".material", e.what());
      }
      m.description = "uniaxial(" + name + ")";
    } else {
      m.spec = UniaxialPlate{
          parse_model(ctx, field(obj, path, "ordinary"), path + ".ordinary"),
          parse_model(ctx, field(obj, path, "extraordinary"), path + ".extraordinary"),
          UniaxialGeometry{zeta}};
    }
  } else {
    fail(path + ".type", "unknown mirror type '" + type +
                             "' (ideal, gold, iron, isotropic, ferromagnet, uniaxial)");
  }

  auto collect = [&m](const DielectricModel& model, bool diagonal) {
    for (const auto& d : model.diagnostics()) m.warnings.push_back(model.label() + ": " + d);
    if (diagonal) {
      for (const auto& d : check_model_invariants(model)) {
        m.violations.push_back(d);
      }
    }
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IsotropicMetal>) {
          collect(s.eps_xx, true);
        } else if constexpr (std::is_same_v<T, Ferromagnet>) {
          collect(s.eps_xx, true);
          collect(s.eps_xy, false);
        } else if constexpr (std::is_same_v<T, UniaxialPlate>) {
          collect(s.eps_ordinary, true);
          collect(s.eps_extraordinary, true);
        }
      },
      m.spec);
  return m;
}

std::vector<double> parse_distances(const json& sweep, const std::string& path,
                                    std::vector<std::string>& notes) {
  std::vector<double> d;
  if (sweep.contains("distances_nm")) {
    const json& list = sweep["distances_nm"];
    if (!list.is_array()) fail(path + ".distances_nm", "expected an array of numbers");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i].is_number()) {
        fail(path + ".distances_nm[" + std::to_string(i) + "]", "expected a number");
      }
      d.push_back(list[i].get<double>());
    }
  } else if (sweep.contains("distance_range")) {
    const json& r = sweep["distance_range"];
    const std::string rp = path + ".distance_range";
    const double lo = number(r, rp, "from_nm");
    const double hi = number(r, rp, "to_nm");
    const double per_decade = number_or(r, rp, "per_decade", 12.0);
    if (!(lo > 0.0) || !(hi >= lo)) fail(rp, "need 0 < from_nm <= to_nm");
    if (!(per_decade >= 1.0)) fail(rp + ".per_decade", "must be >= 1");
    const int n = std::max(1, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade - 1e-9)));
    for (int i = 0; i <= n; ++i) d.push_back(hi == lo ? lo : lo * std::pow(hi / lo, double(i) / n));
    if (hi == lo) d.resize(1);
  } else {
    fail(path, "needs distances_nm or distance_range");
  }
  if (d.empty()) fail(path, "distance grid is empty");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0) || !std::isfinite(d[i])) {
      fail(path + ".distances_nm[" + std::to_string(i) + "]", "distance must be positive");
    }
    if (d[i] < min_trusted_distance_nm) {
      notes.push_back("distance " + std::to_string(d[i]) +
                      " nm is below 0.1 nm; continuum optics is doubtful there");
    }
  }
  if (!std::is_sorted(d.begin(), d.end())) fail(path, "distances must be ascending");
  if (std::adjacent_find(d.begin(), d.end()) != d.end()) fail(path, "distances must be distinct");
  return d;
}

std::string line_column(const std::string& textual, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < textual.size(); ++i) {
    if (textual[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

RunConfig parse_config(const std::string& textual, const std::filesystem::path& base_dir,
                       const std::string& source_name) {
  RunConfig c;
  c.base_dir = base_dir;
  try {
    c.source = json::parse(textual);
  } catch (const json::parse_error& e) {
    throw ConfigError(source_name + ": syntax error at " + line_column(textual, e.byte) + ": " +
                      e.what());
  }
  const Context ctx{base_dir};
  const json& root = c.source;
  if (!root.is_object()) fail("$", "configuration must be a JSON object");

  c.mirror_a = parse_mirror(ctx, field(root, "$", "mirror_a"), "mirror_a");
  c.mirror_b = parse_mirror(ctx, field(root, "$", "mirror_b"), "mirror_b");
  c.distances = parse_distances(field(root, "$", "sweep"), "sweep", c.grid_diagnostics);

  const json& sweep = root["sweep"];
  if (sweep.contains("angles")) {
    const json& a = sweep["angles"];
    if (!a.is_number_integer() || a.get<int>() < 8) fail("sweep.angles", "expected an integer >= 8");
    c.angle_count = a.get<int>();
  }

  if (root.contains("quadrature")) {
    const json& q = root["quadrature"];
    c.quadrature.rel_tol = number_or(q, "quadrature", "rel_tol", c.quadrature.rel_tol);
    c.quadrature.abs_tol = number_or(q, "quadrature", "abs_tol", c.quadrature.abs_tol);
    c.quadrature.u_max = number_or(q, "quadrature", "u_max", c.quadrature.u_max);
    c.quadrature.max_subdivisions = static_cast<int>(
        number_or(q, "quadrature", "max_subdivisions", c.quadrature.max_subdivisions));
    c.quadrature.phi_samples =
        static_cast<int>(number_or(q, "quadrature", "phi_samples", c.quadrature.phi_samples));
  }
  try {
    c.quadrature.validate();
  } catch (const std::exception& e) {
    fail("quadrature", e.what());
  }

  if (root.contains("estimates")) {
    const json& e = root["estimates"];
    c.estimates.disk_radius_um = number_or(e, "estimates", "disk_radius_um", c.estimates.disk_radius_um);
    c.estimates.sphere_radius_um =
        number_or(e, "estimates", "sphere_radius_um", c.estimates.sphere_radius_um);
    c.estimates.plate_radius_um =
        number_or(e, "estimates", "plate_radius_um", c.estimates.plate_radius_um);
    if (!(c.estimates.disk_radius_um > 0.0) || !(c.estimates.sphere_radius_um > 0.0) ||
        !(c.estimates.plate_radius_um > 0.0)) {
      fail("estimates", "radii must be positive");
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path(), path.string());
}

std::string config_digest(const RunConfig& config) {
  const std::string canonical = config.source.dump();
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canonical.data(), canonical.size(), hash, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(hash[i]);
  }
  return hex.str();
}

std::vector<Finding> validation_report(const RunConfig& config) {
  std::vector<Finding> out;
  for (const auto* m : {&config.mirror_a, &config.mirror_b}) {
    const std::string tag = m == &config.mirror_a ? "mirror_a: " : "mirror_b: ";
    for (const auto& d : m->violations) out.push_back({true, tag + d});
    for (const auto& d : m->warnings) out.push_back({false, tag + d});
  }
  for (const auto& d : config.grid_diagnostics) out.push_back({false, "sweep: " + d});
  return out;
}

}  // namespace casimag::cli
