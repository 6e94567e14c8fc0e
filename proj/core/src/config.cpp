#include "seeding/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "seeding/io/csv.hpp"

namespace seeding {
namespace {

using io::format_double;

/// Malformed value; the caller prefixes the key.
class ValueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text) {
  const std::string s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ValueError(fmt::format("expected a number, got '{}'", s));
  }
  if (!std::isfinite(value)) throw ValueError(fmt::format("expected a finite number, got '{}'", s));
  return value;
}

std::uint64_t parse_uint(const std::string& text) {
  const std::string s = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ValueError(fmt::format("expected a non-negative integer, got '{}'", s));
  }
  return value;
}

bool parse_bool(const std::string& text) {
  const std::string s = trim(text);
  if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0") return false;
  throw ValueError(fmt::format("expected true or false, got '{}'", s));
}

std::vector<std::string> split_list(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<std::string> items;
  for (std::string item; in >> item;) items.push_back(item);
  return items;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> values;
  for (const std::string& item : split_list(text)) values.push_back(parse_double(item));
  return values;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ' ';
    out += format_double(v);
  }
  return out;
}

template <class Enum>
struct EnumName {
  Enum value;
  std::string_view name;
};

template <class Enum, std::size_t N>
Enum parse_enum(const std::string& text, const EnumName<Enum> (&names)[N]) {
  const std::string s = trim(text);
  for (const auto& n : names) {
    if (n.name == s) return n.value;
  }
  std::string allowed;
  for (const auto& n : names) allowed += (allowed.empty() ? "" : ", ") + std::string(n.name);
  throw ValueError(fmt::format("expected one of {{{}}}, got '{}'", allowed, s));
}

template <class Enum, std::size_t N>
std::string enum_name(Enum value, const EnumName<Enum> (&names)[N]) {
  for (const auto& n : names) {
    if (n.value == value) return std::string(n.name);
  }
  return "?";
}

constexpr EnumName<ModelKind> kModelNames[] = {{ModelKind::kOde, "ode"}, {ModelKind::kPde, "pde"}};
constexpr EnumName<ode::RenewalMode> kRenewalModes[] = {
    {ode::RenewalMode::kResetToValue, "reset"}, {ode::RenewalMode::kAddValue, "add"}};
constexpr EnumName<ode::Method> kMethods[] = {{ode::Method::kRosenbrock23, "rosenbrock23"},
                                              {ode::Method::kImplicitEuler, "implicit_euler"}};
constexpr EnumName<pde::TimeScheme> kSchemes[] = {{pde::TimeScheme::kImex, "imex"},
                                                  {pde::TimeScheme::kFullyImplicit, "implicit"}};
constexpr EnumName<pde::TaxisMode> kTaxisModes[] = {{pde::TaxisMode::kIdentity, "identity"},
                                                    {pde::TaxisMode::kFull, "full"},
                                                    {pde::TaxisMode::kOff, "off"}};
constexpr EnumName<PdeInitial> kPdeInitial[] = {{PdeInitial::kSeeding, "seeding"},
                                                {PdeInitial::kUniform, "uniform"}};
constexpr EnumName<TensorSource> kTensorSources[] = {{TensorSource::kScaffold, "scaffold"},
                                                     {TensorSource::kMoment, "moment"},
                                                     {TensorSource::kAcg, "acg"},
                                                     {TensorSource::kD1, "d1"},
                                                     {TensorSource::kFile, "file"}};

Component parse_component(const std::string& s) {
  for (std::size_t c = 0; c < kComponentNames.size(); ++c) {
    if (s == kComponentNames[c]) return static_cast<Component>(c);
  }
  throw ValueError(fmt::format("unknown field '{}' (expected c1, c2, chi, h or tau)", s));
}

struct KeySpec {
  std::string section;
  std::string key;
  Provenance default_provenance;
  std::function<void(RunConfig&, const std::string&)> set;
  // Empty optional: the key is unset and is echoed as a comment.
  std::function<std::optional<std::string>(const RunConfig&)> get;

  [[nodiscard]] std::string id() const { return section + "." + key; }
};

template <class Access>
KeySpec number(std::string section, std::string key, Provenance prov, Access access) {
  return {std::move(section), std::move(key), prov,
          [access](RunConfig& c, const std::string& v) { access(c) = parse_double(v); },
          [access](const RunConfig& c) -> std::optional<std::string> {
            return format_double(access(c));
          }};
}

template <class Access>
KeySpec optional_number(std::string section, std::string key, Provenance prov, Access access) {
  return {std::move(section), std::move(key), prov,
          [access](RunConfig& c, const std::string& v) { access(c) = parse_double(v); },
          [access](const RunConfig& c) -> std::optional<std::string> {
            const auto& v = access(c);
            if (!v) return std::nullopt;
            return format_double(*v);
          }};
}

template <class Access, class Enum, std::size_t N>
KeySpec enumeration(std::string section, std::string key, Provenance prov, Access access,
                    const EnumName<Enum> (&names)[N]) {
  return {std::move(section), std::move(key), prov,
          [access, &names](RunConfig& c, const std::string& v) {
            access(c) = parse_enum(v, names);
          },
          [access, &names](const RunConfig& c) -> std::optional<std::string> {
            return enum_name(access(c), names);
          }};
}

template <class Access>
KeySpec boolean(std::string section, std::string key, Provenance prov, Access access) {
  return {std::move(section), std::move(key), prov,
          [access](RunConfig& c, const std::string& v) { access(c) = parse_bool(v); },
          [access](const RunConfig& c) -> std::optional<std::string> {
            return access(c) ? "true" : "false";
          }};
}

#define SEEDING_FIELD(expr) [](auto& c) -> auto& { return c.expr; }

const std::vector<KeySpec>& key_table() {
  constexpr auto paper = Provenance::kPaperDefault;
  constexpr auto assumed = Provenance::kAssumed;
  static const std::vector<KeySpec> table = [] {
    std::vector<KeySpec> t;
    t.push_back({"run", "name", assumed,
                 [](RunConfig& c, const std::string& v) {
                   c.name = trim(v);
                   if (c.name.empty()) throw ValueError("name must not be empty");
                 },
                 [](const RunConfig& c) -> std::optional<std::string> { return c.name; }});
    t.push_back(enumeration("run", "model", assumed, SEEDING_FIELD(model), kModelNames));
    t.push_back(number("run", "t_end", paper, SEEDING_FIELD(t_end)));
    t.push_back({"run", "seed", assumed,
                 [](RunConfig& c, const std::string& v) { c.seed = parse_uint(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   return std::to_string(c.seed);
                 }});

    t.push_back(number("parameters", "beta", paper, SEEDING_FIELD(params.beta)));
    t.push_back(number("parameters", "s1", paper, SEEDING_FIELD(params.s1)));
    t.push_back(number("parameters", "s2", paper, SEEDING_FIELD(params.s2)));
    t.push_back(number("parameters", "omega1", paper, SEEDING_FIELD(params.omega1)));
    t.push_back(number("parameters", "omega2", paper, SEEDING_FIELD(params.omega2)));
    t.push_back(number("parameters", "delta1", paper, SEEDING_FIELD(params.delta1)));
    t.push_back(number("parameters", "delta2", paper, SEEDING_FIELD(params.delta2)));
    t.push_back(number("parameters", "S_min", paper, SEEDING_FIELD(params.S_min)));
    t.push_back(number("parameters", "S_max", paper, SEEDING_FIELD(params.S_max)));
    t.push_back(number("parameters", "alpha1_min", paper, SEEDING_FIELD(params.alpha1_min)));
    t.push_back(number("parameters", "alpha1_max", paper, SEEDING_FIELD(params.alpha1_max)));
    t.push_back(number("parameters", "alpha2_max", paper, SEEDING_FIELD(params.alpha2_max)));
    t.push_back(number("parameters", "a_chi", paper, SEEDING_FIELD(params.a_chi)));
    t.push_back(number("parameters", "gamma1", paper, SEEDING_FIELD(params.gamma1)));
    t.push_back(number("parameters", "gamma2", paper, SEEDING_FIELD(params.gamma2)));
    t.push_back(number("parameters", "gamma3", paper, SEEDING_FIELD(params.gamma3)));
    t.push_back(number("parameters", "D_chi", paper, SEEDING_FIELD(params.D_chi)));
    t.push_back(number("parameters", "k1p_over_H", paper, SEEDING_FIELD(params.k1p_over_H)));
    t.push_back(number("parameters", "k2p_over_K", paper, SEEDING_FIELD(params.k2p_over_K)));
    t.push_back(number("parameters", "C1_star", paper, SEEDING_FIELD(params.C1_star)));
    t.push_back(number("parameters", "C2_star", paper, SEEDING_FIELD(params.C2_star)));
    t.push_back(number("parameters", "lambda10", paper, SEEDING_FIELD(params.lambda10)));
    t.push_back(number("parameters", "lambda2", paper, SEEDING_FIELD(params.lambda2)));
    t.push_back(number("parameters", "chi_c", assumed, SEEDING_FIELD(params.chi_c)));
    t.push_back(optional_number("parameters", "k_minus", assumed, SEEDING_FIELD(params.k_minus)));
    t.push_back(optional_number("parameters", "lambda11", assumed, SEEDING_FIELD(params.lambda11)));

    t.push_back(number("initial", "c1", paper, SEEDING_FIELD(initial.c1)));
    t.push_back(number("initial", "c2", paper, SEEDING_FIELD(initial.c2)));
    t.push_back(number("initial", "chi", paper, SEEDING_FIELD(initial.chi)));
    t.push_back(number("initial", "h", paper, SEEDING_FIELD(initial.h)));
    t.push_back(number("initial", "tau", paper, SEEDING_FIELD(initial.tau)));

    t.push_back(number("stimulus", "offset", paper, SEEDING_FIELD(stimulus.offset)));
    t.push_back(number("stimulus", "amplitude", paper, SEEDING_FIELD(stimulus.amplitude)));
    t.push_back(number("stimulus", "period", paper, SEEDING_FIELD(stimulus.period)));

    t.push_back(boolean("renewal", "enabled", assumed, SEEDING_FIELD(renewal_enabled)));
    t.push_back(number("renewal", "period", paper, SEEDING_FIELD(renewal.period)));
    t.push_back(enumeration("renewal", "mode", assumed, SEEDING_FIELD(renewal.mode), kRenewalModes));
    t.push_back(number("renewal", "value", paper, SEEDING_FIELD(renewal.value)));

    t.push_back(enumeration("ode", "method", assumed, SEEDING_FIELD(ode.method), kMethods));
    t.push_back(number("ode", "rel_tol", assumed, SEEDING_FIELD(ode.tol.rel)));
    t.push_back(number("ode", "abs_tol", assumed, SEEDING_FIELD(ode.tol.abs)));
    t.push_back(number("ode", "fixed_step", assumed, SEEDING_FIELD(ode.fixed_step)));
    t.push_back(number("ode", "output_interval", assumed, SEEDING_FIELD(ode.output_interval)));

    t.push_back(number("pde", "dx", assumed, SEEDING_FIELD(dx)));
    t.push_back(number("pde", "dt", paper, SEEDING_FIELD(stepper.dt)));
    t.push_back(number("pde", "center_x", paper, SEEDING_FIELD(center.x)));
    t.push_back(number("pde", "center_y", paper, SEEDING_FIELD(center.y)));
    t.push_back(number("pde", "radius", paper, SEEDING_FIELD(radius)));
    t.push_back(enumeration("pde", "scheme", assumed, SEEDING_FIELD(stepper.scheme), kSchemes));
    t.push_back(boolean("pde", "reactions", assumed, SEEDING_FIELD(stepper.reactions)));
    t.push_back(number("pde", "newton_tol", assumed, SEEDING_FIELD(stepper.newton_tol)));
    t.push_back(enumeration("pde", "taxis", paper, SEEDING_FIELD(taxis), kTaxisModes));
    t.push_back(enumeration("pde", "initial", paper, SEEDING_FIELD(pde_initial), kPdeInitial));
    t.push_back({"pde", "snapshot_times", assumed,
                 [](RunConfig& c, const std::string& v) { c.snapshot_times = parse_doubles(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   return join_doubles(c.snapshot_times);
                 }});
    t.push_back({"pde", "snapshot_fields", assumed,
                 [](RunConfig& c, const std::string& v) {
                   c.snapshot_fields.clear();
                   for (const std::string& item : split_list(v)) {
                     c.snapshot_fields.push_back(parse_component(item));
                   }
                 },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   std::string out;
                   for (Component f : c.snapshot_fields) {
                     out += (out.empty() ? "" : " ") + std::string(kComponentNames[f]);
                   }
                   return out;
                 }});
    t.push_back(number("pde", "probe_x", paper, SEEDING_FIELD(probe.x)));
    t.push_back(number("pde", "probe_y", paper, SEEDING_FIELD(probe.y)));

    t.push_back(enumeration("tensor", "source", paper, SEEDING_FIELD(tensor_source), kTensorSources));
    t.push_back({"tensor", "values", assumed,
                 [](RunConfig& c, const std::string& v) { c.tensor_values = parse_doubles(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   if (c.tensor_values.empty()) return std::nullopt;
                   return join_doubles(c.tensor_values);
                 }});
    t.push_back({"tensor", "file", assumed,
                 [](RunConfig& c, const std::string& v) { c.tensor_file = trim(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   if (c.tensor_file.empty()) return std::nullopt;
                   return c.tensor_file.string();
                 }});
    t.push_back(number("tensor", "scale", assumed, SEEDING_FIELD(diffusivity_scale)));

    t.push_back({"output", "dir", assumed,
                 [](RunConfig& c, const std::string& v) { c.output_dir = trim(v); },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   return c.output_dir.string();
                 }});
    return t;
  }();
  return table;
}

#undef SEEDING_FIELD

const KeySpec* find_key(const std::string& section, const std::string& key) {
  for (const KeySpec& spec : key_table()) {
    if (spec.section == section && spec.key == key) return &spec;
  }
  return nullptr;
}

bool is_multiple(double value, double unit) {
  const double k = std::round(value / unit);
  return std::abs(value - k * unit) <= 1e-9 * std::max(1.0, std::abs(value));
}

RunConfig default_config() {
  RunConfig c;
  for (const KeySpec& spec : key_table()) c.provenance[spec.id()] = spec.default_provenance;
  return c;
}

// Section holding run metadata written next to results; accepted and ignored.
constexpr std::string_view kManifestSection = "manifest";

void apply_text(RunConfig& config, std::string_view text, std::string_view origin,
                Provenance provenance) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}:{}: {}", origin, e.line(), e.message()));
  }
  for (const auto& [section, body] : tree) {
    if (section == kManifestSection) continue;
    if (body.empty()) {
      throw ConfigError(fmt::format("{}: key '{}' must appear inside a [section]", origin, section));
    }
    for (const auto& [key, value] : body) {
      const KeySpec* spec = find_key(section, key);
      if (spec == nullptr) {
        throw ConfigError(fmt::format("{}: unknown key [{}] {}", origin, section, key));
      }
      try {
        spec->set(config, value.data());
      } catch (const ValueError& e) {
        throw ConfigError(fmt::format("{}: [{}] {}: {}", origin, section, key, e.what()));
      }
      config.provenance[spec->id()] = provenance;
    }
  }
  if (config.provenance["output.dir"] != Provenance::kUser) {
    config.output_dir = default_output_root() / config.name;
  }
}

RunConfig parse_with(std::string_view text, std::string_view origin, Provenance provenance) {
  RunConfig config = default_config();
  apply_text(config, text, origin, provenance);
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", origin, e.what()));
  }
  return config;
}

struct PresetEntry {
  std::string_view name;
  std::string_view text;
};

// Only settings that differ from the defaults are listed.
constexpr PresetEntry kPresets[] = {
    {"fig2",
     "[run]\nname = fig2\nmodel = ode\nt_end = 144\n"},
    {"fig3",
     "[run]\nname = fig3\nmodel = ode\nt_end = 504\n"
     "[renewal]\nenabled = true\nperiod = 72\n"},
    {"fig4",
     "[run]\nname = fig4\nmodel = pde\nt_end = 2\n"
     "[pde]\nsnapshot_times = 0 2\n"},
    {"fig5",
     "[run]\nname = fig5\nmodel = pde\nt_end = 144\n"
     "[pde]\nsnapshot_times = 0 2 24 72 144\n"},
};

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kPaperDefault: return "paper-default";
    case Provenance::kUser: return "user";
    case Provenance::kAssumed: return "assumed";
  }
  return "?";
}

std::filesystem::path default_output_root() {
  if (const char* env = std::getenv("SEEDING_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "seeding-out";
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("[parameters] {}", e.what()));
  }
  if (!(t_end > 0.0)) throw ConfigError("[run] t_end must be > 0");
  if (!(stimulus.period > 0.0)) throw ConfigError("[stimulus] period must be > 0");
  const StateVector y0 = initial.vector();
  for (int i = 0; i < 5; ++i) {
    if (y0[i] < 0.0) {
      throw ConfigError(fmt::format("[initial] {} must be >= 0", kComponentNames[static_cast<std::size_t>(i)]));
    }
  }
  if (renewal_enabled) {
    try {
      renewal.validate();
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("[renewal] {}", e.what()));
    }
  }
  try {
    ode.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("[ode] {}", e.what()));
  }
  if (!(dx > 0.0)) throw ConfigError("[pde] dx must be > 0");
  if (!(radius > 0.0) || dx > radius) throw ConfigError("[pde] radius must be > 0 and >= dx");
  try {
    stepper.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("[pde] {}", e.what()));
  }
  if (taxis == pde::TaxisMode::kFull && (!params.k_minus || !params.lambda11)) {
    throw ConfigError("[pde] taxis = full requires [parameters] k_minus and lambda11");
  }
  if (model == ModelKind::kPde) {
    if (!is_multiple(t_end, stepper.dt)) throw ConfigError("[run] t_end must be a multiple of [pde] dt");
    for (double ts : snapshot_times) {
      if (ts < 0.0 || ts > t_end || !is_multiple(ts, stepper.dt)) {
        throw ConfigError(fmt::format(
            "[pde] snapshot_times: {} must lie in [0, t_end] on a multiple of dt", ts));
      }
    }
    if (renewal_enabled && !is_multiple(renewal.period, stepper.dt)) {
      throw ConfigError("[renewal] period must be a multiple of [pde] dt");
    }
    const double ddx = probe.x - center.x;
    const double ddy = probe.y - center.y;
    if (ddx * ddx + ddy * ddy > radius * radius) {
      throw ConfigError("[pde] probe_x/probe_y lie outside the scaffold");
    }
  }
  switch (tensor_source) {
    case TensorSource::kScaffold:
      break;
    case TensorSource::kMoment:
    case TensorSource::kD1:
      if (tensor_values.size() != 4 && tensor_values.size() != 9) {
        throw ConfigError("[tensor] values must hold 4 (2x2) or 9 (3x3) numbers for source = moment or d1");
      }
      break;
    case TensorSource::kAcg:
      if (tensor_values.size() != 9) {
        throw ConfigError("[tensor] values must hold 9 numbers for source = acg");
      }
      break;
    case TensorSource::kFile:
      if (tensor_file.empty()) throw ConfigError("[tensor] file is required for source = file");
      break;
  }
  if (!(diffusivity_scale > 0.0)) throw ConfigError("[tensor] scale must be > 0");
}

RunConfig parse_config(std::string_view text, std::string_view origin) {
  return parse_with(text, origin, Provenance::kUser);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open configuration file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  RunConfig config = default_config();
  config.name = path.stem().string();
  apply_text(config, buffer.str(), path.string(), Provenance::kUser);
  if (config.tensor_source == TensorSource::kFile && config.tensor_file.is_relative()) {
    config.tensor_file = path.parent_path() / config.tensor_file;
  }
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return config;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const PresetEntry& p : kPresets) names.emplace_back(p.name);
  return names;
}

std::string preset_text(std::string_view name) {
  for (const PresetEntry& p : kPresets) {
    if (p.name == name) return std::string(p.text);
  }
  throw ConfigError(fmt::format("unknown preset '{}'", name));
}

RunConfig preset(std::string_view name) {
  return parse_with(preset_text(name), fmt::format("preset {}", name), Provenance::kPaperDefault);
}

std::string echo_config(const RunConfig& config) {
  std::string out;
  out += fmt::format("# Effective configuration of '{}'.\n", config.name);
  out += "# Each value is preceded by its provenance: paper-default (published value\n";
  out += "# or experiment setting), user (set in the configuration) or assumed\n";
  out += "# (toolkit default where nothing was published).\n";
  std::string section;
  for (const KeySpec& spec : key_table()) {
    if (spec.section != section) {
      section = spec.section;
      out += fmt::format("\n[{}]\n", section);
    }
    const auto it = config.provenance.find(spec.id());
    const Provenance prov = it == config.provenance.end() ? spec.default_provenance : it->second;
    const std::optional<std::string> value = spec.get(config);
    if (value) {
      out += fmt::format("; {}\n{} = {}\n", to_string(prov), spec.key, *value);
    } else {
      out += fmt::format("; {} = (unset)\n", spec.key);
    }
  }
  return out;
}

}  // namespace seeding
