#include "hallvlasov/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hallvlasov/errors.hpp"
#include "hallvlasov/splitting.hpp"

namespace hv {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"grid", {"L", "Nx", "Nv", "v_max"}},
      {"physics", {"lambda", "T_e", "eta_const", "eta_profile", "Bx0"}},
      {"initial", {"preset", "density", "temperature", "drift_x", "drift_y", "drift_z", "By", "Bz"}},
      {"imposed", {"By", "Bz"}},
      {"time", {"dt", "t_end", "splitting_order"}},
      {"solver", {"newton_tol", "linear_tol", "theta", "remap_order", "limiter"}},
      {"output", {"cadence", "checkpoint_cadence", "directory"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Document {
 public:
  explicit Document(const std::string& text) {
    std::istringstream in(text);
    std::string raw, current;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const auto hash = raw.find_first_of("#;");
      const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') throw ParseError(line, "malformed section header '" + s + "'");
        current = trim(s.substr(1, s.size() - 2));
        if (!schema().contains(current)) throw ParseError(line, "unknown section [" + current + "]");
        if (sections_.contains(current)) throw ParseError(line, "duplicate section [" + current + "]");
        sections_[current];
        section_line_[current] = line;
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
      if (current.empty()) throw ParseError(line, "key outside of any section");
      const std::string key = trim(s.substr(0, eq));
      const std::string value = trim(s.substr(eq + 1));
      if (!schema().at(current).contains(key)) throw ParseError(line, "unknown key '" + key + "' in [" + current + "]");
      if (value.empty()) throw ParseError(line, "empty value for '" + key + "'");
      Section& sec = sections_[current];
      if (sec.contains(key)) throw ParseError(line, "duplicate key '" + key + "' in [" + current + "]");
      sec[key] = {value, line};
    }
    last_line_ = line;
  }

  bool has_section(const std::string& s) const { return sections_.contains(s); }

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  const Entry& require(const std::string& section, const std::string& key) const {
    if (const Entry* e = find(section, key)) return *e;
    const auto it = section_line_.find(section);
    const int line = it == section_line_.end() ? last_line_ : it->second;
    throw ParseError(line, "missing required key '" + key + "' in [" + section + "]");
  }

 private:
  std::map<std::string, Section> sections_;
  std::map<std::string, int> section_line_;
  int last_line_ = 0;
};

double to_double(const Entry& e, const std::string& key) {
  double v = 0.0;
  const char* end = e.value.data() + e.value.size();
  const auto [p, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError(e.line, "'" + key + "' expects a number, got '" + e.value + "'");
  return v;
}

int to_int(const Entry& e, const std::string& key) {
  int v = 0;
  const char* end = e.value.data() + e.value.size();
  const auto [p, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc() || p != end) throw ParseError(e.line, "'" + key + "' expects an integer, got '" + e.value + "'");
  return v;
}

}  // namespace

Setup parse_config_text(const std::string& text) {
  const Document doc(text);
  Setup setup;
  RunConfig& c = setup.config;

  auto num = [&](const char* sec, const char* key, double fallback) {
    const Entry* e = doc.find(sec, key);
    return e ? to_double(*e, key) : fallback;
  };
  auto integer = [&](const char* sec, const char* key, int fallback) {
    const Entry* e = doc.find(sec, key);
    return e ? to_int(*e, key) : fallback;
  };
  auto expr = [&](const char* sec, const char* key, const Expression& fallback) {
    const Entry* e = doc.find(sec, key);
    return e ? Expression::parse(e->value, e->line) : fallback;
  };

  const double L = to_double(doc.require("grid", "L"), "L");
  const int Nx = to_int(doc.require("grid", "Nx"), "Nx");
  const int Nv = to_int(doc.require("grid", "Nv"), "Nv");
  const double v_max = to_double(doc.require("grid", "v_max"), "v_max");
  try {
    c.grid = PhaseSpaceGrid(L, Nx, v_max, Nv);
  } catch (const InvalidInput& e) {
    throw ValidationError(e.what());
  }

  c.lambda = to_double(doc.require("physics", "lambda"), "lambda");
  c.T_e = to_double(doc.require("physics", "T_e"), "T_e");
  const Entry* eta_const = doc.find("physics", "eta_const");
  const Entry* eta_profile = doc.find("physics", "eta_profile");
  if (eta_const && eta_profile) throw ParseError(eta_profile->line, "give either eta_const or eta_profile, not both");
  if (!eta_const && !eta_profile) doc.require("physics", "eta_const");
  c.eta.resize(Nx);
  if (eta_const) {
    c.eta.assign(Nx, to_double(*eta_const, "eta_const"));
  } else {
    const Expression e = Expression::parse(eta_profile->value, eta_profile->line);
    for (int i = 0; i < Nx; ++i) c.eta[i] = e(c.grid.x_center(i), L);
  }
  const double Bx0 = num("physics", "Bx0", 0.0);

  InitialRecipe& init = setup.initial;
  if (const Entry* p = doc.find("initial", "preset")) {
    if (p->value == "reference") {
      init.By = Expression::parse("0.1*sin(pi*x/L)");
    } else if (p->value != "equilibrium") {
      throw ParseError(p->line, "unknown preset '" + p->value + "' (equilibrium, reference)");
    }
  }
  init.density = expr("initial", "density", init.density);
  init.temperature = num("initial", "temperature", init.temperature);
  init.drift_x = expr("initial", "drift_x", init.drift_x);
  init.drift_y = expr("initial", "drift_y", init.drift_y);
  init.drift_z = expr("initial", "drift_z", init.drift_z);
  init.By = expr("initial", "By", init.By);
  init.Bz = expr("initial", "Bz", init.Bz);
  if (!(init.temperature > 0.0)) throw ValidationError("temperature must be > 0");

  c.imposed = ImposedField::none(c.grid);
  c.imposed.Bx0 = Bx0;
  if (doc.has_section("imposed")) {
    const Expression by = expr("imposed", "By", Expression{});
    const Expression bz = expr("imposed", "Bz", Expression{});
    c.imposed.active = true;
    for (int f = 0; f <= Nx; ++f) {
      c.imposed.By[f] = by(c.grid.x_face(f), L);
      c.imposed.Bz[f] = bz(c.grid.x_face(f), L);
    }
    for (int i = 0; i < Nx; ++i) {
      c.imposed.J_y[i] = -(c.imposed.Bz[i + 1] - c.imposed.Bz[i]) / c.grid.dx();
      c.imposed.J_z[i] = (c.imposed.By[i + 1] - c.imposed.By[i]) / c.grid.dx();
    }
  }

  c.dt = to_double(doc.require("time", "dt"), "dt");
  c.t_end = to_double(doc.require("time", "t_end"), "t_end");
  if (const Entry* s = doc.find("time", "splitting_order")) {
    if (s->value == "lie" || s->value == "LIE") c.splitting = SplittingOrder::Lie;
    else if (s->value == "strang" || s->value == "STRANG") c.splitting = SplittingOrder::Strang;
    else throw ParseError(s->line, "splitting_order must be lie or strang");
  }

  c.newton_tol = num("solver", "newton_tol", c.newton_tol);
  c.linear_tol = num("solver", "linear_tol", c.linear_tol);
  c.theta = num("solver", "theta", c.theta);
  c.remap.order = integer("solver", "remap_order", c.remap.order);
  if (const Entry* l = doc.find("solver", "limiter")) {
    if (l->value == "none") c.remap.limiter = Limiter::None;
    else if (l->value == "positivity") c.remap.limiter = Limiter::Positivity;
    else if (l->value == "bounded") c.remap.limiter = Limiter::Bounded;
    else throw ParseError(l->line, "limiter must be none, positivity or bounded");
  }

  c.output_cadence = integer("output", "cadence", c.output_cadence);
  c.checkpoint_cadence = integer("output", "checkpoint_cadence", c.checkpoint_cadence);
  if (const Entry* d = doc.find("output", "directory")) c.output_directory = d->value;

  c.validate();
  return setup;
}

Setup parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

SimulationState build_initial_state(const Setup& setup) {
  const RunConfig& c = setup.config;
  const PhaseSpaceGrid& g = c.grid;
  const InitialRecipe& r = setup.initial;
  const int Nx = g.Nx();
  std::vector<double> density(Nx);
  std::vector<Vec3> drift(Nx);
  for (int i = 0; i < Nx; ++i) {
    const double x = g.x_center(i);
    density[i] = r.density(x, g.L());
    drift[i] = {r.drift_x(x, g.L()), r.drift_y(x, g.L()), r.drift_z(x, g.L())};
  }
  DistributionFunction f = make_maxwellian(g, density, r.temperature, drift);
  FieldState fields = FieldState::zeros(g, c.imposed.Bx0);
  for (int k = 0; k <= Nx; ++k) {
    const double x = g.x_face(k);
    fields.By[k] = c.imposed.By[k] + r.By(x, g.L());
    fields.Bz[k] = c.imposed.Bz[k] + r.Bz(x, g.L());
  }
  return initialize_state(c, std::move(f), std::move(fields));
}

}  // namespace hv
