#include "pfc/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace pfc {

namespace {

const std::set<std::string, std::less<>> kKeys = {
    "grid.nx",          "grid.ny",          "grid.lx",          "grid.ly",
    "constraint.type",  "constraint.lo",    "constraint.hi",    "constraint.radius",
    "constraint.c",     "constraint.v1",    "constraint.v2",    "constraint.v3",
    "potential.omega",  "potential.force",  "potential.theta",  "variant.anisotropic",
    "variant.q",        "solver.gamma",     "solver.tau",       "solver.epsilon",
    "solver.tol",       "solver.max_inner", "solver.steps",     "init.seed",
    "output.dir",       "output.save_every", "output.formats",
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

/// Symbols available to numeric expressions.
struct Symbols {
  std::optional<double> h, lx, ly;
};

class Parser {
public:
  explicit Parser(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.empty())
        continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError(line_no, "expected 'section.key = value'");
      const std::string key{trim(line.substr(0, eq))};
      const std::string_view value = trim(line.substr(eq + 1));
      if (!kKeys.contains(key))
        throw ConfigError(line_no, "unknown key '" + key + "'");
      if (value.empty())
        throw ConfigError(line_no, "missing value for '" + key + "'");
      if (entries_.contains(key))
        throw ConfigError(line_no, "duplicate key '" + key + "'");
      entries_[key] = {std::string(value), line_no};
    }
  }

  int line_of(const std::string &key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  [[noreturn]] void fail(const std::string &key, const std::string &message) const {
    throw ConfigError(line_of(key), key + ": " + message);
  }

  // Blames the first of `keys` that appears in the text, else the last one.
  [[noreturn]] void fail_any(std::initializer_list<const char *> keys,
                             const std::string &message) const {
    for (const char *key : keys)
      if (find(key))
        fail(key, message);
    fail(*(keys.end() - 1), message);
  }

  const Entry *find(const std::string &key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  void number(const std::string &key, double &out, const Symbols &sym) const {
    if (const Entry *e = find(key))
      out = evaluate(key, e->value, sym);
  }

  template <class Int> void integer(const std::string &key, Int &out) const {
    const Entry *e = find(key);
    if (!e)
      return;
    const char *first = e->value.data(), *last = first + e->value.size();
    Int v{};
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
      fail(key, "expected an integer, got '" + e->value + "'");
    out = v;
  }

  void point(const std::string &key, Vec2 &out, const Symbols &sym) const {
    const Entry *e = find(key);
    if (!e)
      return;
    const auto comma = e->value.find(',');
    if (comma == std::string::npos)
      fail(key, "expected 'x,y'");
    out = {evaluate(key, trim(std::string_view(e->value).substr(0, comma)), sym),
           evaluate(key, trim(std::string_view(e->value).substr(comma + 1)), sym)};
  }

  void boolean(const std::string &key, bool &out) const {
    const Entry *e = find(key);
    if (!e)
      return;
    if (e->value == "true" || e->value == "1")
      out = true;
    else if (e->value == "false" || e->value == "0")
      out = false;
    else
      fail(key, "expected true or false, got '" + e->value + "'");
  }

  // product/quotient of terms: number | h | pi | lx | ly
  double evaluate(const std::string &key, std::string_view expr, const Symbols &sym) const {
    double result = 1.0;
    char op = '*';
    std::size_t pos = 0;
    while (true) {
      const auto next = expr.find_first_of("*/", pos);
      const std::string_view term = trim(expr.substr(pos, next == std::string_view::npos
                                                               ? std::string_view::npos
                                                               : next - pos));
      const double v = term_value(key, term, sym);
      result = op == '*' ? result * v : result / v;
      if (next == std::string_view::npos)
        break;
      op = expr[next];
      pos = next + 1;
    }
    if (!std::isfinite(result))
      fail(key, "value is not finite");
    return result;
  }

private:
  double term_value(const std::string &key, std::string_view term, const Symbols &sym) const {
    auto symbol = [&](const std::optional<double> &v, const char *name) {
      if (!v)
        fail(key, std::string("symbol '") + name + "' is not available here");
      return *v;
    };
    if (term == "pi")
      return std::numbers::pi;
    if (term == "h")
      return symbol(sym.h, "h");
    if (term == "lx")
      return symbol(sym.lx, "lx");
    if (term == "ly")
      return symbol(sym.ly, "ly");
    double v = 0.0;
    const char *first = term.data(), *last = first + term.size();
    if (!term.empty() && *first == '+')
      ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (term.empty() || ec != std::errc{} || ptr != last)
      fail(key, "expected a number, got '" + std::string(term) + "'");
    return v;
  }

  std::map<std::string, Entry> entries_;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

ConstraintSet ConstraintConfig::make() const {
  switch (type) {
  case SetKind::Interval: return ConstraintSet::interval(lo, hi);
  case SetKind::Disk: return ConstraintSet::disk(radius);
  case SetKind::Triangle: return ConstraintSet::triangle(vertices[0], vertices[1], vertices[2]);
  case SetKind::Lens: return ConstraintSet::lens(c);
  }
  throw std::invalid_argument("unsupported constraint");
}

PotentialSpec RunConfig::potential() const {
  PotentialSpec p;
  p.omega = omega;
  p.radial_extent = constraint.make().radial_extent();
  p.variant = force;
  p.theta_degrees = theta;
  return p;
}

DiffusionMode RunConfig::diffusion() const {
  return anisotropic ? DiffusionMode::stripes(q) : DiffusionMode::isotropic();
}

Solver RunConfig::make_solver() const {
  return Solver(grid, constraint.make(), potential(), solver, diffusion());
}

ConstraintSet named_set(std::string_view name) {
  if (name == "interval")
    return ConstraintSet::interval(-1.0, 1.0);
  if (name == "disk")
    return ConstraintSet::disk(1.0);
  if (name == "triangle")
    return ConstraintSet::unit_triangle();
  if (name == "lens")
    return ConstraintSet::lens(1.0);
  throw ConfigError(0, "unsupported constraint '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text) {
  const Parser in(text);
  RunConfig cfg;

  // Grid first: the other values may refer to h, lx and ly.
  in.integer("grid.nx", cfg.grid.nx);
  in.integer("grid.ny", cfg.grid.ny);
  in.number("grid.lx", cfg.grid.lx, {});
  in.number("grid.ly", cfg.grid.ly, {});
  try {
    cfg.grid.validate();
  } catch (const std::invalid_argument &e) {
    in.fail("grid.nx", e.what());
  }
  const Symbols sym{cfg.grid.h(), cfg.grid.lx, cfg.grid.ly};

  if (const auto *e = in.find("constraint.type")) {
    if (e->value == "interval") cfg.constraint.type = SetKind::Interval;
    else if (e->value == "disk") cfg.constraint.type = SetKind::Disk;
    else if (e->value == "triangle") cfg.constraint.type = SetKind::Triangle;
    else if (e->value == "lens") cfg.constraint.type = SetKind::Lens;
    else in.fail("constraint.type", "unsupported constraint '" + e->value + "'");
  }
  in.number("constraint.lo", cfg.constraint.lo, sym);
  in.number("constraint.hi", cfg.constraint.hi, sym);
  in.number("constraint.radius", cfg.constraint.radius, sym);
  in.number("constraint.c", cfg.constraint.c, sym);
  in.point("constraint.v1", cfg.constraint.vertices[0], sym);
  in.point("constraint.v2", cfg.constraint.vertices[1], sym);
  in.point("constraint.v3", cfg.constraint.vertices[2], sym);

  in.number("potential.omega", cfg.omega, sym);
  if (const auto *e = in.find("potential.force")) {
    if (e->value == "gradient") cfg.force = ForceVariant::Gradient;
    else if (e->value == "rotated") cfg.force = ForceVariant::Rotated;
    else in.fail("potential.force", "expected gradient or rotated, got '" + e->value + "'");
  }
  in.number("potential.theta", cfg.theta, sym);

  in.boolean("variant.anisotropic", cfg.anisotropic);
  cfg.q = 40.0 * std::numbers::pi / cfg.grid.lx;
  in.number("variant.q", cfg.q, sym);

  cfg.solver = SolverParams::grid_scaled(cfg.grid.h(), cfg.omega);
  cfg.solver.steps = 100;
  in.number("solver.gamma", cfg.solver.gamma, sym);
  in.number("solver.tau", cfg.solver.tau, sym);
  in.number("solver.epsilon", cfg.solver.epsilon, sym);
  in.number("solver.tol", cfg.solver.tol, sym);
  in.integer("solver.max_inner", cfg.solver.max_inner);
  in.integer("solver.steps", cfg.solver.steps);

  in.integer("init.seed", cfg.seed);

  if (const auto *e = in.find("output.dir"))
    cfg.output.dir = e->value;
  in.integer("output.save_every", cfg.output.save_every);
  if (const auto *e = in.find("output.formats")) {
    cfg.output.ppm = cfg.output.field = cfg.output.csv = false;
    std::stringstream list(e->value);
    std::string item;
    while (std::getline(list, item, ',')) {
      const auto f = trim(item);
      if (f == "ppm") cfg.output.ppm = true;
      else if (f == "field") cfg.output.field = true;
      else if (f == "csv") cfg.output.csv = true;
      else if (f == "none") continue;
      else in.fail("output.formats", "unknown format '" + std::string(f) + "'");
    }
  }
  if (cfg.output.save_every < 1)
    in.fail("output.save_every", "must be >= 1");

  // Module invariants, checked before any run resources exist.
  ConstraintSet set = ConstraintSet::disk(1.0);
  try {
    set = cfg.constraint.make();
  } catch (const std::invalid_argument &e) {
    switch (cfg.constraint.type) {
    case SetKind::Interval: in.fail_any({"constraint.lo", "constraint.hi", "constraint.type"}, e.what());
    case SetKind::Disk: in.fail_any({"constraint.radius", "constraint.type"}, e.what());
    case SetKind::Triangle:
      in.fail_any({"constraint.v1", "constraint.v2", "constraint.v3", "constraint.type"}, e.what());
    case SetKind::Lens: in.fail_any({"constraint.c", "constraint.type"}, e.what());
    }
  }
  try {
    validate_params(cfg.solver);
  } catch (const std::invalid_argument &e) {
    const std::string msg = e.what();
    const std::string word = msg.substr(0, msg.find(' '));
    in.fail(word == "omega" ? "potential.omega" : "solver." + word, msg);
  }
  try {
    validate_solver_setup(set, cfg.potential(), cfg.solver, cfg.diffusion());
  } catch (const std::invalid_argument &e) {
    const std::string msg = e.what();
    if (msg.find("anisotropic") != std::string::npos)
      in.fail_any({"variant.anisotropic"}, msg);
    if (msg.find("theta") != std::string::npos)
      in.fail_any({"potential.theta", "potential.force"}, msg);
    in.fail_any({"potential.force", "potential.omega"}, msg);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw IoError("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  if (file.bad())
    throw IoError("cannot read config file '" + path.string() + "'");
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig &c) {
  std::ostringstream o;
  auto point = [](Vec2 v) { return format_double(v.x) + "," + format_double(v.y); };
  o << "grid.nx = " << c.grid.nx << "\n"
    << "grid.ny = " << c.grid.ny << "\n"
    << "grid.lx = " << format_double(c.grid.lx) << "\n"
    << "grid.ly = " << format_double(c.grid.ly) << "\n"
    << "constraint.type = " << to_string(c.constraint.type) << "\n"
    << "constraint.lo = " << format_double(c.constraint.lo) << "\n"
    << "constraint.hi = " << format_double(c.constraint.hi) << "\n"
    << "constraint.radius = " << format_double(c.constraint.radius) << "\n"
    << "constraint.c = " << format_double(c.constraint.c) << "\n"
    << "constraint.v1 = " << point(c.constraint.vertices[0]) << "\n"
    << "constraint.v2 = " << point(c.constraint.vertices[1]) << "\n"
    << "constraint.v3 = " << point(c.constraint.vertices[2]) << "\n"
    << "potential.omega = " << format_double(c.omega) << "\n"
    << "potential.force = " << (c.force == ForceVariant::Gradient ? "gradient" : "rotated") << "\n"
    << "potential.theta = " << format_double(c.theta) << "\n"
    << "variant.anisotropic = " << (c.anisotropic ? "true" : "false") << "\n"
    << "variant.q = " << format_double(c.q) << "\n"
    << "solver.gamma = " << format_double(c.solver.gamma) << "\n"
    << "solver.tau = " << format_double(c.solver.tau) << "\n"
    << "solver.epsilon = " << format_double(c.solver.epsilon) << "\n"
    << "solver.tol = " << format_double(c.solver.tol) << "\n"
    << "solver.max_inner = " << c.solver.max_inner << "\n"
    << "solver.steps = " << c.solver.steps << "\n"
    << "init.seed = " << c.seed << "\n"
    << "output.dir = " << c.output.dir << "\n"
    << "output.save_every = " << c.output.save_every << "\n";
  std::string formats;
  for (auto [on, name] : {std::pair{c.output.ppm, "ppm"}, std::pair{c.output.field, "field"},
                          std::pair{c.output.csv, "csv"}})
    if (on)
      formats += (formats.empty() ? "" : ",") + std::string(name);
  if (!formats.empty())
    o << "output.formats = " << formats << "\n";
  else
    o << "output.formats = none\n";
  return o.str();
}

} // namespace pfc
