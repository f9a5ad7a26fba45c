#include "rsl/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "rsl/errors.hpp"
#include "rsl/expr.hpp"

namespace rsl {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::Trace: return "trace";
    case ExperimentKind::Nodal: return "nodal";
    case ExperimentKind::Verify: return "verify";
  }
  return "spectrum";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto kind : {ExperimentKind::Spectrum, ExperimentKind::Trace, ExperimentKind::Nodal,
                    ExperimentKind::Verify}) {
    if (name == to_string(kind)) return kind;
  }
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

namespace {

RealFunction compiled(const std::string& source) {
  Expr e = Expr::parse(source);
  return [e](double x) { return e(x); };
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_number(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

struct Line {
  int number;
  std::string value;
};

[[noreturn]] void bad(int line, const std::string& what) {
  throw ConfigError("line " + std::to_string(line) + ": " + what);
}

double to_double(const Line& l, std::string_view key) {
  double v = 0.0;
  const char* b = l.value.data();
  const char* e = b + l.value.size();
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) bad(l.number, std::string(key) + " must be a number");
  return v;
}

long long to_integer(const Line& l, std::string_view key) {
  long long v = 0;
  const char* b = l.value.data();
  const char* e = b + l.value.size();
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) bad(l.number, std::string(key) + " must be an integer");
  return v;
}

int to_int(const Line& l, std::string_view key) {
  const long long v = to_integer(l, key);
  if (v < INT32_MIN || v > INT32_MAX) bad(l.number, std::string(key) + " is out of range");
  return static_cast<int>(v);
}

std::string to_string_value(const Line& l, std::string_view key) {
  const std::string& v = l.value;
  if (v.size() < 2 || v.front() != '"' || v.back() != '"') {
    bad(l.number, std::string(key) + " must be a quoted string");
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] == '\\' && i + 2 < v.size()) ++i;
    out += v[i];
  }
  return out;
}

std::vector<int> to_int_list(const Line& l, std::string_view key) {
  std::vector<int> out;
  std::string_view rest = l.value;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const Line item{l.number, std::string(trim(rest.substr(0, comma)))};
    out.push_back(to_int(item, key));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  if (out.empty()) bad(l.number, std::string(key) + " must list at least one integer");
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

/// Value part of `key = value # comment`, with '#' inside quotes kept.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && quoted) {
      ++i;
    } else if (s[i] == '"') {
      quoted = !quoted;
    } else if (s[i] == '#' && !quoted) {
      return s.substr(0, i);
    }
  }
  return s;
}

using Setter = std::function<void(ExperimentConfig&, const Line&)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  using C = ExperimentConfig;
  static const std::map<std::string, std::map<std::string, Setter>> table = [] {
    std::map<std::string, std::map<std::string, Setter>> t;
    auto num = [](double C::*field, const char* key) -> Setter {
      return [field, key](C& c, const Line& l) { c.*field = to_double(l, key); };
    };
    auto integer = [](int C::*field, const char* key) -> Setter {
      return [field, key](C& c, const Line& l) { c.*field = to_int(l, key); };
    };
    auto expr = [](std::string C::*field, const char* key) -> Setter {
      return [field, key](C& c, const Line& l) {
        c.*field = to_string_value(l, key);
        try {
          (void)Expr::parse(c.*field);
        } catch (const Error& e) {
          bad(l.number, std::string(key) + ": " + e.what());
        }
      };
    };
    auto& p = t["problem"];
    p["p1"] = num(&C::p1, "p1");
    p["p2"] = num(&C::p2, "p2");
    p["a1"] = num(&C::a1, "a1");
    p["a2"] = num(&C::a2, "a2");
    p["d"] = num(&C::d, "d");
    p["gamma1"] = num(&C::gamma1, "gamma1");
    p["gamma2"] = num(&C::gamma2, "gamma2");
    p["delta1"] = num(&C::delta1, "delta1");
    p["delta2"] = num(&C::delta2, "delta2");
    p["q_left"] = expr(&C::q_left, "q_left");
    p["q_right"] = expr(&C::q_right, "q_right");
    p["delta_left"] = expr(&C::delta_left, "delta_left");
    p["delta_right"] = expr(&C::delta_right, "delta_right");

    auto& e = t["experiment"];
    e["kind"] = [](C& c, const Line& l) {
      try {
        c.kind = parse_experiment_kind(l.value);
      } catch (const ConfigError&) {
        bad(l.number, "kind must be spectrum, trace, nodal or verify");
      }
    };
    e["n_max"] = integer(&C::n_max, "n_max");
    e["output"] = [](C& c, const Line& l) { c.output = to_string_value(l, "output"); };
    e["nodal_n"] = [](C& c, const Line& l) { c.nodal_n = to_int_list(l, "nodal_n"); };
    e["trace_sizes"] = [](C& c, const Line& l) { c.trace_sizes = to_int_list(l, "trace_sizes"); };
    e["seed"] = [](C& c, const Line& l) {
      const long long v = to_integer(l, "seed");
      if (v < 0) bad(l.number, "seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(v);
    };

    auto& i = t["integrator"];
    i["step_count"] = integer(&C::step_count, "step_count");
    i["corrector_iterations"] = integer(&C::corrector_iterations, "corrector_iterations");
    i["interpolation_order"] = integer(&C::interpolation_order, "interpolation_order");
    i["scaling_threshold"] = num(&C::scaling_threshold, "scaling_threshold");
    i["richardson_levels"] = integer(&C::richardson_levels, "richardson_levels");

    auto& q = t["quadrature"];
    q["min_panels"] = integer(&C::min_panels, "min_panels");
    q["panels_per_half_wave"] = integer(&C::panels_per_half_wave, "panels_per_half_wave");
    q["refinement"] = integer(&C::refinement, "refinement");
    return t;
  }();
  return table;
}

}  // namespace

ProblemSpec ExperimentConfig::problem_spec() const {
  ProblemSpec s;
  s.p1 = p1;
  s.p2 = p2;
  s.a1 = a1;
  s.a2 = a2;
  s.d = d;
  s.gamma1 = gamma1;
  s.gamma2 = gamma2;
  s.delta1 = delta1;
  s.delta2 = delta2;
  s.q = PiecewiseFn(compiled(q_left), compiled(q_right));
  s.delay = PiecewiseFn(compiled(delta_left), compiled(delta_right));
  return s;
}

SpectrumConfig ExperimentConfig::spectrum_config() const {
  SpectrumConfig c;
  c.theta.integrator.step_count = step_count;
  c.theta.integrator.corrector_iterations = corrector_iterations;
  c.theta.integrator.interpolation_order = interpolation_order;
  c.theta.integrator.scaling_threshold = scaling_threshold;
  c.theta.richardson_levels = richardson_levels;
  c.theta.validate();
  return c;
}

QuadratureConfig ExperimentConfig::quadrature_config() const {
  if (min_panels < 1 || panels_per_half_wave < 1 || refinement < 1) {
    throw ConfigError("quadrature settings must be positive");
  }
  return {min_panels, panels_per_half_wave, refinement};
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  const auto& table = schema();
  std::string section;
  std::set<std::string> seen;
  int number = 0;
  while (!text.empty()) {
    ++number;
    const auto newline = text.find('\n');
    std::string_view raw = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
    const std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') bad(number, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!table.count(section)) bad(number, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad(number, "expected key = value");
    if (section.empty()) bad(number, "key outside any section");
    const std::string key(trim(line.substr(0, eq)));
    const Line value{number, std::string(trim(line.substr(eq + 1)))};
    const auto& keys = table.at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) bad(number, "unknown key '" + key + "' in [" + section + "]");
    if (!seen.insert(section + "." + key).second) bad(number, "duplicate key '" + key + "'");
    it->second(cfg, value);
  }
  std::string missing;
  for (const auto& [key, setter] : table.at("problem")) {
    if (!seen.count("problem." + key)) missing += (missing.empty() ? "" : ", ") + key;
  }
  if (!missing.empty()) throw ConfigError("missing [problem] keys: " + missing);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  const auto num = [&](const char* key, double v) { os << key << " = " << format_number(v) << '\n'; };
  os << "[problem]\n";
  num("p1", c.p1);
  num("p2", c.p2);
  num("a1", c.a1);
  num("a2", c.a2);
  num("d", c.d);
  num("gamma1", c.gamma1);
  num("gamma2", c.gamma2);
  num("delta1", c.delta1);
  num("delta2", c.delta2);
  os << "q_left = " << quote(c.q_left) << '\n';
  os << "q_right = " << quote(c.q_right) << '\n';
  os << "delta_left = " << quote(c.delta_left) << '\n';
  os << "delta_right = " << quote(c.delta_right) << '\n';
  os << "\n[experiment]\n";
  os << "kind = " << to_string(c.kind) << '\n';
  os << "n_max = " << c.n_max << '\n';
  os << "output = " << quote(c.output) << '\n';
  os << "nodal_n = " << join(c.nodal_n) << '\n';
  os << "trace_sizes = " << join(c.trace_sizes) << '\n';
  os << "seed = " << c.seed << '\n';
  os << "\n[integrator]\n";
  os << "step_count = " << c.step_count << '\n';
  os << "corrector_iterations = " << c.corrector_iterations << '\n';
  os << "interpolation_order = " << c.interpolation_order << '\n';
  num("scaling_threshold", c.scaling_threshold);
  os << "richardson_levels = " << c.richardson_levels << '\n';
  os << "\n[quadrature]\n";
  os << "min_panels = " << c.min_panels << '\n';
  os << "panels_per_half_wave = " << c.panels_per_half_wave << '\n';
  os << "refinement = " << c.refinement << '\n';
  return os.str();
}

}  // namespace rsl
