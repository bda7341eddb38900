#include "mgswap/scenario_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

namespace mgswap {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// Field lists shared by the reader and the writer.
template <class F>
void fields(WindParams& w, F&& f) {
  f("shape_k", w.shape_k);
  f("scale_gamma", w.scale_gamma);
  f("v_in", w.v_in);
  f("v_rated", w.v_rated);
  f("v_out", w.v_out);
  f("p_rated", w.p_rated);
}

template <class F>
void fields(PvParams& p, F&& f) {
  f("lambda1", p.lambda1);
  f("lambda2", p.lambda2);
  f("p_max", p.p_max);
  f("conversion_eta", p.conversion_eta);
  f("area", p.area);
  f("r_max", p.r_max);
}

template <class F>
void fields(MtParams& m, F&& f) {
  f("name", m.name);
  f("fixed_fuel_cost", m.fixed_fuel_cost);
  f("variable_fuel_cost", m.variable_fuel_cost);
  f("startup_cost", m.startup_cost);
  f("reserve_cost", m.reserve_cost);
  f("p_min", m.p_min);
  f("p_max", m.p_max);
}

template <class F>
void fields(BssParams& b, F&& f) {
  f("p_ch_rated", b.p_ch_rated);
  f("p_dc_rated", b.p_dc_rated);
  f("eta_ch", b.eta_ch);
  f("eta_dc", b.eta_dc);
  f("c_min", b.c_min);
  f("c_max", b.c_max);
  f("c_init", b.c_init);
  f("battery_capacity", b.battery_capacity);
  f("n_batteries", b.n_batteries);
  f("n_positions", b.n_positions);
  f("depreciation_tau", b.depreciation_tau);
  f("max_cycles", b.max_cycles);
  f("per_battery_c_min", b.per_battery_c_min);
  f("per_battery_c_max", b.per_battery_c_max);
  f("per_battery_p_ch", b.per_battery_p_ch);
  f("per_battery_p_dc", b.per_battery_p_dc);
  f("per_battery_eta_ch", b.per_battery_eta_ch);
  f("per_battery_eta_dc", b.per_battery_eta_dc);
}

// delta_t is taken from the scenario's top level.
template <class F>
void fields(PriceParams& p, F&& f) {
  f("reference_price", p.reference_price);
  f("reserve_price", p.reserve_price);
  f("swap_price", p.swap_price);
  f("reference_el_power", p.reference_el_power);
}

// The search seed is derived from the master seed per run.
template <class F>
void fields(JayaConfig& j, F&& f) {
  f("population_size", j.population_size);
  f("max_generations", j.max_generations);
  f("penalty_weight", j.penalty_weight);
}

template <class F>
void fields(BbaConfig& b, F&& f) {
  f("node_limit", b.node_limit);
  f("abs_gap", b.abs_gap);
  f("integrality_tol", b.integrality_tol);
  f("lp_iteration_limit", b.lp_iteration_limit);
  f("heuristic_every", b.heuristic_every);
}

template <class F>
void fields(SolverSettings& s, F&& f) {
  f("jaya", s.jaya);
  f("bba", s.bba);
  f("max_iterations", s.max_iterations);
  f("alpha_decrement", s.alpha_decrement);
  f("normalized_selection", s.normalized_selection);
  f("mc_samples", s.mc_samples);
}

template <class F>
void fields(Scenario& s, F&& f) {
  f("name", s.name);
  f("horizon", s.horizon);
  f("delta_t", s.delta_t);
  f("seed", s.seed);
  f("alpha", s.alpha);
  f("step_q", s.step_q);
  f("cnload_cap", s.cnload_cap);
  f("wind", s.wind);
  f("wind_scale", s.wind_scale);
  f("pv", s.pv);
  f("pv_max", s.pv_max);
  f("load_sigma_fraction", s.load_sigma_fraction);
  f("load_mean", s.load_mean);
  f("ev_rate", s.ev_rate);
  f("mts", s.mts);
  f("bss", s.bss);
  f("price", s.price);
  f("grid_price", s.grid_price);
  f("solver", s.solver);
}

template <class T>
concept Record = requires(T& t) { fields(t, [](const char*, auto&) {}); };

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}
std::string at_index(const std::string& parent, std::size_t i) { return parent + "[" + std::to_string(i) + "]"; }

using Errors = std::vector<std::pair<std::string, std::string>>;  // path, message

void read(const json& j, const std::string& path, double& v, Errors& e) {
  if (!j.is_number()) {
    e.emplace_back(path, "expected a number");
    return;
  }
  v = j.get<double>();
}

void read(const json& j, const std::string& path, bool& v, Errors& e) {
  if (!j.is_boolean()) {
    e.emplace_back(path, "expected true or false");
    return;
  }
  v = j.get<bool>();
}

void read(const json& j, const std::string& path, std::string& v, Errors& e) {
  if (!j.is_string()) {
    e.emplace_back(path, "expected a string");
    return;
  }
  v = j.get<std::string>();
}

template <class I>
  requires std::is_integral_v<I>
void read(const json& j, const std::string& path, I& v, Errors& e) {
  if (!j.is_number_integer()) {
    e.emplace_back(path, "expected an integer");
    return;
  }
  if constexpr (std::is_unsigned_v<I>) {
    if (!j.is_number_unsigned()) {
      e.emplace_back(path, "expected a non-negative integer");
      return;
    }
  }
  v = j.get<I>();
}

template <Record T>
void read(const json& j, const std::string& path, T& v, Errors& e);

template <class T>
void read(const json& j, const std::string& path, std::vector<T>& v, Errors& e) {
  if (!j.is_array()) {
    e.emplace_back(path, "expected an array");
    return;
  }
  v.assign(j.size(), T{});
  for (std::size_t i = 0; i < j.size(); ++i) read(j[i], at_index(path, i), v[i], e);
}

template <Record T>
void read(const json& j, const std::string& path, T& v, Errors& e) {
  if (!j.is_object()) {
    e.emplace_back(path.empty() ? "(top level)" : path, "expected an object");
    return;
  }
  std::set<std::string> known;
  fields(v, [&](const char* key, auto& member) {
    known.insert(key);
    if (auto it = j.find(key); it != j.end()) read(*it, join(path, key), member, e);
  });
  for (const auto& item : j.items())
    if (!known.count(item.key())) e.emplace_back(join(path, item.key()), "unknown key");
}

template <class T>
ojson write(const T& v) {
  if constexpr (Record<T>) {
    ojson o = ojson::object();
    T copy = v;
    fields(copy, [&](const char* key, auto& member) { o[key] = write(member); });
    return o;
  } else if constexpr (requires { v.begin(); } && !std::is_same_v<T, std::string>) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(write(x));
    return a;
  } else {
    return ojson(v);
  }
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::invalid_argument([&] {
        std::ostringstream msg;
        msg << "invalid scenario (" << errors.size() << " problem" << (errors.size() == 1 ? "" : "s") << ")";
        for (const auto& e : errors) msg << "\n  " << e;
        return msg.str();
      }()),
      errors_(std::move(errors)) {}

std::vector<std::pair<std::string, int>> json_line_index(const std::string& text) {
  struct Frame {
    bool array;
    std::string path;
    std::size_t next = 0;
  };
  std::vector<std::pair<std::string, int>> out;
  std::vector<Frame> stack;
  std::string value_path;
  bool expect_key = false;
  int line = 1;
  auto value_starts = [&] {
    if (!stack.empty() && stack.back().array) {
      value_path = at_index(stack.back().path, stack.back().next++);
      out.emplace_back(value_path, line);
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == '{' || c == '[') {
      value_starts();
      stack.push_back({c == '[', value_path});
      expect_key = c == '{';
    } else if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
      expect_key = false;
    } else if (c == ',') {
      expect_key = !stack.empty() && !stack.back().array;
    } else if (c == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        if (text[i] == '\n') ++line;
        s += text[i];
      }
      if (expect_key && !stack.empty()) {
        value_path = join(stack.back().path, s);
        out.emplace_back(value_path, line);
        expect_key = false;
      } else {
        value_starts();
      }
    } else if (c != ' ' && c != '\t' && c != '\r' && c != ':') {
      value_starts();
      while (i + 1 < text.size() && std::string_view(",]}\n \t\r").find(text[i + 1]) == std::string_view::npos) ++i;
    }
  }
  return out;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    // nlohmann prefixes its own id and position; keep the reason only.
    if (auto p = what.find("column "); p != std::string::npos)
      if (auto q = what.find(": ", p); q != std::string::npos) what = what.substr(q + 2);
    throw ScenarioError({origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": parse error: " + what});
  }
  Scenario s;
  Errors errs;
  read(j, "", s, errs);
  s.price.delta_t = s.delta_t;
  for (const auto& msg : s.validation_errors()) {
    const auto cut = msg.find(": ");
    errs.emplace_back(msg.substr(0, cut), cut == std::string::npos ? "" : msg.substr(cut + 2));
  }
  if (errs.empty()) return s;

  std::map<std::string, int> lines;
  for (const auto& [path, line] : json_line_index(text)) lines.emplace(path, line);
  std::vector<std::string> out;
  for (const auto& [path, msg] : errs) {
    // The field itself, else its nearest enclosing block present in the file.
    std::string p = path;
    int line = 0;
    while (!p.empty()) {
      if (auto it = lines.find(p); it != lines.end()) {
        line = it->second;
        break;
      }
      const auto cut = p.find_last_of(".[");
      p = cut == std::string::npos ? "" : p.substr(0, cut);
    }
    out.push_back(origin + (line > 0 ? ":" + std::to_string(line) : "") + ": " + path + ": " + msg);
  }
  throw ScenarioError(std::move(out));
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError({path + ": cannot open"});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

ojson scenario_to_json(const Scenario& s) { return write(s); }

namespace {

// Two-space indentation, but arrays of plain values stay on one line.
void pretty(std::ostream& os, const ojson& j, int indent) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    os << "{\n";
    std::size_t i = 0;
    for (const auto& item : j.items()) {
      os << pad << ojson(item.key()).dump() << ": ";
      pretty(os, item.value(), indent + 2);
      os << (++i < j.size() ? ",\n" : "\n");
    }
    os << std::string(indent, ' ') << "}";
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << pad;
      pretty(os, j[i], indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << std::string(indent, ' ') << "]";
  } else if (j.is_array()) {
    os << "[";
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
    os << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace

std::string scenario_text(const Scenario& s) {
  std::ostringstream os;
  pretty(os, scenario_to_json(s), 0);
  os << "\n";
  return os.str();
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << scenario_text(s);
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace mgswap
