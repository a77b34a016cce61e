#include "hilltongue/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace hilltongue {

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& message)
    : ValidationError((line ? "line " + std::to_string(line) + ": " : std::string()) +
                      "field '" + field + "': " + message),
      line_(line),
      field_(std::move(field)) {}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

const std::set<std::string> kAnalyses = {"series", "tongues", "shape", "order",
                                         "coexist", "chart",   "verify"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Entry {
  std::size_t line;
  std::string value;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  const Entry* find(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const Entry* e = find(key);
    throw ConfigError(e ? e->line : 0, key, message);
  }

  std::vector<std::string> list(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) return {};
    const std::string& v = e->value;
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail(key, "expected [ ... ]");
    std::vector<std::string> items;
    std::stringstream ss(v.substr(1, v.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) {
        if (!items.empty() || !ss.eof()) fail(key, "empty list item");
        continue;
      }
      items.push_back(item);
    }
    return items;
  }

  long integer(const std::string& key, long lo, long hi) const {
    const Entry* e = find(key);
    if (!e) fail(key, "required");
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(e->value.c_str(), &end, 10);
    if (errno != 0 || end == e->value.c_str() || *end != '\0') fail(key, "not an integer");
    if (v < lo || v > hi) {
      fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }

  double real(const std::string& key, const std::string& text) const {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (errno != 0 || end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
      fail(key, "'" + text + "' is not a finite number");
    }
    return v;
  }

  TaylorCoeffs coefficients(const std::string& key, unsigned min_index) const {
    TaylorCoeffs out;
    for (const auto& item : list(key)) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) fail(key, "entry '" + item + "' is not k:p/q");
      const std::string ks = trim(item.substr(0, colon));
      char* end = nullptr;
      const long k = std::strtol(ks.c_str(), &end, 10);
      if (ks.empty() || *end != '\0' || k < 0) fail(key, "bad index '" + ks + "'");
      if (k < static_cast<long>(min_index)) {
        fail(key, "index " + ks + " below " + std::to_string(min_index));
      }
      Rational value;
      try {
        value = parse_rational(trim(item.substr(colon + 1)));
      } catch (const ValidationError& e) {
        fail(key, e.what());
      }
      if (!out.emplace(static_cast<unsigned>(k), value).second) {
        fail(key, "index " + ks + " given twice");
      }
    }
    return out;
  }

  std::vector<double> grid(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) return {};
    const std::string& v = e->value;
    std::vector<double> out;
    if (v.rfind("geom(", 0) == 0) {
      if (v.back() != ')') fail(key, "expected geom(start, stop, count)");
      std::stringstream ss(v.substr(5, v.size() - 6));
      std::vector<std::string> parts;
      std::string part;
      while (std::getline(ss, part, ',')) parts.push_back(trim(part));
      if (parts.size() != 3) fail(key, "geom takes start, stop, count");
      const double a = real(key, parts[0]);
      const double b = real(key, parts[1]);
      const double n = real(key, parts[2]);
      if (n < 2 || n != std::floor(n)) fail(key, "geom count must be an integer >= 2");
      if (a <= 0 || b <= 0) fail(key, "geom bounds must be positive");
      const int count = static_cast<int>(n);
      for (int i = 0; i < count; ++i) {
        out.push_back(a * std::pow(b / a, static_cast<double>(i) / (count - 1)));
      }
      out.back() = b;
    } else {
      for (const auto& item : list(key)) out.push_back(real(key, item));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!(out[i] > 0)) fail(key, "q values must be positive");
      if (i > 0 && !(out[i] > out[i - 1])) fail(key, "q values must be strictly ascending");
    }
    return out;
  }

 private:
  std::map<std::string, Entry> entries_;
};

const std::set<std::string> kKeys = {
    "name", "f", "g", "order", "n_max", "q_grid", "analyses", "out",
    "tol.step", "tol.root", "tol.quadrature", "tol.scan_points", "tol.window_scale",
    "tol.taylor_order", "tol.min_steps", "tol.max_steps", "tol.coefficient_bits"};

}  // namespace

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::size_t lineno = 0;
  std::stringstream ss{std::string(text)};
  std::string raw;
  while (std::getline(ss, raw)) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(lineno, line, "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKeys.count(key)) throw ConfigError(lineno, key, "unknown key");
    if (value.empty()) throw ConfigError(lineno, key, "empty value");
    if (!entries.emplace(key, Entry{lineno, value}).second) {
      throw ConfigError(lineno, key, "given twice");
    }
  }

  const Reader r(std::move(entries));
  RunConfig c;
  c.hash = fnv1a(text);
  if (const Entry* e = r.find("name")) c.name = e->value;
  if (const Entry* e = r.find("out")) c.out_dir = e->value;

  const auto order = static_cast<unsigned>(r.integer("order", 1, 64));
  c.spec.osc = {r.coefficients("f", 2), order};
  c.spec.coupling = {r.coefficients("g", 1), order};
  c.n_max = static_cast<unsigned>(r.integer("n_max", 1, 64));
  if (c.n_max > order) {
    r.fail("n_max", "n_max = " + std::to_string(c.n_max) + " exceeds order = " +
                        std::to_string(order) + "; C_N needs order >= N");
  }
  c.q_grid = r.grid("q_grid");

  const auto analyses = r.list("analyses");
  if (!r.find("analyses")) c.analyses = {"series"};
  for (const auto& a : analyses) {
    if (!kAnalyses.count(a)) r.fail("analyses", "unknown analysis '" + a + "'");
    c.analyses.insert(a);
  }
  for (const char* a : {"tongues", "order", "chart"}) {
    if (c.wants(a) && c.q_grid.empty()) {
      r.fail("q_grid", std::string("analysis '") + a + "' needs a q grid");
    }
  }

  auto& s = c.settings;
  if (const Entry* e = r.find("tol.step")) s.step_tolerance = r.real("tol.step", e->value);
  if (const Entry* e = r.find("tol.root")) s.root_tolerance = r.real("tol.root", e->value);
  if (const Entry* e = r.find("tol.quadrature")) {
    s.quadrature_tolerance = r.real("tol.quadrature", e->value);
  }
  if (const Entry* e = r.find("tol.window_scale")) {
    s.window_scale = r.real("tol.window_scale", e->value);
    if (!(s.window_scale > 0)) r.fail("tol.window_scale", "must be positive");
  }
  if (r.find("tol.scan_points")) s.scan_points = r.integer("tol.scan_points", 4, 100000);
  if (r.find("tol.taylor_order")) s.taylor_order = r.integer("tol.taylor_order", 4, 64);
  if (r.find("tol.min_steps")) s.min_steps = r.integer("tol.min_steps", 1, 1 << 20);
  if (r.find("tol.max_steps")) s.max_steps = r.integer("tol.max_steps", 1, 1 << 24);
  if (s.min_steps > s.max_steps) r.fail("tol.min_steps", "exceeds tol.max_steps");
  if (r.find("tol.coefficient_bits")) {
    c.coefficient_bits = r.integer("tol.coefficient_bits", 64, 1L << 40);
  }
  for (const char* key : {"tol.step", "tol.root", "tol.quadrature"}) {
    if (const Entry* e = r.find(key); e && !(r.real(key, e->value) > 0)) {
      r.fail(key, "must be positive");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "config", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  RunConfig c = parse_config(buf.str());
  if (c.name.empty()) {
    const auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    c.name = base.substr(0, base.find('.'));
  }
  return c;
}

}  // namespace hilltongue
