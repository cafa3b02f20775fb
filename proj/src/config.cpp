#include "nonlocal/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "nonlocal/test_functions.hpp"

namespace nonlocal {

ParseError::ParseError(int line, std::string reason)
    : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(std::move(reason)) {}

namespace {

std::string join_violations(const std::vector<Violation>& v) {
  std::string s;
  for (const auto& x : v) {
    if (!s.empty()) s += "; ";
    s += x.field + ": " + x.constraint;
  }
  return s;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::KernelInfo, "kernel-info"},
    {Command::Apply, "apply"},
    {Command::Convergence, "convergence"},
    {Command::WeakConvergence, "weak-convergence"},
    {Command::Ibp, "ibp"},
    {Command::Spectrum, "spectrum"},
    {Command::Compactness, "compactness"},
    {Command::Poincare, "poincare"},
    {Command::Oscillation, "oscillation"},
    {Command::Figure, "figure"},
    {Command::DivergenceTheorem, "divergence-theorem"},
    {Command::DeformationGradient, "deformation-gradient"},
};

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "?";
}

Command command_from_string(std::string_view name) {
  for (const auto& [cmd, n] : kCommands)
    if (n == name) return cmd;
  throw InvalidArgument("unknown command '" + std::string(name) + "'");
}

KernelSpec KernelBlock::build(std::optional<double> delta_override) const {
  const std::optional<double> d = delta_override ? delta_override : delta;
  if (!d) throw InvalidArgument(label + ": no delta given");
  auto make = [&]() {
    switch (family) {
      case KernelFamily::PotentialSector:
        return KernelSpec::potential(dimension, *d, beta.value_or(1.0 / 3.0), theta);
      case KernelFamily::PiecewiseConstantSign:
        return KernelSpec::piecewise_constant_sign(*d);
      case KernelFamily::OneSided:
        return KernelSpec::one_sided(*d, beta.value_or(0.5));
      case KernelFamily::Polynomial:
        return coefficients.empty() ? KernelSpec::polynomial(*d)
                                    : KernelSpec::polynomial(*d, coefficients);
      case KernelFamily::MollifierDerivative:
        return KernelSpec::mollifier_derivative(*d);
      case KernelFamily::Tabulated:
        break;
    }
    if (dic_cells == 0) return KernelSpec::tabulated(*d, values);
    if (!normalize) throw InvalidArgument(label + ": the DIC kernel is always normalized");
    return dic_kernel(*d, dic_cells);
  };
  KernelSpec k = make();
  if (normalize && !(family == KernelFamily::Tabulated && dic_cells > 0)) k = normalized(k);
  if (scale != 1.0) k = k.scaled(scale);
  return k;
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, Entry> entries;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double to_double(const Entry& e, const std::string& key) {
  const std::string& s = e.value;
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError(e.line, "'" + key + "' expects a number, got '" + s + "'");
  return v;
}

long long to_integer(const Entry& e, const std::string& key) {
  const std::string& s = e.value;
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError(e.line, "'" + key + "' expects an integer, got '" + s + "'");
  return v;
}

std::vector<double> to_doubles(const Entry& e, const std::string& key) {
  std::vector<double> out;
  for (const auto& part : split_list(e.value)) out.push_back(to_double(Entry{part, e.line}, key));
  return out;
}

std::vector<int> to_integers(const Entry& e, const std::string& key) {
  std::vector<int> out;
  for (const auto& part : split_list(e.value))
    out.push_back(static_cast<int>(to_integer(Entry{part, e.line}, key)));
  return out;
}

bool to_bool(const Entry& e, const std::string& key) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  throw ParseError(e.line, "'" + key + "' expects true or false, got '" + e.value + "'");
}

const std::vector<std::string>& allowed_keys(const std::string& section) {
  static const std::vector<std::string> top{"command", "seed", "quad_order", "output"};
  static const std::vector<std::string> kernel{
      "family", "dimension", "delta", "beta", "theta", "half_angle", "axis",
      "coefficients", "values", "dic_cells", "normalize", "scale"};
  static const std::vector<std::string> domain{"lo", "hi", "n_per_delta"};
  static const std::vector<std::string> sweep{"deltas", "n_per_delta"};
  static const std::vector<std::string> study{
      "u", "phi", "p", "which", "expect", "subspace", "evaluation", "trials", "min_order",
      "max_order", "max_error", "bound_h2", "expect_normalization", "rtol", "tolerance"};
  if (section.empty()) return top;
  if (section.rfind("kernel", 0) == 0) return kernel;
  if (section == "domain") return domain;
  if (section == "sweep") return sweep;
  return study;
}

bool valid_section(const std::string& name) {
  if (name == "kernel" || name == "domain" || name == "sweep" || name == "study") return true;
  if (name.rfind("kernel.", 0) == 0 && name.size() > 7)
    return std::all_of(name.begin() + 7, name.end(), [](char c) { return c >= '0' && c <= '9'; });
  return false;
}

std::vector<Section> tokenize(std::string_view text) {
  std::vector<Section> sections{Section{"", 0, {}}};
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string line(raw);
    if (const auto c = line.find('#'); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty() || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!valid_section(name)) throw ParseError(line_no, "unknown section [" + name + "]");
      for (const auto& s : sections)
        if (s.name == name) throw ParseError(line_no, "duplicate section [" + name + "]");
      sections.push_back(Section{name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key before '='");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + key + "'");
    Section& sec = sections.back();
    const auto& keys = allowed_keys(sec.name);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      const std::string where = sec.name.empty() ? "top level" : "[" + sec.name + "]";
      throw ParseError(line_no, "unknown key '" + key + "' at " + where);
    }
    if (sec.entries.count(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
    sec.entries[key] = Entry{value, line_no};
  }
  return sections;
}

KernelFamily family_from_config(const Entry& e, int& dic) {
  static const std::map<std::string, KernelFamily> aliases{
      {"potential_sector", KernelFamily::PotentialSector},
      {"piecewise_constant_sign", KernelFamily::PiecewiseConstantSign},
      {"mollifier_derivative", KernelFamily::MollifierDerivative},
  };
  if (e.value == "dic") {
    dic = -1;
    return KernelFamily::Tabulated;
  }
  if (auto it = aliases.find(e.value); it != aliases.end()) return it->second;
  try {
    return kernel_family_from_string(e.value);
  } catch (const InvalidArgument&) {
    throw ParseError(e.line, "unknown kernel family '" + e.value + "'");
  }
}

KernelBlock read_kernel(const Section& s) {
  KernelBlock k;
  k.label = s.name;
  const auto& m = s.entries;
  auto get = [&](const char* key) -> const Entry* {
    auto it = m.find(key);
    return it == m.end() ? nullptr : &it->second;
  };
  int dic = 0;
  if (auto e = get("family")) k.family = family_from_config(*e, dic);
  else throw ParseError(s.line, "[" + s.name + "] needs a family");
  if (auto e = get("dimension")) k.dimension = static_cast<int>(to_integer(*e, "dimension"));
  if (auto e = get("delta")) k.delta = to_double(*e, "delta");
  if (auto e = get("beta")) k.beta = to_double(*e, "beta");
  if (auto e = get("theta")) {
    const auto t = to_doubles(*e, "theta");
    if (t.size() != 2) throw ParseError(e->line, "'theta' expects two values: minus, plus");
    k.theta.minus = t[0];
    k.theta.plus = t[1];
  }
  if (auto e = get("half_angle")) k.theta.half_angle = to_double(*e, "half_angle");
  if (auto e = get("axis")) k.theta.axis = static_cast<int>(to_integer(*e, "axis"));
  if (auto e = get("coefficients")) k.coefficients = to_doubles(*e, "coefficients");
  if (auto e = get("values")) k.values = to_doubles(*e, "values");
  if (auto e = get("dic_cells")) k.dic_cells = static_cast<int>(to_integer(*e, "dic_cells"));
  else if (dic < 0) k.dic_cells = 16;
  if (k.dic_cells != 0 && dic == 0)
    throw ParseError(get("dic_cells")->line, "'dic_cells' applies only to family = dic");
  if (auto e = get("normalize")) k.normalize = to_bool(*e, "normalize");
  if (auto e = get("scale")) k.scale = to_double(*e, "scale");
  return k;
}

bool sweeps_delta(Command c) {
  return c == Command::KernelInfo || c == Command::Convergence ||
         c == Command::WeakConvergence || c == Command::Oscillation;
}

bool sweeps_n(Command c) {
  return c == Command::Apply || c == Command::Compactness || c == Command::Poincare;
}

void validate(ExperimentConfig& c, std::vector<Violation>& out) {
  auto bad = [&out](std::string field, std::string what) {
    out.push_back(Violation{std::move(field), std::move(what)});
  };
  if (c.quad_order != 1 && c.quad_order != 2) bad("quad_order", "must be 1 or 2");
  if (c.kernels.empty()) bad("kernel", "at least one [kernel] section is required");

  const bool delta_sweep = sweeps_delta(c.command) && !c.sweep.deltas.empty();
  for (const auto& k : c.kernels) {
    const std::string p = k.label + ".";
    if (k.dimension != 1 && k.dimension != 2) bad(p + "dimension", "must be 1 or 2");
    if (k.delta && !(*k.delta > 0.0)) bad(p + "delta", "must be positive");
    if (!k.delta && !delta_sweep) bad(p + "delta", "required (no delta sweep for this command)");
    if (k.beta && k.family != KernelFamily::PotentialSector && k.family != KernelFamily::OneSided)
      bad(p + "beta", "only potential and one_sided kernels take beta");
    if (k.beta && !(*k.beta > 1.0 - k.dimension))
      bad(p + "beta", "must exceed 1 - dimension for integrability");
    if (k.dimension == 2 && k.family != KernelFamily::PotentialSector)
      bad(p + "family", "only potential kernels are two-dimensional");
    if (!(k.theta.half_angle >= 0.0 && k.theta.half_angle < 1.0))
      bad(p + "half_angle", "must lie in [0, 1)");
    if (k.theta.axis < 0 || k.theta.axis >= k.dimension) bad(p + "axis", "must be a valid axis");
    if (k.family == KernelFamily::Tabulated && k.dic_cells == 0 &&
        (k.values.empty() || k.values.size() % 2 != 0))
      bad(p + "values", "tabulated kernels need an even, nonempty list of cell values");
    if (k.dic_cells < 0) bad(p + "dic_cells", "must be positive");
    if (!std::isfinite(k.scale)) bad(p + "scale", "must be finite");
  }

  const int dim = c.kernels.empty() ? 1 : c.kernels.front().dimension;
  for (const auto& k : c.kernels)
    if (k.dimension != dim) bad(k.label + ".dimension", "all kernels must share one dimension");
  if (c.domain.lo.empty()) c.domain.lo.assign(static_cast<std::size_t>(dim), 0.0);
  if (c.domain.hi.empty()) c.domain.hi.assign(static_cast<std::size_t>(dim), 1.0);
  if (static_cast<int>(c.domain.lo.size()) != dim || static_cast<int>(c.domain.hi.size()) != dim) {
    bad("domain", "lo and hi need one value per dimension");
  } else {
    for (int a = 0; a < dim; ++a)
      if (!(c.domain.lo[a] < c.domain.hi[a])) bad("domain", "lo must be below hi on every axis");
  }
  if (c.domain.n_per_delta < 2) bad("domain.n_per_delta", "must be at least 2");

  for (std::size_t i = 0; i < c.sweep.deltas.size(); ++i) {
    if (!(c.sweep.deltas[i] > 0.0)) bad("sweep.deltas", "must be positive");
    if (i > 0 && !(c.sweep.deltas[i] < c.sweep.deltas[i - 1]))
      bad("sweep.deltas", "must be strictly decreasing");
  }
  for (std::size_t i = 0; i < c.sweep.n_per_delta.size(); ++i) {
    if (c.sweep.n_per_delta[i] < 2) bad("sweep.n_per_delta", "must be at least 2");
    if (i > 0 && c.sweep.n_per_delta[i] <= c.sweep.n_per_delta[i - 1])
      bad("sweep.n_per_delta", "must be strictly increasing");
  }
  if (c.command == Command::Convergence || c.command == Command::WeakConvergence) {
    if (c.sweep.deltas.empty()) bad("sweep.deltas", "required for " + std::string(to_string(c.command)));
    if (dim != 1) bad("kernel.dimension", "convergence studies are one-dimensional");
  }
  if (c.command == Command::Oscillation && dim != 1)
    bad("kernel.dimension", "the oscillation check is one-dimensional");
  if (c.command == Command::Figure && dim != 1) bad("kernel.dimension", "figures are one-dimensional");
  if ((c.command == Command::DivergenceTheorem || c.command == Command::DeformationGradient) &&
      dim != 2)
    bad("kernel.dimension", std::string(to_string(c.command)) + " needs two-dimensional kernels");
  if (c.command == Command::DeformationGradient && c.kernels.size() != 2)
    bad("kernel", "deformation-gradient needs exactly two kernels, one per axis");

  auto& s = c.study;
  const auto names = test_function_names();
  auto known = [&names](const std::string& n) {
    return std::find(names.begin(), names.end(), n) != names.end();
  };
  if (!s.u.empty() && !known(s.u)) bad("study.u", "unknown test function '" + s.u + "'");
  if (!known(s.phi)) bad("study.phi", "unknown test function '" + s.phi + "'");
  if (!(s.p >= 1.0)) bad("study.p", "must be at least 1 (or inf)");
  if (s.which != "absval" && s.which != "cusp") bad("study.which", "must be absval or cusp");
  if (s.subspace != "full" && s.subspace != "zero_on_collar")
    bad("study.subspace", "must be full or zero_on_collar");
  if (s.evaluation != "reference" && s.evaluation != "assembled")
    bad("study.evaluation", "must be reference or assembled");
  if (s.trials < 0) bad("study.trials", "must be nonnegative");
  if (!(s.rtol > 0.0)) bad("study.rtol", "must be positive");
  if (!(s.tolerance >= 0.0)) bad("study.tolerance", "must be nonnegative");
  static const std::vector<std::string> expects{"auto", "real", "imaginary", "decay", "report",
                                                "zero", "derivative", "decreasing"};
  if (std::find(expects.begin(), expects.end(), s.expect) == expects.end())
    bad("study.expect", "unknown expectation '" + s.expect + "'");
  if (c.command == Command::Oscillation && !s.u.empty() && s.u != "oscillating" && s.u != "zero")
    bad("study.u", "the oscillation check takes oscillating or zero");

  // Build each kernel once so that family-level errors surface here.
  if (out.empty()) {
    for (const auto& k : c.kernels) {
      try {
        (void)k.build(k.delta ? k.delta : std::optional<double>(c.sweep.deltas.front()));
      } catch (const Error& e) {
        bad(k.label, e.what());
      }
    }
  }
}

void resolve_defaults(ExperimentConfig& c) {
  auto& s = c.study;
  if (s.u.empty()) {
    switch (c.command) {
      case Command::Convergence: s.u = "sin3x"; break;
      case Command::WeakConvergence: s.u = "step"; break;
      case Command::Apply:
      case Command::Poincare: s.u = "zero_mode"; break;
      case Command::Oscillation: s.u = "oscillating"; break;
      default: s.u = "sin3x"; break;
    }
  }
  if (s.trials == 0) {
    switch (c.command) {
      case Command::Ibp: s.trials = 100; break;
      case Command::DivergenceTheorem: s.trials = 10; break;
      case Command::DeformationGradient: s.trials = 5; break;
      default: break;
    }
  }
  if (s.tolerance == 0.0) {
    switch (c.command) {
      case Command::Ibp: s.tolerance = 1e-10; break;
      case Command::Spectrum: s.tolerance = 1e-10; break;
      case Command::DivergenceTheorem: s.tolerance = 1e-10; break;
      case Command::DeformationGradient: s.tolerance = 1e-9; break;
      case Command::Figure: s.tolerance = s.which == "cusp" ? 0.05 : 1e-6; break;
      default: break;
    }
  }
  if (sweeps_n(c.command) && c.sweep.n_per_delta.empty())
    c.sweep.n_per_delta.push_back(c.domain.n_per_delta);
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  const std::vector<Section> sections = tokenize(text);
  ExperimentConfig c;
  const auto& top = sections.front().entries;
  auto it = top.find("command");
  if (it == top.end()) throw ValidationError(std::vector<Violation>{{"command", "required"}});
  try {
    c.command = command_from_string(it->second.value);
  } catch (const InvalidArgument&) {
    throw ParseError(it->second.line, "unknown command '" + it->second.value + "'");
  }
  if (auto s = top.find("seed"); s != top.end()) {
    const long long v = to_integer(s->second, "seed");
    if (v < 0) throw ParseError(s->second.line, "'seed' must be nonnegative");
    c.seed = static_cast<std::uint64_t>(v);
  }
  if (auto s = top.find("quad_order"); s != top.end())
    c.quad_order = static_cast<int>(to_integer(s->second, "quad_order"));
  if (auto s = top.find("output"); s != top.end()) c.output = s->second.value;

  std::vector<const Section*> kernel_sections;
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const Section& sec = sections[i];
    const auto& m = sec.entries;
    auto get = [&](const char* key) -> const Entry* {
      auto f = m.find(key);
      return f == m.end() ? nullptr : &f->second;
    };
    if (sec.name.rfind("kernel", 0) == 0) {
      kernel_sections.push_back(&sec);
    } else if (sec.name == "domain") {
      if (auto e = get("lo")) c.domain.lo = to_doubles(*e, "lo");
      if (auto e = get("hi")) c.domain.hi = to_doubles(*e, "hi");
      if (auto e = get("n_per_delta")) c.domain.n_per_delta = static_cast<int>(to_integer(*e, "n_per_delta"));
    } else if (sec.name == "sweep") {
      if (auto e = get("deltas")) c.sweep.deltas = to_doubles(*e, "deltas");
      if (auto e = get("n_per_delta")) c.sweep.n_per_delta = to_integers(*e, "n_per_delta");
    } else {
      auto& s = c.study;
      if (auto e = get("u")) s.u = e->value;
      if (auto e = get("phi")) s.phi = e->value;
      if (auto e = get("p")) s.p = to_double(*e, "p");
      if (auto e = get("which")) s.which = e->value;
      if (auto e = get("expect")) s.expect = e->value;
      if (auto e = get("subspace")) s.subspace = e->value;
      if (auto e = get("evaluation")) s.evaluation = e->value;
      if (auto e = get("trials")) s.trials = static_cast<int>(to_integer(*e, "trials"));
      if (auto e = get("min_order")) s.min_order = to_double(*e, "min_order");
      if (auto e = get("max_order")) s.max_order = to_double(*e, "max_order");
      if (auto e = get("max_error")) s.max_error = to_double(*e, "max_error");
      if (auto e = get("bound_h2")) s.bound_h2 = to_double(*e, "bound_h2");
      if (auto e = get("expect_normalization"))
        s.expect_normalization = to_double(*e, "expect_normalization");
      if (auto e = get("rtol")) s.rtol = to_double(*e, "rtol");
      if (auto e = get("tolerance")) s.tolerance = to_double(*e, "tolerance");
    }
  }
  // [kernel] first, then [kernel.N] by N.
  std::stable_sort(kernel_sections.begin(), kernel_sections.end(), [](auto a, auto b) {
    auto key = [](const std::string& n) { return n == "kernel" ? -1 : std::stoi(n.substr(7)); };
    return key(a->name) < key(b->name);
  });
  for (const Section* s : kernel_sections) c.kernels.push_back(read_kernel(*s));

  std::vector<Violation> violations;
  validate(c, violations);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  resolve_defaults(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string fmt_list(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    if constexpr (std::is_floating_point_v<T>) s += fmt(v[i]);
    else s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

std::vector<std::string> echo_config(const ExperimentConfig& c) {
  std::vector<std::string> out;
  out.push_back("command = " + std::string(to_string(c.command)));
  out.push_back("seed = " + std::to_string(c.seed));
  out.push_back("quad_order = " + std::to_string(c.quad_order));
  if (!c.output.empty()) out.push_back("output = " + c.output);
  for (const auto& k : c.kernels) {
    out.push_back("[" + k.label + "]");
    const bool dic = k.family == KernelFamily::Tabulated && k.dic_cells > 0;
    out.push_back("family = " + (dic ? std::string("dic") : std::string(to_string(k.family))));
    out.push_back("dimension = " + std::to_string(k.dimension));
    if (k.delta) out.push_back("delta = " + fmt(*k.delta));
    if (k.family == KernelFamily::PotentialSector)
      out.push_back("beta = " + fmt(k.beta.value_or(1.0 / 3.0)));
    if (k.family == KernelFamily::OneSided) out.push_back("beta = " + fmt(k.beta.value_or(0.5)));
    if (k.family == KernelFamily::PotentialSector) {
      out.push_back("theta = " + fmt(k.theta.minus) + ", " + fmt(k.theta.plus));
      if (k.dimension == 2) {
        out.push_back("half_angle = " + fmt(k.theta.half_angle));
        out.push_back("axis = " + std::to_string(k.theta.axis));
      }
    }
    if (k.family == KernelFamily::Polynomial)
      out.push_back("coefficients = " +
                    fmt_list(k.coefficients.empty() ? KernelSpec::default_polynomial_coefficients()
                                                    : k.coefficients));
    if (k.family == KernelFamily::Tabulated) {
      if (dic) out.push_back("dic_cells = " + std::to_string(k.dic_cells));
      else out.push_back("values = " + fmt_list(k.values));
    }
    out.push_back(std::string("normalize = ") + (k.normalize ? "true" : "false"));
    out.push_back("scale = " + fmt(k.scale));
  }
  out.push_back("[domain]");
  out.push_back("lo = " + fmt_list(c.domain.lo));
  out.push_back("hi = " + fmt_list(c.domain.hi));
  out.push_back("n_per_delta = " + std::to_string(c.domain.n_per_delta));
  if (!c.sweep.deltas.empty() || !c.sweep.n_per_delta.empty()) {
    out.push_back("[sweep]");
    if (!c.sweep.deltas.empty()) out.push_back("deltas = " + fmt_list(c.sweep.deltas));
    if (!c.sweep.n_per_delta.empty()) out.push_back("n_per_delta = " + fmt_list(c.sweep.n_per_delta));
  }
  const auto& s = c.study;
  out.push_back("[study]");
  out.push_back("u = " + s.u);
  out.push_back("phi = " + s.phi);
  out.push_back("p = " + fmt(s.p));
  out.push_back("which = " + s.which);
  out.push_back("expect = " + s.expect);
  out.push_back("subspace = " + s.subspace);
  out.push_back("evaluation = " + s.evaluation);
  out.push_back("trials = " + std::to_string(s.trials));
  if (s.min_order) out.push_back("min_order = " + fmt(*s.min_order));
  if (s.max_order) out.push_back("max_order = " + fmt(*s.max_order));
  if (s.max_error) out.push_back("max_error = " + fmt(*s.max_error));
  if (s.bound_h2) out.push_back("bound_h2 = " + fmt(*s.bound_h2));
  if (s.expect_normalization) out.push_back("expect_normalization = " + fmt(*s.expect_normalization));
  out.push_back("rtol = " + fmt(s.rtol));
  out.push_back("tolerance = " + fmt(s.tolerance));
  return out;
}

}  // namespace nonlocal
