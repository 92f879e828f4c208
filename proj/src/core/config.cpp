#include "core/config.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "core/errors.hpp"

namespace dirac {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

struct Entry {
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw parse_error("config line " + std::to_string(line) + ": " + what);
}

class Keys {
 public:
  explicit Keys(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t eol = text.find('\n', pos);
      std::string_view line =
          text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
      ++line_no;
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

      const std::size_t hash = line.find('#');
      if (hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) {
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) {
        fail(line_no, "expected key = value");
      }
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) {
        fail(line_no, "empty key");
      }
      if (value.empty()) {
        fail(line_no, "empty value for key '" + key + "'");
      }
      auto [it, inserted] = entries_.emplace(key, Entry{value, line_no});
      if (!inserted) {
        fail(line_no, "duplicate key '" + key + "' (first set on line " +
                          std::to_string(it->second.line) + ")");
      }
    }
  }

  const Entry* find(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      return nullptr;
    }
    consumed_.insert(key);
    return &it->second;
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : entries_) {
      if (!consumed_.count(key)) {
        fail(entry.line, "unknown key '" + key + "'");
      }
    }
  }

  void reject_if_present(const std::string& key, const std::string& why) {
    if (const Entry* e = find(key)) {
      fail(e->line, "key '" + key + "' " + why);
    }
  }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> consumed_;
};

double parse_real(const Entry& e, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(e.value, &used);
    if (used != e.value.size() || !std::isfinite(v)) {
      fail(e.line, "value '" + e.value + "' for key '" + key + "' is not a finite number");
    }
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    fail(e.line, "value '" + e.value + "' for key '" + key + "' is not a number");
  }
}

std::int64_t parse_int(const Entry& e, const std::string& key) {
  std::int64_t v = 0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    fail(e.line, "value '" + e.value + "' for key '" + key + "' is not an integer");
  }
  return v;
}

std::uint64_t parse_u64(const Entry& e, const std::string& key) {
  std::uint64_t v = 0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    fail(e.line, "value '" + e.value + "' for key '" + key + "' is not an unsigned integer");
  }
  return v;
}

const Entry& require(Keys& keys, const std::string& key) {
  const Entry* e = keys.find(key);
  if (e == nullptr) {
    throw parse_error("config: missing required key '" + key + "'");
  }
  return *e;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  Keys keys(text);
  ExperimentConfig cfg;

  const Entry& field = require(keys, "field");
  const Entry& noise = require(keys, "noise");

  const Entry& t_entry = require(keys, "T");
  cfg.total_time = parse_real(t_entry, "T");
  if (!(cfg.total_time > 0.0)) {
    fail(t_entry.line, "T must be positive");
  }

  const Entry& steps_entry = require(keys, "steps");
  cfg.steps = parse_int(steps_entry, "steps");
  if (cfg.steps < 1) {
    fail(steps_entry.line, "steps must be >= 1");
  }

  const Entry& samples_entry = require(keys, "samples");
  const std::int64_t samples = parse_int(samples_entry, "samples");
  if (samples < 1) {
    fail(samples_entry.line, "samples must be >= 1");
  }
  cfg.samples = static_cast<std::uint64_t>(samples);

  if (const Entry* e = keys.find("seed")) {
    cfg.master_seed = parse_u64(*e, "seed");
  }
  if (const Entry* e = keys.find("coupling")) {
    cfg.coupling = parse_real(*e, "coupling");
  }
  if (const Entry* e = keys.find("quad_steps")) {
    cfg.quad_steps = parse_int(*e, "quad_steps");
    if (cfg.quad_steps < 1) {
      fail(e->line, "quad_steps must be >= 1");
    }
  }
  if (const Entry* e = keys.find("bootstrap")) {
    const std::int64_t b = parse_int(*e, "bootstrap");
    if (b < 2) {
      fail(e->line, "bootstrap must be >= 2");
    }
    cfg.bootstrap_resamples = static_cast<std::uint32_t>(b);
  }

  double theta0 = kPi / 2.0;
  double phi0 = 0.0;
  if (const Entry* e = keys.find("theta0")) {
    theta0 = parse_real(*e, "theta0");
    if (theta0 < 0.0 || theta0 > kPi) {
      fail(e->line, "theta0 must lie in [0, pi]");
    }
  }
  if (const Entry* e = keys.find("phi0")) {
    phi0 = parse_real(*e, "phi0");
  }
  const Vec3 sphere_point{std::sin(theta0) * std::cos(phi0), std::sin(theta0) * std::sin(phi0),
                          std::cos(theta0)};

  // drift
  std::string drift = "trivial";
  if (const Entry* e = keys.find("drift")) {
    drift = e->value;
    if (drift != "trivial" && drift != "precession") {
      fail(e->line, "drift must be 'trivial' or 'precession'");
    }
  }
  if (drift == "precession") {
    std::int64_t turns = 1;
    if (const Entry* e = keys.find("turns")) {
      turns = parse_int(*e, "turns");
      if (turns < 1) {
        fail(e->line, "turns must be >= 1");
      }
    }
    cfg.drift = PrecessionDrift{theta0, phi0, turns};
  } else {
    keys.reject_if_present("turns", "requires drift = precession");
    cfg.drift = TrivialDrift{sphere_point};
  }

  // noise
  if (noise.value == "wiener") {
    cfg.noise_kind = NoiseKind::wiener;
    keys.reject_if_present("gamma", "requires noise = ou");
    keys.reject_if_present("D", "requires noise = ou");
    keys.reject_if_present("epsilon", "requires noise = ou");
    auto diffusion = [&](const char* key) {
      if (const Entry* e = keys.find(key)) {
        const double v = parse_real(*e, key);
        if (v < 0.0) {
          fail(e->line, std::string(key) + " must be nonnegative");
        }
        return v;
      }
      return 0.0;
    };
    cfg.wiener = WienerParams{diffusion("Bx"), diffusion("By"), diffusion("Bz")};
  } else if (noise.value == "ou") {
    cfg.noise_kind = NoiseKind::ou;
    keys.reject_if_present("Bx", "requires noise = wiener");
    keys.reject_if_present("By", "requires noise = wiener");
    keys.reject_if_present("Bz", "requires noise = wiener");
    const Entry& gamma_entry = require(keys, "gamma");
    const double gamma = parse_real(gamma_entry, "gamma");
    if (!(gamma > 0.0)) {
      fail(gamma_entry.line, "gamma must be positive");
    }
    const Entry* d_entry = keys.find("D");
    const Entry* eps_entry = keys.find("epsilon");
    if (d_entry != nullptr && eps_entry != nullptr) {
      throw parse_error("config: conflicting keys 'D' (line " + std::to_string(d_entry->line) +
                        ") and 'epsilon' (line " + std::to_string(eps_entry->line) +
                        "); give exactly one");
    }
    if (d_entry == nullptr && eps_entry == nullptr) {
      throw parse_error("config: noise = ou needs exactly one of 'D' or 'epsilon'");
    }
    if (d_entry != nullptr) {
      const double d = parse_real(*d_entry, "D");
      if (d < 0.0) {
        fail(d_entry->line, "D must be nonnegative");
      }
      cfg.ou = OuParams{gamma, d};
    } else {
      const double eps = parse_real(*eps_entry, "epsilon");
      if (eps < 0.0) {
        fail(eps_entry->line, "epsilon must be nonnegative");
      }
      cfg.ou = OuParams::from_epsilon(gamma, eps);
    }
  } else {
    fail(noise.line, "noise must be 'wiener' or 'ou'");
  }

  // field
  if (field.value == "uniform-asym") {
    cfg.field = UniformAsymmetric{1.0};
  } else if (field.value == "uniform-sym") {
    cfg.field = UniformSymmetric{1.0};
  } else if (field.value == "monopole") {
    cfg.field = Monopole{};
  } else if (field.value == "monopole-linear") {
    try {
      cfg.field = LinearizedMonopole{sphere_point, linearize_monopole(sphere_point)};
    } catch (const singular_region_error& e) {
      fail(field.line, std::string("monopole-linear base is singular: ") + e.what());
    }
  } else {
    fail(field.line, "field must be one of uniform-asym, uniform-sym, monopole, monopole-linear");
  }

  keys.reject_unknown();
  return cfg;
}

}  // namespace dirac
