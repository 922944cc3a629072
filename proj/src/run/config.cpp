#include "config.hpp"

#include <cmath>
#include <json.hpp>
#include <set>

#include "../core/errors.hpp"

namespace sglab {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      throw ConfigError("unknown config key: " + path + "." + item.key());
  }
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + " must be a number");
  return v.get<double>();
}

double opt_number(const json& obj, const std::string& path,
                  const std::string& key, double dflt) {
  const json* v = find(obj, key);
  return v ? as_number(*v, path + "." + key) : dflt;
}

long long opt_integer(const json& obj, const std::string& path,
                      const std::string& key, long long dflt) {
  const json* v = find(obj, key);
  if (!v) return dflt;
  if (!v->is_number_integer())
    throw ConfigError(path + "." + key + " must be an integer");
  return v->get<long long>();
}

std::string opt_string(const json& obj, const std::string& path,
                       const std::string& key, const std::string& dflt) {
  const json* v = find(obj, key);
  if (!v) return dflt;
  if (!v->is_string()) throw ConfigError(path + "." + key + " must be a string");
  return v->get<std::string>();
}

std::vector<double> number_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, path));
  return out;
}

}  // namespace

double ExperimentConfig::alpha_gas() const {
  if (!activity_gas)
    throw ConfigError(
        "model.alpha_gas or model.alpha_library is required for this command");
  return *activity_gas;
}

double ExperimentConfig::alpha_library() const { return 2.0 * alpha_gas(); }

KernelFamily ExperimentConfig::family() const {
  Density d = uniform_density ? Density::uniform()
                              : Density::tabulated(density_x, density_g);
  return KernelFamily(seed, a, b, d, quadrature_order);
}

Grid ExperimentConfig::grid() const {
  auto fam = family();
  return Grid::midpoint(fam, grid_points);
}

TestFunction ExperimentConfig::test_function() const {
  if (theta.kind == "none") return TestFunction();
  if (theta.kind == "constant")
    return TestFunction({a, b}, {theta.amplitude, theta.amplitude});
  if (theta.kind == "tabulated") return TestFunction(theta.x, theta.values);
  // sine
  double len = b - a, amp = theta.amplitude, freq = theta.frequency, a0 = a;
  return TestFunction::tabulate(a, b, theta.nodes, [=](double x) {
    return amp * std::sin(2.0 * M_PI * freq * (x - a0) / len);
  });
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  check_keys(j, "config",
             {"geometry", "seed_kernel", "model", "numerics", "execution",
              "output"});

  ExperimentConfig c;

  if (const json* g = find(j, "geometry")) {
    check_keys(*g, "geometry", {"interval", "density"});
    if (const json* iv = find(*g, "interval")) {
      auto ab = number_list(*iv, "geometry.interval");
      if (ab.size() != 2 || !(ab[0] < ab[1]))
        throw ConfigError("geometry.interval must be [a, b] with a < b");
      c.a = ab[0];
      c.b = ab[1];
    }
    if (const json* d = find(*g, "density")) {
      if (d->is_string()) {
        if (d->get<std::string>() != "uniform")
          throw ConfigError("geometry.density must be \"uniform\" or a table");
      } else if (d->is_object()) {
        check_keys(*d, "geometry.density", {"x", "g"});
        if (!find(*d, "x") || !find(*d, "g"))
          throw ConfigError("geometry.density table needs x and g arrays");
        c.density_x = number_list(*find(*d, "x"), "geometry.density.x");
        c.density_g = number_list(*find(*d, "g"), "geometry.density.g");
        if (c.density_x.size() != c.density_g.size() || c.density_x.size() < 2)
          throw ConfigError(
              "geometry.density needs matching x and g arrays (>= 2 points)");
        for (size_t i = 1; i < c.density_x.size(); i++)
          if (!(c.density_x[i] > c.density_x[i - 1]))
            throw ConfigError("geometry.density.x must increase strictly");
        for (double v : c.density_g)
          if (!(v >= 0.0) || !std::isfinite(v))
            throw ConfigError("geometry.density.g must be nonnegative");
        c.uniform_density = false;
      } else {
        throw ConfigError("geometry.density must be \"uniform\" or a table");
      }
    }
  }

  if (const json* s = find(j, "seed_kernel")) {
    check_keys(*s, "seed_kernel", {"name"});
    c.seed = SeedProfile::parse(opt_string(*s, "seed_kernel", "name",
                                           "gaussian"));
  }

  if (const json* m = find(j, "model")) {
    check_keys(*m, "model",
               {"beta", "alpha_gas", "alpha_library", "test_function",
                "insertions"});
    c.beta = opt_number(*m, "model", "beta", c.beta);
    if (!(c.beta >= 0.0) || !std::isfinite(c.beta))
      throw ConfigError("model.beta must be a nonnegative number");
    const json* ag = find(*m, "alpha_gas");
    const json* al = find(*m, "alpha_library");
    if (ag && al)
      throw ConfigError(
          "model: give exactly one of alpha_gas and alpha_library");
    if (ag) c.activity_gas = as_number(*ag, "model.alpha_gas");
    if (al) c.activity_gas = 0.5 * as_number(*al, "model.alpha_library");
    if (c.activity_gas && !(*c.activity_gas >= 0.0))
      throw ConfigError("the activity must be nonnegative");

    if (const json* tf = find(*m, "test_function")) {
      check_keys(*tf, "model.test_function",
                 {"kind", "amplitude", "frequency", "nodes", "x", "values"});
      c.theta.kind = opt_string(*tf, "model.test_function", "kind", "sine");
      if (c.theta.kind != "sine" && c.theta.kind != "constant" &&
          c.theta.kind != "tabulated")
        throw ConfigError(
            "model.test_function.kind must be sine, constant, or tabulated");
      c.theta.amplitude =
          opt_number(*tf, "model.test_function", "amplitude", 0.5);
      c.theta.frequency =
          opt_number(*tf, "model.test_function", "frequency", 1.0);
      c.theta.nodes = static_cast<int>(
          opt_integer(*tf, "model.test_function", "nodes", 129));
      if (c.theta.nodes < 2 || c.theta.nodes > 4096)
        throw ConfigError("model.test_function.nodes out of range [2, 4096]");
      if (const json* x = find(*tf, "x"))
        c.theta.x = number_list(*x, "model.test_function.x");
      if (const json* v = find(*tf, "values"))
        c.theta.values = number_list(*v, "model.test_function.values");
      if (c.theta.kind == "tabulated" &&
          (c.theta.x.size() < 2 || c.theta.x.size() != c.theta.values.size()))
        throw ConfigError(
            "model.test_function needs matching x and values arrays");
    }

    if (const json* ins = find(*m, "insertions")) {
      check_keys(*ins, "model.insertions", {"z", "eta"});
      if (const json* z = find(*ins, "z"))
        c.insertion_z = number_list(*z, "model.insertions.z");
      if (const json* e = find(*ins, "eta"))
        c.insertion_eta = number_list(*e, "model.insertions.eta");
      if (c.insertion_z.size() != c.insertion_eta.size())
        throw ConfigError("model.insertions needs matching z and eta arrays");
    }
  }

  if (const json* n = find(j, "numerics")) {
    check_keys(*n, "numerics",
               {"grid_points", "t_grid", "replicas", "quadrature_order",
                "n_max", "order_max", "engine", "charges", "charge_class",
                "dipole_gamma", "start_scale", "samples", "mcmc"});
    c.grid_points =
        static_cast<int>(opt_integer(*n, "numerics", "grid_points", 256));
    if (c.grid_points < 2 || c.grid_points > 8192)
      throw ConfigError("numerics.grid_points out of range [2, 8192]");
    if (const json* t = find(*n, "t_grid")) {
      c.t_grid = number_list(*t, "numerics.t_grid");
      if (c.t_grid.empty())
        throw ConfigError("numerics.t_grid must not be empty");
      for (size_t i = 0; i < c.t_grid.size(); i++) {
        if (!(c.t_grid[i] >= 0.0) || !std::isfinite(c.t_grid[i]))
          throw ConfigError("numerics.t_grid entries must be >= 0");
        if (i > 0 && !(c.t_grid[i] > c.t_grid[i - 1]))
          throw ConfigError("numerics.t_grid must increase strictly");
      }
    }
    long long reps = opt_integer(*n, "numerics", "replicas", 100000);
    if (reps < 1 || reps > 100000000)
      throw ConfigError("numerics.replicas out of range [1, 1e8]");
    c.replicas = static_cast<size_t>(reps);
    c.quadrature_order =
        static_cast<int>(opt_integer(*n, "numerics", "quadrature_order", 8));
    if (c.quadrature_order < 2 || c.quadrature_order > 64)
      throw ConfigError("numerics.quadrature_order out of range [2, 64]");
    c.n_max = static_cast<int>(opt_integer(*n, "numerics", "n_max", 8));
    if (c.n_max < 0 || c.n_max > 64)
      throw ConfigError("numerics.n_max out of range [0, 64]");
    c.order_max = static_cast<int>(opt_integer(*n, "numerics", "order_max", 2));
    if (c.order_max < 1 || c.order_max > 64)
      throw ConfigError("numerics.order_max out of range [1, 64]");
    c.engine = opt_string(*n, "numerics", "engine", "resolved");
    if (c.engine != "resolved" && c.engine != "tensor")
      throw ConfigError("numerics.engine must be resolved or tensor");
    c.charges = static_cast<int>(opt_integer(*n, "numerics", "charges", 5));
    if (c.charges < 1 || c.charges > 16)
      throw ConfigError("numerics.charges out of range [1, 16]");
    c.charge_class =
        opt_string(*n, "numerics", "charge_class", "unconditioned");
    if (c.charge_class != "neutral" && c.charge_class != "non-neutral" &&
        c.charge_class != "unconditioned" && c.charge_class != "dipole")
      throw ConfigError(
          "numerics.charge_class must be neutral, non-neutral, unconditioned, "
          "or dipole");
    c.dipole_gamma = opt_number(*n, "numerics", "dipole_gamma", 0.5);
    if (!(c.dipole_gamma > 0.0))
      throw ConfigError("numerics.dipole_gamma must be positive");
    c.start_scale = opt_number(*n, "numerics", "start_scale", 0.0);
    if (!(c.start_scale >= 0.0))
      throw ConfigError("numerics.start_scale must be >= 0");
    long long smp = opt_integer(*n, "numerics", "samples", 20000);
    if (smp < 1 || smp > 100000000)
      throw ConfigError("numerics.samples out of range [1, 1e8]");
    c.samples = static_cast<size_t>(smp);
    if (const json* mc = find(*n, "mcmc")) {
      check_keys(*mc, "numerics.mcmc",
                 {"burn_in", "thinning", "displace_sigma", "persist_samples"});
      long long bi = opt_integer(*mc, "numerics.mcmc", "burn_in", 10000);
      if (bi < 0) throw ConfigError("numerics.mcmc.burn_in must be >= 0");
      c.mcmc.burn_in = static_cast<size_t>(bi);
      long long th = opt_integer(*mc, "numerics.mcmc", "thinning", 10);
      if (th < 1) throw ConfigError("numerics.mcmc.thinning must be >= 1");
      c.mcmc.thinning = static_cast<size_t>(th);
      c.mcmc.displace_sigma =
          opt_number(*mc, "numerics.mcmc", "displace_sigma", 0.05);
      if (!(c.mcmc.displace_sigma > 0.0))
        throw ConfigError("numerics.mcmc.displace_sigma must be positive");
      if (const json* ps = find(*mc, "persist_samples")) {
        if (!ps->is_boolean())
          throw ConfigError("numerics.mcmc.persist_samples must be a boolean");
        c.mcmc.persist_samples = ps->get<bool>();
      }
    }
  }

  if (const json* e = find(j, "execution")) {
    check_keys(*e, "execution", {"master_seed", "workers"});
    long long seed = opt_integer(*e, "execution", "master_seed", 1);
    if (seed < 0) throw ConfigError("execution.master_seed must be >= 0");
    c.master_seed = static_cast<uint64_t>(seed);
    long long w = opt_integer(*e, "execution", "workers", 0);
    if (w < 0 || w > 256)
      throw ConfigError("execution.workers out of range [0, 256]");
    c.workers = static_cast<int>(w);
  }

  if (const json* o = find(j, "output")) {
    check_keys(*o, "output", {"directory", "formats"});
    c.out_dir = opt_string(*o, "output", "directory", "out");
    if (c.out_dir.empty())
      throw ConfigError("output.directory must not be empty");
    if (const json* f = find(*o, "formats")) {
      if (!f->is_array())
        throw ConfigError("output.formats must be an array");
      c.csv = false;
      c.json = false;
      for (const auto& fmt : *f) {
        if (!fmt.is_string())
          throw ConfigError("output.formats entries must be strings");
        std::string v = fmt.get<std::string>();
        if (v == "csv")
          c.csv = true;
        else if (v == "json")
          c.json = true;
        else
          throw ConfigError("output.formats entries must be csv or json");
      }
      if (!c.csv && !c.json)
        throw ConfigError("output.formats must contain csv or json");
    }
  }

  return c;
}

std::string canonical_config(const ExperimentConfig& c) {
  json j;  // json object keys serialize alphabetically, so this is canonical
  j["geometry"]["interval"] = {c.a, c.b};
  if (c.uniform_density) {
    j["geometry"]["density"] = "uniform";
  } else {
    j["geometry"]["density"]["x"] = c.density_x;
    j["geometry"]["density"]["g"] = c.density_g;
  }
  j["seed_kernel"]["name"] = c.seed.name();
  j["model"]["beta"] = c.beta;
  if (c.activity_gas) j["model"]["alpha_gas"] = *c.activity_gas;
  j["model"]["test_function"]["kind"] = c.theta.kind;
  if (c.theta.kind == "sine" || c.theta.kind == "constant") {
    j["model"]["test_function"]["amplitude"] = c.theta.amplitude;
    j["model"]["test_function"]["frequency"] = c.theta.frequency;
    j["model"]["test_function"]["nodes"] = c.theta.nodes;
  } else if (c.theta.kind == "tabulated") {
    j["model"]["test_function"]["x"] = c.theta.x;
    j["model"]["test_function"]["values"] = c.theta.values;
  }
  j["model"]["insertions"]["z"] = c.insertion_z;
  j["model"]["insertions"]["eta"] = c.insertion_eta;
  j["numerics"]["grid_points"] = c.grid_points;
  j["numerics"]["t_grid"] = c.t_grid;
  j["numerics"]["replicas"] = c.replicas;
  j["numerics"]["quadrature_order"] = c.quadrature_order;
  j["numerics"]["n_max"] = c.n_max;
  j["numerics"]["order_max"] = c.order_max;
  j["numerics"]["engine"] = c.engine;
  j["numerics"]["charges"] = c.charges;
  j["numerics"]["charge_class"] = c.charge_class;
  j["numerics"]["dipole_gamma"] = c.dipole_gamma;
  j["numerics"]["start_scale"] = c.start_scale;
  j["numerics"]["samples"] = c.samples;
  j["numerics"]["mcmc"]["burn_in"] = c.mcmc.burn_in;
  j["numerics"]["mcmc"]["thinning"] = c.mcmc.thinning;
  j["numerics"]["mcmc"]["displace_sigma"] = c.mcmc.displace_sigma;
  j["numerics"]["mcmc"]["persist_samples"] = c.mcmc.persist_samples;
  j["execution"]["master_seed"] = c.master_seed;
  return j.dump();
}

std::string config_hash(const ExperimentConfig& c) {
  std::string s = canonical_config(c);
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

const char* library_version() { return "0.1.0"; }

}  // namespace sglab
