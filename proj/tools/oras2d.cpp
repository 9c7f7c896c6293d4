#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "oras/experiment.hpp"

namespace {

const char* kUsage = R"(usage: oras2d <table1|table2|fig1|solve|describe> [options]

subcommands:
  table1    norms of error-operator powers, strip partition
  table2    norms of error-operator powers + GMRES count, checkerboard
  fig1      norm of E^s over a power range, checkerboard
  solve     plane-wave impedance problem via ORAS-preconditioned GMRES
  describe  print resolved mesh and cover layout, no solves

options:
  --k <real>              wavenumber, repeatable (defaults per subcommand)
  --n <count>             subdomains (strips, or per checkerboard side), repeatable
  --geometry <strip|checkerboard>
  --degree <1|2>          element degree (default 2)
  --mesh-constant <real>  constant in h ~ c*k^(-5/4) (default 1.3)
  --overlap <real>        strip: absolute width (default 1/6)
                          checkerboard: fraction of cell width (default 0.25)
  --powers <a..b|s>       powers s of the error operator (comma lists allowed)
  --gmres-tol <real>      relative residual tolerance (default 1e-6)
  --out <path>            CSV output file (default stdout)
  --seed <int>            power-iteration start vector seed (default 7)
  --config <path>         key=value file, same keys as flags; flags override
  --dump <path>           solve only: write solution as "x y re im" lines

CSV goes to --out or stdout; progress lines go to stderr.
)";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw key -> values; repeatable keys accumulate.
using RawOptions = std::map<std::string, std::vector<std::string>>;

bool is_repeatable(const std::string& key) { return key == "k" || key == "n"; }

void insert_option(RawOptions& opts, const std::string& key,
                   const std::string& value) {
  static const std::vector<std::string> known = {
      "k",      "n",         "geometry", "degree", "mesh-constant", "overlap",
      "powers", "gmres-tol", "out",      "seed",   "config",        "dump"};
  bool ok = false;
  for (const auto& name : known) ok = ok || name == key;
  if (!ok) throw UsageError("unknown option --" + key);
  if (is_repeatable(key)) {
    opts[key].push_back(value);
  } else {
    opts[key] = {value};
  }
}

RawOptions parse_flags(int argc, char** argv) {
  RawOptions opts;
  for (int i = 2; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind("--", 0) != 0) {
      throw UsageError("unexpected argument '" + arg + "'");
    }
    arg = arg.substr(2);
    const auto eq = arg.find('=');
    if (eq != std::string::npos) {
      insert_option(opts, arg.substr(0, eq), arg.substr(eq + 1));
    } else {
      if (i + 1 >= argc) throw UsageError("option --" + arg + " needs a value");
      insert_option(opts, arg, argv[++i]);
    }
  }
  return opts;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

RawOptions parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  RawOptions opts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) +
                       ": expected key=value");
    }
    insert_option(opts, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return opts;
}

// Flags override the config file; repeatable keys are replaced wholesale.
RawOptions merge(RawOptions from_file, const RawOptions& from_flags) {
  for (const auto& [key, values] : from_flags) from_file[key] = values;
  return from_file;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("option " + key + ": '" + text + "' is not a number");
  }
}

int parse_int(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("option " + key + ": '" + text + "' is not an integer");
  }
}

void parse_powers(const std::string& text, std::vector<int>& out) {
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = trim(text.substr(start, comma - start));
    if (!item.empty()) {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(parse_int("--powers", item));
      } else {
        const int a = parse_int("--powers", item.substr(0, dots));
        const int b = parse_int("--powers", item.substr(dots + 2));
        if (a > b) throw UsageError("option --powers: empty range " + item);
        for (int s = a; s <= b; ++s) out.push_back(s);
      }
    }
    start = comma + 1;
  }
}

struct SubcommandDefaults {
  oras::Geometry geometry;
  double k;
  int n;
};

SubcommandDefaults defaults_for(const std::string& cmd) {
  if (cmd == "table1") return {oras::Geometry::strip, 20.0, 2};
  if (cmd == "table2") return {oras::Geometry::checkerboard, 40.0, 2};
  if (cmd == "fig1") return {oras::Geometry::checkerboard, 40.0, 4};
  return {oras::Geometry::strip, 20.0, 2};  // solve, describe
}

oras::ExperimentConfig make_config(const std::string& cmd, const RawOptions& opts) {
  const SubcommandDefaults def = defaults_for(cmd);
  oras::ExperimentConfig cfg;
  cfg.geometry = def.geometry;
  for (const auto& [key, values] : opts) {
    const std::string& last = values.back();
    if (key == "k") {
      for (const auto& v : values) cfg.ks.push_back(parse_real("--k", v));
    } else if (key == "n") {
      for (const auto& v : values) cfg.ns.push_back(parse_int("--n", v));
    } else if (key == "geometry") {
      if (last == "strip") {
        cfg.geometry = oras::Geometry::strip;
      } else if (last == "checkerboard") {
        cfg.geometry = oras::Geometry::checkerboard;
      } else {
        throw UsageError("option --geometry: expected strip or checkerboard");
      }
    } else if (key == "degree") {
      cfg.degree = parse_int("--degree", last);
    } else if (key == "mesh-constant") {
      cfg.mesh_constant = parse_real("--mesh-constant", last);
    } else if (key == "overlap") {
      cfg.overlap = parse_real("--overlap", last);
    } else if (key == "powers") {
      parse_powers(last, cfg.powers);
    } else if (key == "gmres-tol") {
      cfg.gmres_tol = parse_real("--gmres-tol", last);
    } else if (key == "out") {
      cfg.output_path = last;
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned>(parse_int("--seed", last));
    }
    // "config" and "dump" are handled by the caller.
  }
  if (cfg.ks.empty()) cfg.ks.push_back(def.k);
  if (cfg.ns.empty()) cfg.ns.push_back(def.n);
  return cfg;
}

int run(int argc, char** argv) {
  if (argc < 2) throw UsageError("missing subcommand");
  const std::string cmd = argv[1];
  if (cmd == "-h" || cmd == "--help" || cmd == "help") {
    std::cout << kUsage;
    return 0;
  }
  if (cmd != "table1" && cmd != "table2" && cmd != "fig1" && cmd != "solve" &&
      cmd != "describe") {
    throw UsageError("unknown subcommand '" + cmd + "'");
  }

  RawOptions opts = parse_flags(argc, argv);
  if (auto it = opts.find("config"); it != opts.end()) {
    opts = merge(parse_config_file(it->second.back()), opts);
  }
  if (opts.count("dump") && cmd != "solve") {
    throw UsageError("--dump applies to the solve subcommand only");
  }
  const oras::ExperimentConfig cfg = make_config(cmd, opts);

  std::ofstream out_file;
  std::ostream* out = &std::cout;
  if (!cfg.output_path.empty()) {
    out_file.open(cfg.output_path);
    if (!out_file) throw std::runtime_error("cannot open output file '" +
                                            cfg.output_path + "'");
    out = &out_file;
  }

  if (cmd == "table1") {
    oras::run_table1(cfg, *out, std::cerr);
  } else if (cmd == "table2") {
    oras::run_table2(cfg, *out, std::cerr);
  } else if (cmd == "fig1") {
    oras::run_fig1(cfg, *out, std::cerr);
  } else if (cmd == "solve") {
    std::ofstream dump_file;
    std::ostream* dump = nullptr;
    if (auto it = opts.find("dump"); it != opts.end()) {
      dump_file.open(it->second.back());
      if (!dump_file) throw std::runtime_error("cannot open dump file");
      dump = &dump_file;
    }
    oras::run_solve(cfg, *out, std::cerr, dump);
  } else {
    oras::run_describe(cfg, *out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << kUsage;
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
