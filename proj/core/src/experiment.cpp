#include "accelflow/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "accelflow/flow_io.hpp"
#include "accelflow/metrics.hpp"
#include "accelflow/pgm_io.hpp"
#include "accelflow/stencils.hpp"
#include "accelflow/synthetic.hpp"

namespace accelflow {

const char* experiment_kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::convergence: return "convergence";
    case ExperimentKind::alpha_sweep: return "alpha_sweep";
    case ExperimentKind::size_sweep: return "size_sweep";
    case ExperimentKind::noise_sweep: return "noise_sweep";
  }
  return "?";
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
  if (name == "convergence") return ExperimentKind::convergence;
  if (name == "alpha_sweep") return ExperimentKind::alpha_sweep;
  if (name == "size_sweep") return ExperimentKind::size_sweep;
  if (name == "noise_sweep") return ExperimentKind::noise_sweep;
  throw std::invalid_argument("experiment spec: unknown kind '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

template <typename T, typename F>
std::string join(const std::vector<T>& v, F f) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += f(v[i]);
  }
  return out;
}

}  // namespace

ExperimentSpec ExperimentSpec::parse(std::istream& in) {
  ExperimentSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("experiment spec: line " + std::to_string(lineno) +
                                  " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "kind") {
        spec.kind = experiment_kind_from_name(value);
      } else if (key == "schemes") {
        spec.schemes.clear();
        for (const auto& s : split(value, ',')) spec.schemes.push_back(scheme_from_name(s));
      } else if (key == "width") {
        spec.width = std::stoi(value);
      } else if (key == "height") {
        spec.height = std::stoi(value);
      } else if (key == "square") {
        spec.square = std::stoi(value);
      } else if (key == "shift_x") {
        spec.shift_x = std::stoi(value);
      } else if (key == "shift_y") {
        spec.shift_y = std::stoi(value);
      } else if (key == "rect_w") {
        spec.rect_w = std::stoi(value);
      } else if (key == "rect_h") {
        spec.rect_h = std::stoi(value);
      } else if (key == "alpha") {
        spec.alpha = std::stod(value);
      } else if (key == "alphas") {
        spec.alphas.clear();
        for (const auto& s : split(value, ',')) spec.alphas.push_back(std::stod(s));
      } else if (key == "sizes") {
        spec.sizes.clear();
        for (const auto& s : split(value, ',')) spec.sizes.push_back(std::stoi(s));
      } else if (key == "noise_levels") {
        spec.noise_levels.clear();
        for (const auto& s : split(value, ',')) spec.noise_levels.push_back(std::stod(s));
      } else if (key == "seed") {
        spec.seed = std::stoull(value);
      } else if (key == "tol") {
        spec.tol = std::stod(value);
      } else if (key == "max_iters") {
        spec.max_iters = std::stoi(value);
      } else if (key == "safety") {
        spec.safety = std::stod(value);
      } else if (key == "p") {
        spec.p = std::stoi(value);
      } else if (key == "C") {
        spec.C = value == "auto" ? 0.0 : std::stod(value);
      } else if (key == "eps_visc") {
        spec.eps_visc = value == "auto" ? -1.0 : std::stod(value);
      } else {
        throw std::invalid_argument("experiment spec: unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(e.what()) + " (line " + std::to_string(lineno) +
                                  ")");
    }
  }
  return spec;
}

ExperimentSpec ExperimentSpec::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("experiment spec: cannot open '" + path + "'");
  return parse(in);
}

std::string ExperimentSpec::serialize() const {
  std::ostringstream out;
  out << "kind = " << experiment_kind_name(kind) << "\n";
  out << "schemes = " << join(schemes, [](Scheme s) { return std::string(scheme_name(s)); })
      << "\n";
  out << "width = " << width << "\n";
  out << "height = " << height << "\n";
  out << "square = " << square << "\n";
  out << "shift_x = " << shift_x << "\n";
  out << "shift_y = " << shift_y << "\n";
  out << "rect_w = " << rect_w << "\n";
  out << "rect_h = " << rect_h << "\n";
  out << "alpha = " << fmt(alpha) << "\n";
  out << "alphas = " << join(alphas, fmt) << "\n";
  out << "sizes = " << join(sizes, [](int v) { return std::to_string(v); }) << "\n";
  out << "noise_levels = " << join(noise_levels, fmt) << "\n";
  out << "seed = " << seed << "\n";
  out << "tol = " << fmt(tol) << "\n";
  out << "max_iters = " << max_iters << "\n";
  out << "safety = " << fmt(safety) << "\n";
  out << "p = " << p << "\n";
  if (C > 0)
    out << "C = " << fmt(C) << "\n";
  else
    out << "C = auto\n";
  if (eps_visc >= 0)
    out << "eps_visc = " << fmt(eps_visc) << "\n";
  else
    out << "eps_visc = auto\n";
  return out.str();
}

SolverConfig ExperimentSpec::solver_config(Scheme scheme, double alpha_value,
                                           const GridSpec& g) const {
  SolverConfig cfg;
  cfg.scheme = scheme;
  cfg.alpha = alpha_value;
  cfg.p = p;
  cfg.C = C > 0 ? C : effective_schedule_constant(cfg, g);
  cfg.safety = safety;
  cfg.tol = tol;
  cfg.max_iters = max_iters;
  if (eps_visc >= 0) {
    cfg.eps_visc = eps_visc;
  } else {
    const bool velocity_scheme =
        scheme == Scheme::agd || scheme == Scheme::agd_nodissip || scheme == Scheme::epdiff;
    cfg.eps_visc = velocity_scheme ? 0.05 : 0.0;
  }
  return cfg;
}

namespace {

struct Configuration {
  std::string label;        // file-name suffix, e.g. "_alpha4"
  ScalarField i0, i1;       // images handed to the solver (possibly noisy)
  ScalarField clean_i0, clean_i1;  // reconstruction reference
  std::optional<MapField> gt;
  double alpha = 0.0;
  int size = 0;
  double noise = 0.0;
};

void write_header(std::ofstream& out, const ExperimentSpec& spec, const Configuration& c,
                  Scheme scheme) {
  std::istringstream lines(spec.serialize());
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << "\n";
  out << "# run: scheme = " << scheme_name(scheme) << ", alpha = " << fmt(c.alpha)
      << ", size = " << c.size << ", noise = " << fmt(c.noise) << "\n";
}

std::string run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::converged: return "ok";
    case RunStatus::max_iters: return "max_iters";
    case RunStatus::aborted: return "aborted";
  }
  return "?";
}

}  // namespace

void run_experiment(const ExperimentSpec& spec, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  // Build the configuration list for this sweep.
  std::vector<Configuration> configs;
  const bool rect = spec.rect_w > 0 && spec.rect_h > 0;
  auto make_pair = [&](const GridSpec& g) -> Configuration {
    Configuration c;
    if (rect) {
      RectPair p = gen_rect_pair(g, spec.square, spec.rect_w, spec.rect_h, spec.shift_x);
      c.i0 = p.i0;
      c.i1 = p.i1;
    } else {
      SquarePair p = gen_square_pair(g, spec.square, spec.shift_x, spec.shift_y);
      c.i0 = p.i0;
      c.i1 = p.i1;
      c.gt = p.gt_flow;
    }
    c.clean_i0 = c.i0;
    c.clean_i1 = c.i1;
    c.size = g.width;
    return c;
  };

  switch (spec.kind) {
    case ExperimentKind::convergence: {
      Configuration c = make_pair(GridSpec(spec.width, spec.height));
      c.alpha = spec.alpha;
      configs.push_back(std::move(c));
      break;
    }
    case ExperimentKind::alpha_sweep: {
      for (double a : spec.alphas) {
        Configuration c = make_pair(GridSpec(spec.width, spec.height));
        c.alpha = a;
        c.label = "_alpha" + fmt(a);
        configs.push_back(std::move(c));
      }
      break;
    }
    case ExperimentKind::size_sweep: {
      for (int s : spec.sizes) {
        Configuration c = make_pair(GridSpec(s, s));
        c.alpha = spec.alpha;
        c.label = "_size" + std::to_string(s);
        configs.push_back(std::move(c));
      }
      break;
    }
    case ExperimentKind::noise_sweep: {
      SeededRng rng(spec.seed);
      for (double level : spec.noise_levels) {
        Configuration c = make_pair(GridSpec(spec.width, spec.height));
        c.alpha = spec.alpha;
        c.noise = level;
        c.label = "_noise" + fmt(level);
        c.i0 = add_salt_pepper(c.clean_i0, level, rng.next_seed());
        c.i1 = add_salt_pepper(c.clean_i1, level, rng.next_seed());
        configs.push_back(std::move(c));
      }
      break;
    }
  }

  std::ofstream summary(fs::path(out_dir) / "summary.csv");
  if (!summary) throw std::runtime_error("run_experiment: cannot write summary.csv");
  {
    std::istringstream lines(spec.serialize());
    std::string line;
    while (std::getline(lines, line)) summary << "# " << line << "\n";
  }
  summary << "scheme,alpha,size,noise,iters,converged,final_potential,data_term,"
             "endpoint_error,recon_rms,status\n";

  for (const Configuration& c : configs) {
    for (Scheme scheme : spec.schemes) {
      const SolverConfig cfg = spec.solver_config(scheme, c.alpha, c.i0.grid());
      const RunResult res = accelflow::run(c.i0, c.i1, cfg);
      const std::string stem = std::string(scheme_name(scheme)) + c.label;

      std::ofstream trace(fs::path(out_dir) / ("trace_" + stem + ".csv"));
      write_header(trace, spec, c, scheme);
      trace << "iter,t,potential,kinetic,total,dt,map_increment\n";
      trace.precision(17);
      for (const TraceRecord& r : res.trace) {
        trace << r.iter << "," << r.t << "," << r.potential << "," << r.kinetic << "," << r.total
              << "," << r.dt << "," << r.map_increment << "\n";
      }

      save_pgm(warp(c.clean_i1, res.state.phi),
               (fs::path(out_dir) / ("warped_" + stem + ".pgm")).string());
      save_flow(res.state.phi, (fs::path(out_dir) / ("flow_" + stem + ".dflo")).string());

      const ReconError rec = recon_error(c.clean_i0, c.clean_i1, res.state.phi);
      const double final_potential = res.trace.empty() ? 0.0 : res.trace.back().potential;
      summary.precision(17);
      summary << scheme_name(scheme) << "," << fmt(c.alpha) << "," << c.size << ","
              << fmt(c.noise) << "," << res.trace.size() << "," << (res.converged ? 1 : 0) << ","
              << final_potential << "," << rec.data_term << ",";
      if (c.gt) summary << endpoint_error(res.state.phi, *c.gt);
      summary << "," << rec.l2_norm << "," << run_status_name(res.status) << "\n";
    }
  }
}

}  // namespace accelflow
