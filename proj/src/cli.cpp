#include "gsqg/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gsqg/diagnostics.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/format.hpp"
#include "gsqg/kernels.hpp"
#include "gsqg/validation.hpp"

namespace fs = std::filesystem;

namespace gsqg::cli {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void report_error(std::ostream& err, const char* kind, const std::string& message) {
  io::Json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw IoError("failed writing " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

const char* mode_name(functional::Mode m) {
  return m == functional::Mode::corotating ? "corotating" : "travelling";
}

const char* rule_name(functional::SingularRule r) {
  return r == functional::SingularRule::corrected ? "corrected" : "plain";
}

io::Json record_diagnostics(const functional::PatchGeometry& family, const solver::BranchRecord& r, int nodes) {
  io::Json j;
  const auto curv = diagnostics::curvature_profile(family, r, nodes);
  const auto decay = diagnostics::spectral_decay(r.f);
  const auto patches = diagnostics::reconstruct(family, r, nodes);
  j["min_scaled_curvature"] = curv.min;
  j["max_curvature_deviation"] = curv.max_deviation;
  j["last_significant_mode"] = decay.last_significant_mode;
  j["tail_ratio"] = decay.tail_ratio ? io::Json(*decay.tail_ratio) : io::Json(nullptr);
  j["spectrally_resolved"] = decay.resolved;
  const bool crossing = diagnostics::has_intersections(patches);
  j["self_intersection"] = crossing;
  j["normal_velocity_residual"] =
      crossing ? io::Json(nullptr) : io::Json(diagnostics::normal_velocity_residual(family, r, nodes).residual);
  return j;
}

}  // namespace

std::vector<double> parse_schedule(const std::string& spec, bool geometric) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw DomainError("eps schedule '" + spec + "' must be start:stop:count");
  double a, b;
  long n;
  try {
    size_t pa, pb, pn;
    a = std::stod(parts[0], &pa);
    b = std::stod(parts[1], &pb);
    n = std::stol(parts[2], &pn);
    if (pa != parts[0].size() || pb != parts[1].size() || pn != parts[2].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw DomainError("eps schedule '" + spec + "' must be start:stop:count");
  }
  if (n < 1 || n > 100000) throw DomainError("eps schedule count must be in [1, 100000]");
  if (n > 1 && !(std::abs(b) > std::abs(a))) throw DomainError("eps schedule must increase in |eps|");
  if (geometric && !(a * b > 0.0)) throw DomainError("geometric eps schedule needs nonzero endpoints of one sign");
  std::vector<double> v(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = geometric ? a * std::pow(b / a, t) : a + (b - a) * t;
  }
  if (n > 1) v.back() = b;
  return v;
}

functional::PatchGeometry RunConfig::family() const {
  return mode == functional::Mode::corotating ? functional::PatchGeometry::corotating(alpha, d, m)
                                              : functional::PatchGeometry::travelling(alpha, d);
}

io::Json RunConfig::to_json() const {
  io::Json j;
  j["mode"] = mode_name(mode);
  j["alpha"] = alpha;
  j["d"] = d;
  if (mode == functional::Mode::corotating) j["m"] = m;
  j["eps"] = eps_spec;
  j["geometric"] = geometric;
  j["schedule"] = solver.schedule;
  j["J"] = solver.truncation;
  j["N"] = solver.quadrature.outer_nodes;
  j["M"] = solver.quadrature.inner_nodes;
  j["rule"] = rule_name(solver.quadrature.rule);
  j["tol"] = solver.tolerance;
  j["max_iter"] = solver.max_iterations;
  j["fd_step"] = solver.fd_step;
  j["out"] = out;
  return j;
}

int run_branch(const RunConfig& config, std::ostream& log, std::ostream& err) {
  try {
    const auto family = config.family();
    config.solver.validate();
    const fs::path dir(config.out);
    ensure_dir(dir);

    const auto branch = solver::continue_branch(family, config.solver);
    io::Json doc;
    doc["alpha"] = config.alpha;
    doc["d"] = config.d;
    doc["mode"] = mode_name(config.mode);
    if (config.mode == functional::Mode::corotating) doc["m"] = config.m;
    doc["ground_speed"] = family.ground_speed();
    doc["config"] = config.to_json();
    io::Json records = io::Json::array();
    const int nodes = config.solver.quadrature.outer_nodes;
    std::vector<double> eps, speed;
    for (size_t i = 0; i < branch.records.size(); ++i) {
      const auto& r = branch.records[i];
      io::Json jr = io::to_json(r);
      if (r.eps != 0.0) {
        jr["diagnostics"] = record_diagnostics(family, r, nodes);
        std::ostringstream csv;
        io::write_boundary_csv(csv, diagnostics::reconstruct(family, r, nodes));
        char name[32];
        std::snprintf(name, sizeof name, "patch_%03zu.csv", i);
        write_file(dir / name, csv.str());
        jr["boundary_file"] = name;
      }
      records.push_back(std::move(jr));
      eps.push_back(r.eps);
      speed.push_back(r.speed);
      log << "eps=" << format_double(r.eps) << " speed=" << format_double(r.speed) << " iters=" << r.iterations
          << " residual=" << format_double(r.residual) << '\n';
    }
    doc["records"] = std::move(records);
    try {
      const auto fit = diagnostics::exponent_fit(eps, speed, family.ground_speed());
      doc["exponent_fit"] = {{"exponent", fit.exponent}, {"log_prefactor", fit.log_prefactor},
                             {"points_used", fit.points_used}};
    } catch (const DomainError&) {
      doc["exponent_fit"] = nullptr;
    }
    doc["last_converged_eps"] = branch.last_converged_eps();
    if (branch.failure) {
      doc["failure"] = {{"eps", branch.failure->eps},
                        {"message", branch.failure->message},
                        {"residual_history", branch.failure->residual_history}};
    } else {
      doc["failure"] = nullptr;
    }
    write_file(dir / "branch.json", io::dump(doc));
    if (branch.failure) {
      report_error(err, "divergence", branch.failure->message);
      return kDivergence;
    }
    return kOk;
  } catch (const IoError& e) {
    report_error(err, "io", e.what());
    return kIoError;
  } catch (const DomainError& e) {
    report_error(err, "config", e.what());
    return kConfigError;
  }
}

namespace {

void apply_config_file(const std::string& path, RunConfig& c) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file " + path);
  io::Json j;
  try {
    j = io::Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file " + path + " is not valid JSON: " + e.what());
  }
  try {
    if (j.contains("mode")) {
      const auto m = j["mode"].get<std::string>();
      if (m == "corotating") c.mode = functional::Mode::corotating;
      else if (m == "travelling") c.mode = functional::Mode::travelling;
      else throw DomainError("config mode must be corotating or travelling");
    }
    if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
    if (j.contains("d")) c.d = j["d"].get<double>();
    if (j.contains("m")) c.m = j["m"].get<int>();
    if (j.contains("eps")) c.eps_spec = j["eps"].get<std::string>();
    if (j.contains("geometric")) c.geometric = j["geometric"].get<bool>();
    if (j.contains("J")) c.solver.truncation = j["J"].get<int>();
    if (j.contains("N")) c.solver.quadrature.outer_nodes = j["N"].get<int>();
    if (j.contains("M")) c.solver.quadrature.inner_nodes = j["M"].get<int>();
    if (j.contains("rule")) {
      const auto r = j["rule"].get<std::string>();
      if (r == "corrected") c.solver.quadrature.rule = functional::SingularRule::corrected;
      else if (r == "plain") c.solver.quadrature.rule = functional::SingularRule::plain;
      else throw DomainError("config rule must be corrected or plain");
    }
    if (j.contains("tol")) c.solver.tolerance = j["tol"].get<double>();
    if (j.contains("max_iter")) c.solver.max_iterations = j["max_iter"].get<int>();
    if (j.contains("fd_step")) c.solver.fd_step = j["fd_step"].get<double>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("config file field has the wrong type: ") + e.what());
  }
}

struct BranchOptions {
  std::string config_file;
  RunConfig cfg;
  CLI::Option* opts[12] = {};
};

void add_branch_options(CLI::App* sub, BranchOptions& o, bool corotating) {
  auto& c = o.cfg;
  int i = 0;
  sub->add_option("--config", o.config_file, "JSON file with run parameters (flags override it)");
  o.opts[i++] = sub->add_option("--alpha", c.alpha, "kernel exponent alpha in (0,2)");
  o.opts[i++] = sub->add_option("--d", c.d, "centre distance parameter d > 0");
  if (corotating) o.opts[i++] = sub->add_option("--m", c.m, "number of patches m >= 2");
  o.opts[i++] = sub->add_option("--eps", c.eps_spec, "eps schedule start:stop:count");
  o.opts[i++] = sub->add_flag("--geom", c.geometric, "geometric eps spacing");
  o.opts[i++] = sub->add_option("--J", c.solver.truncation, "Fourier truncation");
  o.opts[i++] = sub->add_option("--N", c.solver.quadrature.outer_nodes, "collocation grid size");
  o.opts[i++] = sub->add_option("--M", c.solver.quadrature.inner_nodes, "quadrature grid size");
  o.opts[i++] = sub->add_option("--tol", c.solver.tolerance, "Newton tolerance");
  o.opts[i++] = sub->add_option("--max-iter", c.solver.max_iterations, "Newton iteration cap");
  o.opts[i++] = sub->add_option("--out", c.out, "output directory");
}

// Config file first, then any flag given explicitly on the command line.
RunConfig resolve(const BranchOptions& o, functional::Mode mode) {
  RunConfig c;
  c.mode = mode;
  if (!o.config_file.empty()) {
    apply_config_file(o.config_file, c);
    c.mode = mode;
  }
  const RunConfig& f = o.cfg;
  for (CLI::Option* opt : o.opts) {
    if (!opt || opt->count() == 0) continue;
    const std::string n = opt->get_name();
    if (n == "--alpha") c.alpha = f.alpha;
    else if (n == "--d") c.d = f.d;
    else if (n == "--m") c.m = f.m;
    else if (n == "--eps") c.eps_spec = f.eps_spec;
    else if (n == "--geom") c.geometric = f.geometric;
    else if (n == "--J") c.solver.truncation = f.solver.truncation;
    else if (n == "--N") c.solver.quadrature.outer_nodes = f.solver.quadrature.outer_nodes;
    else if (n == "--M") c.solver.quadrature.inner_nodes = f.solver.quadrature.inner_nodes;
    else if (n == "--tol") c.solver.tolerance = f.solver.tolerance;
    else if (n == "--max-iter") c.solver.max_iterations = f.solver.max_iterations;
    else if (n == "--out") c.out = f.out;
  }
  c.solver.schedule = parse_schedule(c.eps_spec, c.geometric);
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady gSQG patch solutions by Newton continuation in the patch size"};
  app.require_subcommand(1);

  BranchOptions corot, trav;
  auto* c_cmd = app.add_subcommand("corotating", "m-fold co-rotating patches");
  add_branch_options(c_cmd, corot, true);
  auto* t_cmd = app.add_subcommand("travelling", "counter-rotating travelling pair");
  add_branch_options(t_cmd, trav, false);

  double m_alpha = 1.0;
  int jmax = 16;
  std::string m_out;
  auto* m_cmd = app.add_subcommand("multipliers", "tabulate beta_j and gamma_j as CSV");
  m_cmd->add_option("--alpha", m_alpha, "kernel exponent alpha in (0,2)");
  m_cmd->add_option("--jmax", jmax, "largest mode");
  m_cmd->add_option("--out", m_out, "output directory (stdout if omitted)");

  std::string v_out;
  auto* v_cmd = app.add_subcommand("validate", "run the acceptance checks and write a JSON report");
  v_cmd->add_option("--out", v_out, "output directory (stdout if omitted)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    report_error(err, "config", e.what());
    return kConfigError;
  }

  try {
    if (*c_cmd || *t_cmd) {
      const bool co = static_cast<bool>(*c_cmd);
      RunConfig cfg = resolve(co ? corot : trav, co ? functional::Mode::corotating : functional::Mode::travelling);
      return run_branch(cfg, out, err);
    }
    if (*m_cmd) {
      const kernels::MultiplierTable table(m_alpha, jmax);
      std::ostringstream csv;
      table.write_csv(csv);
      if (m_out.empty()) {
        out << csv.str();
      } else {
        ensure_dir(m_out);
        write_file(fs::path(m_out) / "multipliers.csv", csv.str());
      }
      return kOk;
    }
    if (*v_cmd) {
      validation::Options opts;
      opts.on_result = [&out](const validation::CriterionResult& r) { out << validation::format_line(r) << '\n'; };
      const auto results = validation::run_acceptance(opts);
      const std::string report = io::dump(validation::to_json(results));
      if (v_out.empty()) {
        out << report;
      } else {
        ensure_dir(v_out);
        write_file(fs::path(v_out) / "validation.json", report);
      }
      for (const auto& r : results) {
        if (!r.passed) return kValidationFailed;
      }
      return kOk;
    }
  } catch (const IoError& e) {
    report_error(err, "io", e.what());
    return kIoError;
  } catch (const DomainError& e) {
    report_error(err, "config", e.what());
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace gsqg::cli
