#include "bjaudit/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "bjaudit/audit.hpp"
#include "bjaudit/csv.hpp"
#include "bjaudit/errors.hpp"
#include "bjaudit/functionals.hpp"
#include "bjaudit/invgauss.hpp"
#include "bjaudit/json_out.hpp"
#include "bjaudit/measures.hpp"
#include "bjaudit/params.hpp"
#include "bjaudit/rearrange.hpp"
#include "bjaudit/spectral.hpp"

namespace bjaudit::cli {

double parse_number(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInf;
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw UsageError("not a number: '" + text + "'");
  return value;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  if (spec.find(':') == std::string::npos) {
    std::vector<double> out;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
    if (out.empty()) throw UsageError("empty grid");
    return out;
  }
  while (std::getline(ss, item, ':')) parts.push_back(item);
  const bool logarithmic = !parts.empty() && parts.front() == "log";
  if (logarithmic) parts.erase(parts.begin());
  if (parts.size() != 3) throw UsageError("grid must be lo:hi:n or log:lo:hi:n, got '" + spec + "'");
  const double lo = parse_number(parts[0]);
  const double hi = parse_number(parts[1]);
  const double n_real = parse_number(parts[2]);
  if (n_real < 1 || n_real != std::floor(n_real)) throw UsageError("grid point count must be a positive integer");
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) throw UsageError("grid needs finite lo <= hi");
  if (logarithmic && !(lo > 0.0)) throw UsageError("logarithmic grid needs lo > 0");
  const auto n = static_cast<int>(n_real);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out.push_back(logarithmic ? std::exp(std::log(lo) + frac * (std::log(hi) - std::log(lo))) : lo + frac * (hi - lo));
  }
  out.front() = lo;
  if (n > 1) out.back() = hi;
  return out;
}

namespace {

struct ParamFlags {
  std::string s, tau, theta, q;
  CLI::Option* s_opt = nullptr;
  CLI::Option* tau_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* q_opt = nullptr;

  void attach(CLI::App* app) {
    s_opt = app->add_option("--s", s, "smoothness s > 0");
    tau_opt = app->add_option("--tau", tau, "tau in (0, inf]");
    theta_opt = app->add_option("--theta", theta, "theta in (0,1)");
    q_opt = app->add_option("--q", q, "q in (0, inf]");
    for (auto* a : {s_opt, tau_opt}) {
      for (auto* b : {theta_opt, q_opt}) a->excludes(b);
    }
  }

  std::optional<ApproxParams> get() const {
    const bool st = s_opt->count() > 0 || tau_opt->count() > 0;
    const bool tq = theta_opt->count() > 0 || q_opt->count() > 0;
    if (st) {
      if (!s_opt->count() || !tau_opt->count()) throw UsageError("--s and --tau must be given together");
      return ApproxParams::from_s_tau(parse_number(s), parse_number(tau));
    }
    if (tq) {
      if (!theta_opt->count() || !q_opt->count()) throw UsageError("--theta and --q must be given together");
      return ApproxParams::from_theta_q(parse_number(theta), parse_number(q));
    }
    return std::nullopt;
  }

  ApproxParams require() const {
    auto p = get();
    if (!p) throw UsageError("parameters required: --s/--tau or --theta/--q");
    return *p;
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input '" + path + "'");
  return in;
}

AtomTable load_atoms(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_atom_csv(in);
  } catch (const UsageError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Json json_array(std::span<const double> xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

std::function<double(double)> spectral_function(const std::string& name) {
  static const std::map<std::string, std::function<double(double)>> table{
      {"identity", [](double x) { return x; }},
      {"abs", [](double x) { return std::abs(x); }},
      {"square", [](double x) { return x * x; }},
      {"cube", [](double x) { return x * x * x; }},
      {"exp", [](double x) { return std::exp(x); }},
      {"exp-neg", [](double x) { return std::exp(-x); }},
      {"step", [](double x) { return x > 0.0 ? 1.0 : 0.0; }},
  };
  const auto it = table.find(name);
  if (it == table.end()) throw UsageError("unknown spectral function '" + name + "'");
  return it->second;
}

void emit_kv_csv(std::ostream& out, const Json& j) {
  out << "key,value\n";
  for (const auto& [key, value] : j.items()) {
    out << key << ',';
    if (value.is_number_float()) {
      out << csv::format_double(value.get<double>());
    } else if (value.is_null()) {
      out << "";
    } else if (value.is_string()) {
      out << value.get<std::string>();
    } else {
      out << value.dump();
    }
    out << '\n';
  }
}

Json constants_json(const ApproxParams& p) {
  Json j = to_json(p);
  j["c_exact"] = c_exact(p);
  if (p.tau_infinite()) {
    j["n_algebraic"] = nullptr;
    j["n_integral"] = nullptr;
    j["c_big_table"] = c_big(p.theta(), p.q(), BigCVariant::table);
    j["c_big_consistency"] = c_big(p.theta(), p.q(), BigCVariant::consistency);
    j["abs_diff"] = std::abs(j["c_big_table"].get<double>() - j["c_big_consistency"].get<double>());
    j["c_from_n_literal"] = nullptr;
    j["c_from_n_corrected"] = nullptr;
    return j;
  }
  const auto r = constant_consistency_report(p.theta(), p.q());
  j["n_algebraic"] = r.n_algebraic;
  j["n_integral"] = r.n_integral;
  j["c_big_table"] = r.table_value;
  j["c_big_consistency"] = r.consistency_value;
  j["abs_diff"] = r.abs_diff;
  j["c_from_n_literal"] = r.c_from_n_literal;
  j["c_from_n_corrected"] = r.c_from_n_corrected;
  return j;
}

Json instance_json(const DiscreteMeasureSpace& sp, const SimpleFunction& f) {
  return Json{{"weights", json_array(sp.weights())}, {"magnitudes", json_array(f.magnitudes())}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rearrangements, E/K functionals and Bernstein-Jackson constant audits", "bjaudit"};
  app.require_subcommand(1);

  std::string format;
  std::string out_path;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "write output to PATH instead of stdout");

  // constants
  auto* constants = app.add_subcommand("constants", "print c_{s,tau}, both N factors and both C variants");
  ParamFlags constants_params;
  constants_params.attach(constants);

  // rearrange
  auto* rearrange = app.add_subcommand("rearrange", "atom CSV in, decreasing rearrangement step CSV out");
  std::string rearrange_input;
  rearrange->add_option("--input", rearrange_input, "atom_id,weight,magnitude CSV")->required();

  // quasinorm
  auto* quasinorm = app.add_subcommand("quasinorm", "Q_{s,tau} and L^p values of an atom CSV");
  std::string quasinorm_input;
  ParamFlags quasinorm_params;
  quasinorm->add_option("--input", quasinorm_input)->required();
  quasinorm_params.attach(quasinorm);

  // audit
  auto* audit = app.add_subcommand("audit", "audit one inequality on a grid");
  std::string audit_name, audit_provider = "paper", audit_variant = "paper", audit_input, audit_grid = "log:0.01:100:41";
  double audit_tol = kDefaultAbsTol;
  ParamFlags audit_params;
  audit->add_option("--name", audit_name)->required()->check(CLI::IsMember({"jackson", "bernstein-right", "weak-l1", "q2"}));
  audit->add_option("--provider", audit_provider, "paper, paper-with-factor, bigc-table, sharp, unit");
  audit->add_option("--variant", audit_variant, "weak-l1 constant: paper (2/pi) or safe (1)")
      ->check(CLI::IsMember({"paper", "safe"}));
  audit->add_option("--input", audit_input)->required();
  audit->add_option("--grid", audit_grid);
  audit->add_option("--abs-tol", audit_tol);
  audit_params.attach(audit);

  // search
  auto* search = app.add_subcommand("search", "counterexample search for Jackson's inequality");
  std::string search_provider = "paper-with-factor", search_generator = "random";
  int search_n_max = 12, search_draws = 1000, search_masses = 25;
  std::uint64_t search_seed = 0;
  ParamFlags search_params;
  search->add_option("--provider", search_provider);
  search->add_option("--generator", search_generator)->check(CLI::IsMember({"random", "indicator"}));
  search->add_option("--n-max", search_n_max)->check(CLI::Range(1, 20));
  search->add_option("--draws", search_draws)->check(CLI::NonNegativeNumber);
  search->add_option("--masses", search_masses)->check(CLI::NonNegativeNumber);
  search->add_option("--seed", search_seed);
  search_params.attach(search);

  // spectral
  auto* spectral = app.add_subcommand("spectral", "spectral measure of a Hermitian matrix and the weak-L1 bound");
  std::string spectral_matrix, spectral_psi, spectral_fn = "identity", spectral_variant = "paper",
                                             spectral_grid = "log:0.01:1:25";
  spectral->add_option("--matrix", spectral_matrix, "row,col,re,im CSV")->required();
  spectral->add_option("--psi", spectral_psi, "index,re,im CSV")->required();
  spectral->add_option("--function", spectral_fn, "identity, abs, square, cube, exp, exp-neg, step");
  spectral->add_option("--variant", spectral_variant)->check(CLI::IsMember({"paper", "safe"}));
  spectral->add_option("--grid", spectral_grid);

  // demo-invgauss
  auto* demo = app.add_subcommand("demo-invgauss", "inverse Gaussian density: rearrangement, E and Jackson bound");
  DemoConfig demo_cfg;
  std::string demo_grid = "0.01:11:1100", demo_fig2, demo_step, demo_meta;
  demo->add_option("--C", demo_cfg.density.amplitude);
  demo->add_option("--m", demo_cfg.density.mean);
  demo->add_option("--l", demo_cfg.density.shape);
  demo->add_option("--s", demo_cfg.s);
  demo->add_option("--tau", demo_cfg.tau);
  demo->add_option("--t-max", demo_cfg.t_max);
  demo->add_option("--n-cells", demo_cfg.n_cells)->check(CLI::PositiveNumber);
  demo->add_option("--grid", demo_grid);
  demo->add_option("--fig2-out", demo_fig2, "write t,f samples of the density");
  demo->add_option("--step-out", demo_step, "write the rearrangement as t_break,value");
  demo->add_option("--meta-out", demo_meta, "write the JSON metadata block");

  // trig
  auto* trig = app.add_subcommand("trig", "E(n,a) for trigonometric polynomial approximation in L^2(T)");
  std::string trig_input;
  long long trig_n_max = 0;
  trig->add_option("--input", trig_input, "k,re,im CSV")->required();
  trig->add_option("--n-max", trig_n_max, "largest n (default: max |k| + 1)");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> argv_store{"bjaudit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream buf;
  const auto fmt = [&](const char* fallback) { return format.empty() ? std::string(fallback) : format; };

  try {
    if (constants->parsed()) {
      const Json j = constants_json(constants_params.require());
      if (fmt("json") == "json") buf << dump_json(j);
      else emit_kv_csv(buf, j);
    } else if (rearrange->parsed()) {
      const auto table = load_atoms(rearrange_input);
      const auto sf = decreasing_rearrangement(table.function, table.space);
      if (fmt("csv") == "csv") write_step_csv(buf, sf);
      else buf << dump_json(Json{{"breaks", json_array(sf.breaks())}, {"values", json_array(sf.values())}});
    } else if (quasinorm->parsed()) {
      const auto table = load_atoms(quasinorm_input);
      const auto p = quasinorm_params.require();
      const auto sf = decreasing_rearrangement(table.function, table.space);
      Json j = to_json(p);
      j["quasinorm"] = approx_quasinorm(sf, p.s(), p.tau());
      j["lp_0"] = lp_norm(table.function, table.space, 0.0);
      j["lp_0.5"] = lp_norm(table.function, table.space, 0.5);
      j["lp_1"] = lp_norm(table.function, table.space, 1.0);
      j["lp_2"] = lp_norm(table.function, table.space, 2.0);
      j["lp_inf"] = lp_norm(table.function, table.space, kInf);
      if (fmt("json") == "json") buf << dump_json(j);
      else emit_kv_csv(buf, j);
    } else if (audit->parsed()) {
      const auto table = load_atoms(audit_input);
      const auto grid = parse_grid(audit_grid);
      AuditReport report;
      if (audit_name == "jackson") {
        report = audit_jackson(table.function, table.space, audit_params.require(), parse_provider(audit_provider), grid,
                               audit_tol);
      } else if (audit_name == "bernstein-right") {
        report = audit_bernstein_right(table.function, table.space, audit_params.require(), audit_tol);
      } else if (audit_name == "weak-l1") {
        report = audit_weak_l1(table.function, table.space,
                               audit_variant == "paper" ? WeakL1Variant::paper_2_over_pi : WeakL1Variant::safe_unit,
                               grid, audit_tol);
      } else {
        const auto p = audit_params.require();
        if (p.q() != 2.0) throw UsageError("audit q2 needs q = 2 (pass --theta and --q 2)");
        report = audit_q2(table.function, table.space, p.theta(), grid, audit_tol);
      }
      if (fmt("json") == "json") buf << dump_json(to_json(report));
      else write_report_csv(buf, report);
    } else if (search->parsed()) {
      const auto p = search_params.require();
      const auto provider = parse_provider(search_provider);
      const auto result = search_generator == "random"
                              ? counterexample_search(p, provider, RandomAtomsGenerator{search_n_max, search_seed, search_draws})
                              : counterexample_search(p, provider, IndicatorSweepGenerator{search_masses});
      if (fmt("json") == "json") {
        Json j;
        j["generator"] = search_generator;
        j["seed"] = search_seed;
        j["instances_evaluated"] = result.instances_evaluated;
        j["instance"] = result.worst.empty() ? Json(nullptr) : instance_json(result.space, result.function);
        j["report"] = result.worst.empty() ? Json(nullptr) : to_json(result.worst);
        buf << dump_json(j);
      } else {
        write_report_csv(buf, result.worst);
      }
    } else if (spectral->parsed()) {
      auto min = open_input(spectral_matrix);
      auto pin = open_input(spectral_psi);
      const auto model = spectral_measure(read_matrix_csv(min), read_vector_csv(pin));
      const auto g = spectral_function(spectral_fn);
      const auto report = audit_spectral_bound(
          model, g, spectral_variant == "paper" ? WeakL1Variant::paper_2_over_pi : WeakL1Variant::safe_unit,
          parse_grid(spectral_grid));
      if (fmt("json") == "json") {
        Json j;
        j["function"] = spectral_fn;
        j["eigenvalues"] = json_array(model.eigenvalues);
        j["weights"] = json_array(model.weights);
        j["report"] = to_json(report);
        buf << dump_json(j);
      } else {
        write_report_csv(buf, report);
      }
    } else if (demo->parsed()) {
      demo_cfg.u_grid = parse_grid(demo_grid);
      const auto result = demo_pipeline(demo_cfg);
      Json meta;
      meta["C"] = demo_cfg.density.amplitude;
      meta["m"] = demo_cfg.density.mean;
      meta["l"] = demo_cfg.density.shape;
      meta["s"] = demo_cfg.s;
      meta["tau"] = demo_cfg.tau;
      meta["t_max"] = demo_cfg.t_max;
      meta["n_cells"] = demo_cfg.n_cells;
      meta["c_s_tau"] = result.c_st;
      meta["quasinorm"] = result.quasinorm;
      meta["quasinorm_doubled_cells"] = result.quasinorm_refined;
      meta["quasinorm_rel_change"] = result.refinement_rel_change;
      meta["l1_norm"] = result.l1_norm;
      meta["l1_norm_doubled_cells"] = result.l1_norm_refined;
      meta["tail_rel_mass"] = result.tail_rel_mass;
      meta["support_mass"] = result.support_mass;
      meta["warnings"] = result.warnings;
      if (!demo_fig2.empty()) {
        std::ofstream f(demo_fig2);
        if (!f) throw UsageError("cannot open '" + demo_fig2 + "'");
        f << "t,f\n";
        for (std::size_t i = 0; i < result.sample_t.size(); ++i) {
          f << csv::format_double(result.sample_t[i]) << ',' << csv::format_double(result.sample_f[i]) << '\n';
        }
      }
      if (!demo_step.empty()) {
        std::ofstream f(demo_step);
        if (!f) throw UsageError("cannot open '" + demo_step + "'");
        write_step_csv(f, result.rearrangement);
      }
      if (!demo_meta.empty()) {
        std::ofstream f(demo_meta);
        if (!f) throw UsageError("cannot open '" + demo_meta + "'");
        f << dump_json(meta);
      }
      if (fmt("csv") == "csv") {
        buf << "u,f_star,e_value,jackson_bound\n";
        for (const auto& r : result.rows) {
          buf << csv::format_double(r.u) << ',' << csv::format_double(r.f_star) << ',' << csv::format_double(r.e_value)
              << ',' << csv::format_double(r.jackson_bound) << '\n';
        }
      } else {
        Json rows = Json::array();
        for (const auto& r : result.rows) {
          rows.push_back(Json{{"u", r.u}, {"f_star", r.f_star}, {"e_value", r.e_value}, {"jackson_bound", r.jackson_bound}});
        }
        buf << dump_json(Json{{"metadata", meta}, {"rows", rows}});
      }
    } else if (trig->parsed()) {
      auto in = open_input(trig_input);
      const auto coeffs = read_trig_csv(in);
      long long n_max = trig_n_max;
      if (n_max <= 0) {
        for (const auto& c : coeffs) n_max = std::max(n_max, std::llabs(c.k) + 1);
        n_max = std::max(n_max, 1LL);
      }
      if (fmt("csv") == "csv") {
        buf << "n,e_value\n";
        for (long long n = 1; n <= n_max; ++n) buf << n << ',' << csv::format_double(e_functional_trig(coeffs, n)) << '\n';
      } else {
        Json rows = Json::array();
        for (long long n = 1; n <= n_max; ++n) rows.push_back(Json{{"n", n}, {"e_value", e_functional_trig(coeffs, n)}});
        buf << dump_json(rows);
      }
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedParameter& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << " (achieved tolerance " << e.achieved_tolerance() << ")\n";
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitNumeric;
  }

  if (out_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "usage error: cannot open output '" << out_path << "'\n";
      return kExitUsage;
    }
    f << buf.str();
  }
  return kExitOk;
}

}  // namespace bjaudit::cli
