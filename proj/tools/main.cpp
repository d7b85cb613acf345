// qxp — compare quantum processes across platforms with randomized
// measurements. Subcommands: compare, monitor, scaling, qpt, serve.
//
// Exit codes: 0 success, 2 usage, 3 transport, 4 numerical integrity.

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qxp/cli/commands.hpp"
#include "qxp/platform/worker.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitTransport = 3;
constexpr int kExitNumerical = 4;

// Shared flag set. Resolution order: built-in defaults, then the --config
// file, then explicitly passed flags.
struct CommonFlags {
  int n = 1;
  int nu = 100;
  std::int64_t shots = 500;
  std::uint64_t seed = 0;
  std::string design = "clifford24";
  std::string mode = "free";
  std::string channel;
  std::string out;
  std::string config_path;
  std::vector<std::string> platform_args;

  CLI::Option* o_n = nullptr;
  CLI::Option* o_nu = nullptr;
  CLI::Option* o_shots = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_design = nullptr;
  CLI::Option* o_mode = nullptr;
  CLI::Option* o_channel = nullptr;
  CLI::Option* o_out = nullptr;

  void add_to(CLI::App* cmd) {
    o_n = cmd->add_option("--n", n, "register qubit count");
    o_nu = cmd->add_option("--nu", nu, "randomized layer pairs per run");
    o_shots = cmd->add_option("--shots", shots,
                              "repetitions per circuit (0 = exact mode)");
    o_seed = cmd->add_option("--seed", seed, "master seed for every stream");
    o_design =
        cmd->add_option("--design", design, "unitary ensemble")
            ->check(CLI::IsMember({"clifford24", "pauli", "haar"}));
    o_mode = cmd->add_option("--mode", mode, "protocol mode")
                 ->check(CLI::IsMember({"free", "assisted"}));
    o_channel = cmd->add_option("--channel", channel,
                                "channel spec (see README for the grammar)");
    o_out = cmd->add_option("--out", out, "output directory");
    cmd->add_option("--config", config_path,
                    "JSON config file (flags override it)");
  }

  qxp::ExperimentConfig resolve() const {
    qxp::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = qxp::load_config(config_path);
    if (o_n->count() > 0) cfg.n = n;
    if (o_nu->count() > 0) cfg.draws = nu;
    if (o_shots->count() > 0) cfg.shots = shots;
    if (o_seed->count() > 0) cfg.seed = seed;
    if (o_design->count() > 0) cfg.design = qxp::design_kind_from_name(design);
    if (o_mode->count() > 0) cfg.protocol = qxp::protocol_mode_from_name(mode);
    if (o_channel->count() > 0) cfg.channel_spec = channel;
    if (o_out->count() > 0) cfg.out_dir = out;
    if (!platform_args.empty()) {
      cfg.platforms.clear();
      for (const std::string& arg : platform_args) {
        cfg.platforms.push_back(qxp::parse_platform_arg(arg));
      }
    }
    cfg.validate();
    return cfg;
  }
};

void print_matrix(const qxp::PerfMatrix& m) {
  std::printf("%-14s", "");
  for (const std::string& label : m.labels) {
    std::printf(" %14s", label.c_str());
  }
  std::printf("\n");
  for (Eigen::Index i = 0; i < m.f_max.rows(); ++i) {
    std::printf("%-14s", m.labels[static_cast<std::size_t>(i)].c_str());
    for (Eigen::Index j = 0; j < m.f_max.cols(); ++j) {
      std::printf(" %6.4f±%-6.4f", m.f_max(i, j), m.std_err(i, j));
    }
    std::printf("\n");
  }
}

void print_files(const std::vector<std::string>& files) {
  for (const std::string& f : files) std::printf("wrote %s\n", f.c_str());
}

int cmd_compare(const CommonFlags& flags) {
  const qxp::CompareOutcome out = qxp::run_compare(flags.resolve());
  print_matrix(out.matrix);
  print_files(out.files);
  if (!out.failed.empty()) {
    for (std::size_t i = 0; i < out.failed.size(); ++i) {
      std::fprintf(stderr, "platform \"%s\" failed: %s\n",
                   out.failed[i].c_str(), out.failure_notes[i].c_str());
    }
    std::fprintf(stderr, "results are partial\n");
    return kExitTransport;
  }
  return 0;
}

int cmd_monitor(const CommonFlags& flags, int days) {
  qxp::ExperimentConfig cfg = flags.resolve();
  if (cfg.platforms.empty()) {
    if (cfg.channel_spec.empty()) {
      throw qxp::UsageError(
          "monitor needs labeled time points (label=<spec>) or --days with "
          "--channel");
    }
    for (int d = 1; d <= days; ++d) {
      qxp::PlatformDescriptor desc;
      desc.label = "day-" + std::to_string(d);
      desc.channel_spec = cfg.channel_spec;
      cfg.platforms.push_back(desc);
    }
  }
  const qxp::MonitorOutcome out = qxp::run_monitor(cfg);
  for (const std::string& id : out.created) {
    std::printf("collected session %s\n", id.c_str());
  }
  for (const std::string& id : out.ids) {
    bool fresh = false;
    for (const std::string& c : out.created) fresh = fresh || c == id;
    if (!fresh) std::printf("loaded session %s\n", id.c_str());
  }
  print_matrix(out.matrix);
  print_files(out.files);
  return 0;
}

int cmd_scaling_budget(const CommonFlags& flags, int points, int reps) {
  const qxp::ExperimentConfig cfg = flags.resolve();
  if (cfg.n != 1 && cfg.n != 2) {
    throw qxp::UsageError("budget sweeps run at n = 1 or n = 2");
  }
  const qxp::BudgetOutcome out = qxp::run_scaling_budget(cfg, points, reps);
  std::printf("%10s %8s %12s %14s\n", "draws", "shots", "budget",
              "mean|F-1|");
  for (const qxp::BudgetPoint& p : out.study.points) {
    std::printf("%10d %8lld %12.4g %14.6g\n", p.draws,
                static_cast<long long>(p.shots), p.budget, p.mean_abs_error);
  }
  std::printf("log-log slope %.4f (expected about -1)\n",
              out.study.loglog.slope);
  print_files({out.file});
  return 0;
}

int cmd_scaling_qubits(const CommonFlags& flags, int n_max, double target,
                       int reps, std::int64_t ceiling) {
  const qxp::ExperimentConfig cfg = flags.resolve();
  const qxp::QubitOutcome out =
      qxp::run_scaling_qubits(cfg, n_max, target, reps, ceiling);
  std::printf("%4s %10s %12s %14s %9s\n", "n", "shots", "total",
              "achieved", "censored");
  for (const qxp::QubitPoint& p : out.study.points) {
    std::printf("%4d %10lld %12.4g %14.6g %9s\n", p.n,
                static_cast<long long>(p.shots), p.total, p.achieved_error,
                p.censored ? "yes" : "no");
  }
  std::printf("fitted exponent b = %.4f in total ~ 2^(b n)\n",
              out.study.fit.slope);
  print_files({out.file});
  return 0;
}

int cmd_qpt(const CommonFlags& flags, bool enumerate) {
  const qxp::QptOutcome out = qxp::run_qpt(flags.resolve(), enumerate);
  std::printf("reconstructed process state on %d qubits\n",
              out.result.qubits);
  std::printf("trace               %.12f\n", out.result.trace);
  std::printf("hermiticity residue %.3e\n", out.result.hermiticity_residue);
  std::printf("min eigenvalue      %.6f\n", out.result.min_eigenvalue);
  if (out.oracle_known) {
    std::printf("trace distance to the channel spec's state: %.6f\n",
                out.oracle_trace_distance);
  }
  print_files({out.file});
  return 0;
}

int cmd_serve(const CommonFlags& flags, const std::string& platform_arg,
              int port) {
  qxp::PlatformDescriptor desc = qxp::parse_platform_arg(platform_arg);
  if (!desc.host.empty()) {
    throw qxp::UsageError("serve needs label=<channel spec>, not an address");
  }
  if (flags.o_seed->count() > 0) desc.spec_seed = flags.seed;

  // Block termination signals before the server thread starts (it inherits
  // the mask), then wait for one and shut down in order.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  qxp::PlatformServer server(desc, port);
  server.start();
  std::printf("serving platform \"%s\" on 127.0.0.1:%d\n", desc.label.c_str(),
              server.port());
  std::fflush(stdout);

  int sig = 0;
  sigwait(&set, &sig);
  server.stop();
  std::printf("received %s; worker stopped\n",
              sig == SIGINT ? "interrupt" : "termination signal");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Compare quantum processes across platforms with randomized "
      "measurements"};
  app.require_subcommand(1);

  CommonFlags compare_flags;
  CLI::App* compare = app.add_subcommand(
      "compare", "pairwise max-fidelity matrix over two or more platforms");
  compare_flags.add_to(compare);
  compare->add_option("platforms", compare_flags.platform_args,
                      "label=<channel spec> or label=@host:port");

  CommonFlags monitor_flags;
  int monitor_days = 7;
  CLI::App* monitor = app.add_subcommand(
      "monitor", "compare immutable sessions across labeled time points");
  monitor_flags.add_to(monitor);
  monitor->add_option("points", monitor_flags.platform_args,
                      "label=<channel spec> per time point");
  monitor->add_option("--days", monitor_days,
                      "synthesize day-1..day-N points from --channel");

  CommonFlags scaling_flags;
  std::string scaling_mode;
  int scaling_points = 8;
  int scaling_reps = 5;
  int scaling_nmax = 4;
  double scaling_target = 0.05;
  std::int64_t scaling_ceiling = 1 << 15;
  CLI::App* scaling = app.add_subcommand(
      "scaling", "statistical-error scaling studies (budget or qubits)");
  scaling_flags.add_to(scaling);
  scaling
      ->add_option("study", scaling_mode,
                   "budget: error vs total measurements; qubits: minimal "
                   "budget vs register size")
      ->required()
      ->check(CLI::IsMember({"budget", "qubits"}));
  scaling->add_option("--points", scaling_points,
                      "budget points (draws double per point)");
  scaling->add_option("--reps", scaling_reps, "repetitions per point");
  scaling->add_option("--nmax", scaling_nmax, "largest register (qubits)");
  scaling->add_option("--target", scaling_target,
                      "error target for the qubit study");
  scaling->add_option("--ceiling", scaling_ceiling,
                      "per-circuit shot ceiling for the qubit study");

  CommonFlags qpt_flags;
  bool qpt_enumerate = false;
  CLI::App* qpt = app.add_subcommand(
      "qpt", "reconstruct one platform's process state from randomized "
             "measurements");
  qpt_flags.add_to(qpt);
  qpt->add_option("platform", qpt_flags.platform_args,
                  "label=<channel spec> or label=@host:port (at most one)");
  qpt->add_flag("--enumerate", qpt_enumerate,
                "cover every ensemble pair exactly instead of sampling "
                "(single-qubit local channels)");

  CommonFlags serve_flags;
  std::string serve_platform;
  int serve_port = 0;
  CLI::App* serve = app.add_subcommand(
      "serve", "run a TCP worker for one simulated platform");
  serve_flags.add_to(serve);
  serve->add_option("platform", serve_platform, "label=<channel spec>")
      ->required();
  serve->add_option("--port", serve_port, "TCP port (0 picks one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  const std::function<int()> body = [&]() -> int {
    if (compare->parsed()) return cmd_compare(compare_flags);
    if (monitor->parsed()) return cmd_monitor(monitor_flags, monitor_days);
    if (scaling->parsed()) {
      return scaling_mode == "budget"
                 ? cmd_scaling_budget(scaling_flags, scaling_points,
                                      scaling_reps)
                 : cmd_scaling_qubits(scaling_flags, scaling_nmax,
                                      scaling_target, scaling_reps,
                                      scaling_ceiling);
    }
    if (qpt->parsed()) return cmd_qpt(qpt_flags, qpt_enumerate);
    return cmd_serve(serve_flags, serve_platform, serve_port);
  };

  try {
    return body();
  } catch (const qxp::UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const qxp::TransportError& e) {
    std::fprintf(stderr, "transport error: %s\n", e.what());
    return kExitTransport;
  } catch (const qxp::DegenerateDataError& e) {
    std::fprintf(stderr, "degenerate data: %s\n", e.what());
    return kExitNumerical;
  } catch (const qxp::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
