#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "qxp/channels/choi.hpp"
#include "qxp/channels/presets.hpp"
#include "qxp/cli/commands.hpp"
#include "qxp/cli/config.hpp"
#include "qxp/cli/scaling.hpp"
#include "qxp/core/linalg.hpp"
#include "qxp/platform/perf_matrix.hpp"
#include "qxp/platform/worker.hpp"

using namespace qxp;
namespace fs = std::filesystem;

namespace {

std::string scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A quick two-local-platform configuration for command tests.
ExperimentConfig small_compare_config(const std::string& out) {
  ExperimentConfig cfg;
  cfg.draws = 30;
  cfg.shots = 120;
  cfg.seed = 31;
  cfg.out_dir = out;
  PlatformDescriptor a;
  a.label = "ideal";
  a.channel_spec = "H";
  PlatformDescriptor b;
  b.label = "noisy";
  b.channel_spec = "depolarizing(0.1) * H";
  cfg.platforms = {a, b};
  return cfg;
}

}  // namespace

TEST_CASE("platform arguments parse a label=spec mini-grammar") {
  SUBCASE("local channel spec") {
    const PlatformDescriptor d = parse_platform_arg("dev=depolarizing(0.2) * H");
    CHECK(d.label == "dev");
    CHECK(d.channel_spec == "depolarizing(0.2) * H");
    CHECK(d.host.empty());
  }

  SUBCASE("remote address") {
    const PlatformDescriptor d = parse_platform_arg("hw=@worker.lan:4242");
    CHECK(d.label == "hw");
    CHECK(d.channel_spec.empty());
    CHECK(d.host == "worker.lan");
    CHECK(d.port == 4242);
  }

  SUBCASE("rejected forms") {
    CHECK_THROWS_AS(parse_platform_arg("no-equals-sign"), UsageError);
    CHECK_THROWS_AS(parse_platform_arg("=H"), UsageError);
    CHECK_THROWS_AS(parse_platform_arg("dev="), UsageError);
    CHECK_THROWS_AS(parse_platform_arg("hw=@hostonly"), UsageError);
    CHECK_THROWS_AS(parse_platform_arg("hw=@host:notaport"), UsageError);
    CHECK_THROWS_AS(parse_platform_arg("hw=@host:99999"), UsageError);
    CHECK_THROWS_AS(parse_platform_arg("hw=@host:0"), UsageError);
  }
}

TEST_CASE("experiment config round-trips through JSON and rejects typos") {
  ExperimentConfig cfg;
  cfg.n = 2;
  cfg.design = DesignKind::pauli_bases;
  cfg.protocol = ProtocolMode::ancilla_assisted;
  cfg.inputs = InputMode::sampled;
  cfg.draws = 250;
  cfg.shots = 0;
  cfg.seed = 987654321;
  cfg.channel_spec = "CNOT";
  PlatformDescriptor local;
  local.label = "sim";
  local.channel_spec = "CNOT";
  local.spec_seed = 5;
  PlatformDescriptor remote;
  remote.label = "hw";
  remote.host = "127.0.0.1";
  remote.port = 9000;
  cfg.platforms = {local, remote};
  cfg.out_dir = "results";

  const std::string text = config_to_json(cfg);
  const ExperimentConfig back = config_from_json(text);
  CHECK(back.n == cfg.n);
  CHECK(back.design == cfg.design);
  CHECK(back.protocol == cfg.protocol);
  CHECK(back.inputs == cfg.inputs);
  CHECK(back.draws == cfg.draws);
  CHECK(back.shots == cfg.shots);
  CHECK(back.seed == cfg.seed);
  CHECK(back.channel_spec == cfg.channel_spec);
  CHECK(back.out_dir == cfg.out_dir);
  REQUIRE(back.platforms.size() == 2);
  CHECK(back.platforms[0].label == "sim");
  CHECK(back.platforms[0].channel_spec == "CNOT");
  CHECK(back.platforms[0].spec_seed == 5);
  CHECK(back.platforms[1].host == "127.0.0.1");
  CHECK(back.platforms[1].port == 9000);
  CHECK(config_to_json(back) == text);

  SUBCASE("unknown keys fail loudly") {
    CHECK_THROWS_WITH_AS(config_from_json(R"({"drawz": 10})"),
                         doctest::Contains("unknown config key"), UsageError);
    CHECK_THROWS_AS(config_from_json("not json at all"), UsageError);
  }

  SUBCASE("file round-trip") {
    const std::string dir = scratch_dir("qxp-cli-config");
    const std::string path = dir + "/config.json";
    {
      std::ofstream out(path, std::ios::binary);
      out << text;
    }
    const ExperimentConfig loaded = load_config(path);
    CHECK(config_to_json(loaded) == text);
    CHECK_THROWS_AS(load_config(dir + "/absent.json"), UsageError);
  }

  SUBCASE("validate catches out-of-range values") {
    ExperimentConfig bad = cfg;
    bad.draws = 0;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.shots = -1;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.n = 0;
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.platforms[1].label = "sim";  // duplicate
    CHECK_THROWS_AS(bad.validate(), UsageError);
    bad = cfg;
    bad.platforms[0].channel_spec.clear();  // neither spec nor address
    CHECK_THROWS_AS(bad.validate(), UsageError);
  }
}

TEST_CASE("collection plans derive deterministic run tags from the seed") {
  ExperimentConfig cfg;
  cfg.seed = 77;
  const RunPlan p = plan_of(cfg, "left");
  CHECK(p.timestamp == run_tag(77));
  CHECK(p.platform == "left");
  CHECK(p.seed == 77);
  CHECK(run_tag(77) == run_tag(77));
  CHECK(run_tag(77) != run_tag(78));
}

TEST_CASE("line fits recover exact coefficients and reject bad input") {
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y = {-1.0, -3.0, -5.0, -7.0};
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), UsageError);
  CHECK_THROWS_AS(fit_line({1.0, 2.0}, {1.0}), UsageError);
  CHECK_THROWS_AS(fit_line({2.0, 2.0, 2.0}, {1.0, 2.0, 3.0}),
                  DegenerateDataError);
}

TEST_CASE("budget grids double shots at fixed draws") {
  const auto grid = default_budget_grid(4, 25, 16);
  REQUIRE(grid.size() == 4);
  for (const auto& [draws, shots] : grid) CHECK(draws == 25);
  CHECK(grid[0].second == 16);
  CHECK(grid[1].second == 32);
  CHECK(grid[3].second == 128);
  CHECK_THROWS_AS(default_budget_grid(1, 25, 16), UsageError);
  CHECK_THROWS_AS(default_budget_grid(4, 0, 16), UsageError);
}

TEST_CASE("budget study error falls with budget on a self-comparison") {
  const KrausChannel h = parse_channel_spec("H", 1, 0);
  const BudgetStudy study =
      run_budget_study(h, default_budget_grid(4, 40, 16), 4, 2024);
  REQUIRE(study.points.size() == 4);
  for (const BudgetPoint& p : study.points) {
    CHECK(p.budget == doctest::Approx(2.0 * p.draws * p.shots));
    CHECK(p.mean_abs_error > 0.0);
  }
  CHECK(study.loglog.slope < -0.4);  // falls clearly, grid is short

  const std::string csv = budget_csv(study);
  CHECK(csv.find("draws,shots,budget,mean_abs_error") == 0);
  CHECK(csv.find("# loglog_slope,") != std::string::npos);
  const std::size_t lines =
      static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(lines == study.points.size() + 3);  // header + points + two comments
}

TEST_CASE("qubit study meets an easy error target and reports censoring") {
  const auto rotations = [](int n) { return local_rotation_process(n, 99); };

  SUBCASE("achievable target") {
    const QubitStudy study =
        run_qubit_study(rotations, 1, 2, 25, 0.08, 3, 4096, 515);
    REQUIRE(study.points.size() == 2);
    for (const QubitPoint& p : study.points) {
      CHECK_FALSE(p.censored);
      CHECK(p.achieved_error <= 0.08);
      CHECK(p.total == doctest::Approx(std::ldexp(
                           static_cast<double>(p.shots), p.n)));
    }
    // Bisection found a budget that meets the target; the point just below
    // would miss it, so the found budget is minimal up to bisection step.
  }

  SUBCASE("impossible target is censored at the ceiling") {
    const QubitStudy study =
        run_qubit_study(rotations, 1, 1, 6, 1e-7, 2, 64, 515);
    REQUIRE(study.points.size() == 1);
    CHECK(study.points[0].censored);
    CHECK(study.points[0].shots == 64);

    const std::string csv = qubit_csv(study);
    CHECK(csv.find("n,shots,total,achieved_error,censored") == 0);
    CHECK(csv.find(",1\n") != std::string::npos);  // censored flag column
  }
}

TEST_CASE("compare runs platforms, persists datasets, and flags failures") {
  const std::string out = scratch_dir("qxp-cli-compare");
  const ExperimentConfig cfg = small_compare_config(out);

  const CompareOutcome outcome = run_compare(cfg);
  CHECK(outcome.failed.empty());
  REQUIRE(outcome.matrix.labels.size() == 2);
  CHECK(outcome.matrix.f_max(0, 0) == 1.0);
  CHECK(outcome.matrix.f_max(1, 1) == 1.0);
  CHECK(outcome.matrix.std_err(0, 0) == 0.0);
  CHECK(outcome.matrix.f_max(0, 1) == outcome.matrix.f_max(1, 0));

  // The cross estimate should sit near the exact value for this pair.
  const double exact =
      exact_max_fidelity(choi_of_channel(parse_channel_spec("H", 1, 0)),
                         choi_of_channel(parse_channel_spec(
                             "depolarizing(0.1) * H", 1, 0)))
          .f_max;
  CHECK(std::abs(outcome.matrix.f_max(0, 1) - exact) <
        5.0 * outcome.matrix.std_err(0, 1) + 0.05);

  for (const char* name :
       {"datasets/ideal.json", "datasets/noisy.json", "matrix.csv",
        "matrix.json", "config.json"}) {
    CHECK(fs::exists(fs::path(out) / name));
  }

  // The matrix file round-trips to the in-memory result.
  const PerfMatrix m = matrix_from_csv(slurp(out + "/matrix.csv"));
  CHECK(m.labels == outcome.matrix.labels);
  CHECK(m.f_max(0, 1) == outcome.matrix.f_max(0, 1));

  // The config snapshot reproduces the run's configuration.
  const ExperimentConfig snap = load_config(out + "/config.json");
  CHECK(snap.seed == cfg.seed);
  CHECK(snap.draws == cfg.draws);
  REQUIRE(snap.platforms.size() == 2);

  SUBCASE("byte-identical on rerun") {
    const std::string before = slurp(out + "/datasets/ideal.json");
    run_compare(cfg);
    CHECK(slurp(out + "/datasets/ideal.json") == before);
  }

  SUBCASE("one unreachable platform is reported, the rest proceed") {
    ExperimentConfig partial = cfg;
    partial.out_dir = scratch_dir("qxp-cli-compare-partial");
    PlatformDescriptor dead;
    dead.label = "dead";
    dead.host = "127.0.0.1";
    dead.port = 1;  // nothing listens here
    partial.platforms.push_back(dead);

    const CompareOutcome p = run_compare(partial);
    REQUIRE(p.failed.size() == 1);
    CHECK(p.failed[0] == "dead");
    CHECK(p.matrix.labels.size() == 2);
    CHECK(fs::exists(fs::path(partial.out_dir) / "failures.json"));
    const std::string note = slurp(partial.out_dir + "/failures.json");
    CHECK(note.find("dead") != std::string::npos);
  }

  SUBCASE("no platform completing is a transport error") {
    ExperimentConfig dead_cfg = cfg;
    dead_cfg.out_dir = scratch_dir("qxp-cli-compare-dead");
    for (PlatformDescriptor& d : dead_cfg.platforms) {
      d.channel_spec.clear();
      d.host = "127.0.0.1";
      d.port = 1;
    }
    CHECK_THROWS_AS(run_compare(dead_cfg), TransportError);
  }

  SUBCASE("fewer than two platforms is a usage error") {
    ExperimentConfig one = cfg;
    one.platforms.pop_back();
    CHECK_THROWS_AS(run_compare(one), UsageError);
  }

  SUBCASE("labels must be file-safe") {
    ExperimentConfig bad = cfg;
    bad.platforms[0].label = "up/../root";
    CHECK_THROWS_AS(run_compare(bad), UsageError);
  }
}

TEST_CASE("monitor collects sessions once and reuses them afterwards") {
  const std::string out = scratch_dir("qxp-cli-monitor");
  ExperimentConfig cfg;
  cfg.draws = 25;
  cfg.shots = 100;
  cfg.seed = 808;
  cfg.out_dir = out;
  for (const char* day : {"day-1", "day-2", "day-3"}) {
    PlatformDescriptor d;
    d.label = day;
    d.channel_spec = "H";
    cfg.platforms.push_back(d);
  }

  const MonitorOutcome first = run_monitor(cfg);
  CHECK(first.created == std::vector<std::string>{"day-1", "day-2", "day-3"});
  CHECK(first.matrix.f_max(0, 0) == 1.0);
  for (const char* day : {"day-1", "day-2", "day-3"}) {
    CHECK(fs::exists(fs::path(out) / "sessions" / day / "config.json"));
    CHECK(fs::exists(fs::path(out) / "sessions" / day / "dataset.json"));
  }

  const MonitorOutcome second = run_monitor(cfg);
  CHECK(second.created.empty());
  CHECK(second.matrix.f_max == first.matrix.f_max);
  CHECK(second.matrix.std_err == first.matrix.std_err);

  SUBCASE("a changed seed conflicts with the stored sessions") {
    ExperimentConfig other = cfg;
    other.seed = 809;
    CHECK_THROWS_WITH_AS(run_monitor(other), doctest::Contains("seed"),
                         UsageError);
  }

  SUBCASE("a single time point is a usage error") {
    ExperimentConfig one = cfg;
    one.platforms.resize(1);
    CHECK_THROWS_AS(run_monitor(one), UsageError);
  }

  SUBCASE("per-point channel overrides model drift between time points") {
    ExperimentConfig drift = cfg;
    drift.out_dir = scratch_dir("qxp-cli-monitor-drift");
    drift.platforms[2].channel_spec = "depolarizing(0.3) * H";
    const MonitorOutcome m = run_monitor(drift);
    // The degraded day stands out against the stable pair.
    CHECK(m.matrix.f_max(0, 2) < m.matrix.f_max(0, 1) - 0.03);
  }
}

TEST_CASE("budget command writes the sweep next to its slope") {
  const std::string out = scratch_dir("qxp-cli-budget");
  ExperimentConfig cfg;
  cfg.draws = 40;
  cfg.shots = 16;
  cfg.seed = 6;
  cfg.out_dir = out;
  const BudgetOutcome outcome = run_scaling_budget(cfg, 4, 4);
  CHECK(outcome.study.points.size() == 4);
  CHECK(outcome.study.loglog.slope < 0.0);
  CHECK(fs::exists(fs::path(outcome.file)));
  CHECK(slurp(outcome.file) == budget_csv(outcome.study));

  SUBCASE("exact mode cannot trace a shot-noise curve") {
    ExperimentConfig exact = cfg;
    exact.shots = 0;
    CHECK_THROWS_AS(run_scaling_budget(exact, 4, 4), UsageError);
  }
}

TEST_CASE("qubit command fits the exponent over uncensored points") {
  const std::string out = scratch_dir("qxp-cli-qubits");
  ExperimentConfig cfg;
  cfg.n = 1;  // smallest register in the sweep
  cfg.draws = 25;
  cfg.seed = 15;
  cfg.out_dir = out;
  cfg.channel_spec = "ghz";
  const QubitOutcome outcome = run_scaling_qubits(cfg, 2, 0.08, 3, 4096);
  REQUIRE(outcome.study.points.size() == 2);
  CHECK(outcome.study.points[0].n == 1);
  CHECK(outcome.study.points[1].n == 2);
  CHECK(fs::exists(fs::path(outcome.file)));
  CHECK(slurp(outcome.file) == qubit_csv(outcome.study));
}

TEST_CASE("tomography command reconstructs local and enumerated channels") {
  SUBCASE("exact enumeration matches the oracle process state") {
    const std::string out = scratch_dir("qxp-cli-qpt-exact");
    ExperimentConfig cfg;
    cfg.out_dir = out;
    PlatformDescriptor d;
    d.label = "local";
    d.channel_spec = "H";
    cfg.platforms = {d};

    const QptOutcome outcome = run_qpt(cfg, /*enumerate=*/true);
    CHECK(outcome.result.trace == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(outcome.oracle_known);
    CHECK(outcome.oracle_trace_distance < 1e-9);
    CHECK(fs::exists(fs::path(outcome.file)));
    const std::string body = slurp(outcome.file);
    CHECK(body.find("\"entries\"") != std::string::npos);
    CHECK(body.find("\"min_eigenvalue\"") != std::string::npos);
    CHECK(body.find("\"hermiticity_residue\"") != std::string::npos);
  }

  SUBCASE("sampled mode reports diagnostics and the oracle distance") {
    const std::string out = scratch_dir("qxp-cli-qpt-sampled");
    ExperimentConfig cfg;
    cfg.draws = 150;
    cfg.shots = 200;
    cfg.seed = 12;
    cfg.out_dir = out;
    cfg.channel_spec = "depolarizing(0.2) * H";  // implicit local platform
    const QptOutcome outcome = run_qpt(cfg);
    CHECK(outcome.result.trace == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(outcome.oracle_known);
    CHECK(outcome.oracle_trace_distance < 0.5);
  }

  SUBCASE("enumeration needs the channel locally") {
    ExperimentConfig cfg;
    cfg.out_dir = scratch_dir("qxp-cli-qpt-remote");
    PlatformDescriptor d;
    d.label = "hw";
    d.host = "127.0.0.1";
    d.port = 9;
    cfg.platforms = {d};
    CHECK_THROWS_AS(run_qpt(cfg, /*enumerate=*/true), UsageError);
  }

  SUBCASE("two platforms are one too many") {
    ExperimentConfig cfg = small_compare_config(scratch_dir("qxp-cli-qpt-two"));
    CHECK_THROWS_AS(run_qpt(cfg), UsageError);
  }
}

TEST_CASE("compare treats a served worker like a local platform") {
  const std::string out = scratch_dir("qxp-cli-remote");
  PlatformDescriptor served;
  served.label = "hw";
  served.channel_spec = "dephasing(0.15) * H";
  PlatformServer server(served, 0);
  server.start();

  ExperimentConfig cfg;
  cfg.draws = 25;
  cfg.shots = 100;
  cfg.seed = 404;
  cfg.out_dir = out;
  PlatformDescriptor ideal;
  ideal.label = "ideal";
  ideal.channel_spec = "H";
  PlatformDescriptor remote;
  remote.label = "hw";
  remote.host = "127.0.0.1";
  remote.port = server.port();
  cfg.platforms = {ideal, remote};

  const CompareOutcome remote_run = run_compare(cfg);
  CHECK(remote_run.failed.empty());

  // The same run with the worker's channel simulated in-process writes a
  // byte-identical dataset for that label.
  ExperimentConfig local_cfg = cfg;
  local_cfg.out_dir = scratch_dir("qxp-cli-remote-local");
  local_cfg.platforms[1].host.clear();
  local_cfg.platforms[1].port = 0;
  local_cfg.platforms[1].channel_spec = served.channel_spec;
  const CompareOutcome local_run = run_compare(local_cfg);
  CHECK(local_run.failed.empty());

  CHECK(slurp(out + "/datasets/hw.json") ==
        slurp(local_cfg.out_dir + "/datasets/hw.json"));
  CHECK(remote_run.matrix.f_max(0, 1) == local_run.matrix.f_max(0, 1));

  server.stop();
}
