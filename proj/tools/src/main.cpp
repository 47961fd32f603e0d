#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "config.hpp"
#include "tasks.hpp"
#include "weylkit/error.hpp"

namespace {

int env_workers() {
  const char* v = std::getenv("WEYLKIT_WORKERS");
  if (!v || !*v) return 1;
  try {
    return std::max(1, std::stoi(v));
  } catch (...) {
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace weylkit;
  CLI::App app{"weylkit: m-functions and spectral functions of symmetric systems"};
  std::string config_path, task, out_dir = ".", profile = "default";
  int workers = 0;
  app.add_option("--config", config_path, "job config (JSON)")->required();
  app.add_option("--task", task, "overrides the task in the config")
      ->check(CLI::IsMember(cli::task_names()));
  app.add_option("--workers", workers, "worker threads (default: WEYLKIT_WORKERS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--tol-profile", profile, "tolerance profile")->check(CLI::IsMember({"default", "strict"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  cli::JobConfig cfg;
  try {
    cfg = cli::load_config(config_path, profile == "strict" ? cli::TolProfile::Strict : cli::TolProfile::Default);
    if (!task.empty()) cfg.task = task;
    if (cfg.task.empty()) fail(Errc::ConfigError, "no task given");
    cfg.workers = workers > 0 ? workers : env_workers();
  } catch (const Error& e) {
    const bool config = e.code() == Errc::ConfigError || e.code() == Errc::ShapeMismatch;
    std::cerr << "error [" << e.id() << "]: " << e.what() << '\n';
    return config ? 2 : 3;
  }

  try {
    const auto summary = cli::run_task(cfg, out_dir);
    std::cout << summary.dump(2) << '\n';
  } catch (const Error& e) {
    std::cerr << "error [" << e.id() << "]: " << e.what() << '\n';
    return e.code() == Errc::ConfigError ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
