#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "qtraj/kernels.hpp"
#include "qtraj/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"1D wavepacket propagation with quantum-trajectory analysis"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "propagate a scenario and write CSV output");
  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  std::vector<std::string> overrides;
  auto* config_opt = run->add_option("--config", config_path, "flat key = value config file");
  auto* preset_opt = run->add_option("--preset", preset_name, "scenario preset: free | eckart");
  run->add_option("--override", overrides, "key=value pairs applied after the preset/config");
  run->add_option("--out", out_dir, "output directory");
  config_opt->excludes(preset_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    qtraj::RunConfig config;
    if (!config_path.empty()) {
      config = qtraj::load_config(config_path);
    } else if (!preset_name.empty()) {
      config = qtraj::preset(preset_name);
    } else {
      std::cerr << "error: either --config or --preset is required\n";
      return 1;
    }
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --override expects key=value, got '" << kv << "'\n";
        return 1;
      }
      qtraj::apply_key(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!out_dir.empty()) config.out_dir = out_dir;
    qtraj::validate(config);

    std::cerr << "kernel backend: " << qtraj::kernels::backend_name() << "\n";
    const qtraj::RunResult result = qtraj::run_to_files(config);
    std::cerr << "T = " << result.report.transmission
              << "  R = " << result.report.reflection << "\n";
    std::cerr << "wrote " << config.out_dir << "/{fields.csv,trajectories.csv,report.txt}\n";
    return 0;
  } catch (const qtraj::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const qtraj::DivergenceError& e) {
    std::cerr << "numerical divergence: " << e.what() << "\n";
    return 2;
  } catch (const qtraj::TrajectoryEscape& e) {
    std::cerr << "numerical divergence: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
