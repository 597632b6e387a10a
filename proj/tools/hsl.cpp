#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hsl/run.hpp"

namespace {

int write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) {
    std::cerr << "hsl: cannot write " << path << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hankel symbol lab: symbols of positive Hankel operators from Carleson measures"};
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string csv_dir;
  std::vector<std::string> overrides;
  bool timing = false;
  app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "seed for random sample pairs and trial fields (default 0)");
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");
  app.add_option("--csv", csv_dir, "directory for CSV curve data");
  app.add_option("--tol-override", overrides, "tolerance override key=value (repeatable)");
  app.add_flag("--timing", timing, "add wall_time to the report (breaks byte-identical output)");
  app.set_version_flag("--version", HSL_VERSION);
  CLI11_PARSE(app, argc, argv);

  hsl::RunOutput output;
  try {
    std::ifstream in(config_path);
    hsl::Json j;
    try {
      j = hsl::Json::parse(in);
    } catch (const hsl::Json::parse_error& e) {
      throw hsl::ConfigError("$", e.what());
    }
    if (seed) j["seed"] = *seed;
    hsl::RunConfig config = hsl::parse_config(j);
    for (const auto& o : overrides) hsl::apply_tolerance_override(config, o);
    output = hsl::run(config, {timing});
  } catch (const hsl::ConfigError& e) {
    std::cerr << "hsl: config error: " << e.what() << '\n';
    return 2;
  }

  const std::string text = output.report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else if (int rc = write_file(out_path, text); rc != 0) {
    return rc;
  }
  if (!csv_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(csv_dir, ec);
    for (const auto& [name, contents] : output.csv) {
      if (int rc = write_file(std::filesystem::path(csv_dir) / name, contents); rc != 0) return rc;
    }
  }
  return output.ok ? 0 : 1;
}
