#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nilgeo_tools/commands.hpp"

int main(int argc, char** argv) {
  nilgeo::cli::Command cmd;
  std::string output;

  CLI::App app{"Metric geometry of 2-step nilpotent Lie algebras"};
  app.set_version_flag("--version", std::string(nilgeo::cli::kToolVersion));
  app.add_option("--command", cmd.name, "Computation to run")
      ->required()
      ->check(CLI::IsMember(nilgeo::cli::command_names()));
  app.add_option("--input", cmd.input, "Algebra, data set or lattice JSON file");
  app.add_option("--catalog", cmd.catalog, "Built-in example id instead of --input");
  app.add_option("--output", output, "Write the report here instead of stdout");
  app.add_option("--lattice", cmd.lattice, "Lattice scaling JSON file (lattice command)");
  app.add_option("--builder", cmd.builder, "construct: from-data-set, cotangent or flip-center");
  app.add_option("--then", cmd.then, "construct: run this command on the constructed algebra");
  app.add_option("--t-start", cmd.t_start, "Geodesic grid start")->capture_default_str();
  app.add_option("--t-end", cmd.t_end, "Geodesic grid end")->capture_default_str();
  app.add_option("--t-step", cmd.t_step, "Geodesic grid step")->capture_default_str();
  app.add_option("--tolerance", cmd.tolerance, "Largest accepted geodesic residual")->capture_default_str();
  app.add_option("--z0", cmd.z0, "Geodesic initial z-velocity, splitting coordinates, e.g. 1 or 1/2,0");
  app.add_option("--v0", cmd.v0, "Geodesic initial v-velocity, splitting coordinates");
  app.add_option("--x", cmd.x, "First vector (curvature, sectional)");
  app.add_option("--y", cmd.y, "Second vector (curvature, sectional)");
  app.add_option("--z", cmd.z, "Third vector (curvature)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const nilgeo::cli::RunResult result = nilgeo::cli::run(cmd);
  if (output.empty()) {
    std::cout << result.artifact;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return 1;
    }
    out << result.artifact;
  }
  return result.exit_code;
}
