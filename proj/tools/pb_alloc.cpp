// pb-alloc: scenario runner, dataset validator and fixture generator.
//
// Exit codes: 0 success, 2 validation failure (bad input, configuration or
// command line), 3 compute failure on inputs that validated.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>

#include "pballoc/error.hpp"
#include "pballoc/io/checksum.hpp"
#include "pballoc/io/fixture.hpp"
#include "pballoc/io/loaders.hpp"
#include "pballoc/kernels.hpp"
#include "pballoc/report/pipeline.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCompute = 3;

using namespace pballoc;

int cmd_run(const std::string& scenario_path, const std::string& out, const std::string& perspective,
            const std::string& approaches, const std::string& boundaries) {
  auto config = report::load_scenario(scenario_path);
  if (!out.empty()) config.output_dir = out;
  if (!perspective.empty()) config.perspectives = report::parse_perspective_option(perspective);
  if (!approaches.empty()) config.approaches = report::parse_approach_list(approaches);
  if (!boundaries.empty()) config.boundaries = report::parse_boundary_list(boundaries);
  const auto written = report::run_scenario(config);
  for (const auto& p : written) std::cout << p.string() << "\n";
  return EXIT_SUCCESS;
}

int cmd_validate(const std::string& manifest_path) {
  const auto manifest = io::load_manifest(manifest_path);
  const auto data = io::load_dataset(manifest);
  const LeontiefModel model(data.table);  // certifies productivity
  std::cout << "manifest: " << manifest.source.string() << "\n"
            << "base year: " << manifest.base_year << "\n"
            << "table: " << data.table.n_regions() << " regions x " << data.table.n_sectors()
            << " sectors, productive\n";
  for (const auto& ext : data.extensions) std::cout << "extension: " << ext.name << " [" << ext.unit << "]\n";
  std::cout << "region stats: " << data.regions.size() << ", sector stats: " << data.sectors.size()
            << "\nwatersheds: " << data.watersheds.records.size()
            << ", ecoregions: " << data.ecoregions.records.size()
            << "\nhistory rows: " << data.history.size() << ", households: " << data.households.size()
            << ", cities: " << data.cities.size() << "\n";
  std::cout << "kernels: " << kernels::active().name << "\n";
  std::cout << "checksums verified: " << manifest.checksums.size() << "/" << manifest.files.size() << "\n";
  for (const auto& w : data.watersheds.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& w : data.ecoregions.warnings) std::cerr << "warning: " << w << "\n";
  return EXIT_SUCCESS;
}

int cmd_fixture(const std::string& spec_path, std::string out) {
  const std::string text = io::read_file(spec_path);
  const auto spec = io::parse_fixture_spec(text, spec_path);
  if (out.empty()) {
    const auto j = nlohmann::json::parse(text);
    out = j.value("out_dir", std::string("fixture"));
    if (std::filesystem::path(out).is_relative()) {
      out = (std::filesystem::path(spec_path).parent_path() / out).string();
    }
  }
  const auto manifest = io::write_fixture(io::generate_fixture(spec), out, spec.base_year);
  std::cout << manifest.string() << "\n";
  return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planetary-boundary budget allocation over EE-MRIO tables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pb-alloc 1.0");

  std::string scenario, out, perspective, approaches, boundaries;
  auto* run = app.add_subcommand("run", "Run a scenario and write report tables");
  run->add_option("--scenario", scenario, "Scenario JSON")->required();
  run->add_option("--out", out, "Output directory (overrides the scenario)");
  run->add_option("--perspective", perspective, "pba, cba or both");
  run->add_option("--approach", approaches, "Comma list of epc,gf,ap,va,ba");
  run->add_option("--boundary", boundaries, "Comma list of climate,water,biodiversity (or co2, ghg)");

  std::string manifest;
  auto* validate = app.add_subcommand("validate", "Load and check a dataset manifest");
  validate->add_option("--manifest", manifest, "Manifest JSON")->required();

  std::string spec, fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Generate a synthetic dataset");
  fixture->add_option("--spec", spec, "Fixture spec JSON")->required();
  fixture->add_option("--out", fixture_out, "Output directory (overrides the spec)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) return cmd_run(scenario, out, perspective, approaches, boundaries);
    if (*validate) return cmd_validate(manifest);
    if (*fixture) return cmd_fixture(spec, fixture_out);
  } catch (const Error& e) {
    std::cerr << "pb-alloc: " << e.what() << "\n";
    return e.is_validation() ? kExitValidation : kExitCompute;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "pb-alloc: parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "pb-alloc: " << e.what() << "\n";
    return kExitCompute;
  }
  return kExitValidation;
}
