#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "klucas/errors.hpp"

int main(int argc, char** argv) {
  using namespace klucas;
  CLI::App app{"Certified computations for the k-Lucas power-sum equation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file mirroring the flags");
  cli::GlobalOptions g;
  app.add_option("--out-dir", g.out_dir, "Directory for result files and manifest.json")
      ->capture_default_str();
  cli::add_eval(app, g);
  cli::add_search(app, g);
  cli::add_reduce(app, g);
  cli::add_cf(app, g);
  cli::add_bounds(app, g);
  cli::add_roots(app, g);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConditionError& e) {
    std::cerr << "condition failure: " << e.what() << '\n';
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "precision failure: " << e.what() << '\n';
    return 3;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
