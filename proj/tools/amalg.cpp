#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "amalg/acceptance.hpp"
#include "amalg/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Amalgamated free products: normal forms, Poincare series and integral kernels"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the tasks of an input document");
  std::string file;
  std::optional<int> max_degree;
  std::string format = "table";
  std::uint64_t seed = 1;
  run->add_option("file", file, "Input document ('-' for stdin)")->required();
  run->add_option("--max-degree", max_degree, "Override maxdeg");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "records"}));
  run->add_option("--seed", seed, "Seed for randomized checks");

  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  std::string level = "quick";
  self->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  self->add_option("--seed", seed, "Seed for the property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*run) {
    std::stringstream text;
    if (file == "-") {
      text << std::cin.rdbuf();
    } else {
      std::ifstream in(file);
      if (!in) {
        std::cerr << "error: cannot open " << file << '\n';
        return 2;
      }
      text << in.rdbuf();
    }
    amalg::cli::RunOptions opts;
    opts.max_degree = max_degree;
    opts.format = format == "records" ? amalg::cli::Format::records : amalg::cli::Format::table;
    const auto r = amalg::cli::run_document(text.str(), opts);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
  }

  const auto lvl = level == "full" ? amalg::acceptance::Level::full : amalg::acceptance::Level::quick;
  bool ok = true;
  amalg::acceptance::run_all(lvl, seed, [&](const amalg::acceptance::Result& r) {
    std::cout << amalg::acceptance::format(r) << std::endl;
    ok = ok && r.pass;
  });
  return ok ? 0 : 1;
}
