#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "qav/cli/golden.hpp"

namespace {

const std::map<std::string, std::string> kHelp = {
    {"toroidal", "decide whether C^n / Gamma is a toroidal group"},
    {"max-cx", "maximal complex subspace of the real span and its lattice"},
    {"closure", "closure of a complex subgroup (default: the maximal complex one)"},
    {"subgroup", "lattice and periods of a declared complex subspace"},
    {"line-intersect", "lattice on one complex line, or a sweep over a height box"},
    {"subtori", "candidate toroidal subgroups spanned by short lattice vectors"},
    {"simple-cert", "height-bounded geometric simplicity certificate"},
    {"decompose", "split into simple factors along a Riemann form"},
    {"endo", "injectivity and inverse of an endomorphism, or enumerate small ones"},
    {"isogeny-order", "one complement step and the index of Gamma_1 + Gamma_2"},
};

int emit(const qav::cli::Outcome& o, const std::string& out_path) {
  const std::string text = qav::cli::dump(o.report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    qav::cli::write_file(out_path, text);
  }
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for toroidal groups and quasi-abelian varieties"};
  app.require_subcommand(1);

  qav::cli::Options opt;
  std::string file, out_path;
  for (const auto& name : qav::cli::command_names()) {
    auto* sub = app.add_subcommand(name, kHelp.at(name));
    sub->add_option("file", file, "input .tor document")->required();
    sub->add_option("--matrix", opt.matrix, "period matrix name");
    sub->add_option("--form", opt.form, "Hermitian form name");
    sub->add_option("--witness", opt.witness, "witness point name");
    sub->add_option("--bounds", opt.bounds, "symbol interval name");
    sub->add_option("--subspace", opt.subspace, "subspace name");
    sub->add_option("--vector", opt.vector, "direction vector name");
    sub->add_option("--intmatrix", opt.intmatrix, "rational representation name");
    sub->add_option("--compare", opt.compare, "reference period matrix for max-cx");
    sub->add_option("--height", opt.height, "height or entry bound");
    sub->add_option("--dim", opt.dim, "complex dimension for subtori");
    sub->add_option("--out", out_path, "write the report to FILE");
  }

  std::string scenarios = "scenarios";
  bool update = false;
  auto* golden = app.add_subcommand("golden", "run the stored scenarios");
  golden->add_option("--scenarios", scenarios, "scenario directory");
  golden->add_flag("--update", update, "store outputs for scenarios without one");

  CLI11_PARSE(app, argc, argv);

  try {
    if (golden->parsed()) {
      const auto results = qav::cli::run_golden(scenarios, update);
      std::size_t failed = 0;
      for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        if (!r.passed) ++failed;
      }
      std::cout << results.size() - failed << "/" << results.size() << " scenarios passed\n";
      return failed == 0 ? 0 : 1;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    return emit(qav::cli::run_text(command, qav::cli::read_file(file), opt), out_path);
  } catch (const qav::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qav::cli::exit_code_for(e.kind());
  }
}
