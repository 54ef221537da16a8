#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "filicoh/io.hpp"
#include "filicoh/suite.hpp"
#include "filicoh/trivialize.hpp"

using namespace filicoh;

namespace {

struct Output {
  Json doc;
  int code = 0;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

Algebra read_algebra(const std::string& path) { return algebra_from_json(read_json(path)); }

bool semisimple(const Algebra& a) {
  for (const auto& b : blocks_of(a))
    if (!recognize_simple(a, b)) return false;
  return true;
}

Output cmd_simple(int n, const std::string& signature) {
  const std::vector<int> sig = signature.empty() ? std::vector<int>(static_cast<std::size_t>(n) + 1, 1) : parse_signature(signature);
  return {to_json(simple_algebra(n, sig))};
}

Output cmd_sum(const std::vector<std::string>& files) {
  std::vector<Algebra> parts;
  for (const auto& f : files) parts.push_back(read_algebra(f));
  return {to_json(direct_sum(parts))};
}

Output cmd_leibniz(const std::string& file) { return {to_json(associated_leibniz_algebra(read_algebra(file)))}; }

Output cmd_check_fi(const std::string& file) {
  const FIReport r = check_fi(read_algebra(file));
  return {to_json(r), r.passed ? 0 : 1};
}

Output cmd_killing(const std::string& mode, const std::string& file) {
  const Algebra a = read_algebra(file);
  if (mode == "gram") return {to_json(wedge_gram_matrix(a))};
  return {to_json(kasymov_nondegenerate(a))};
}

Output cmd_cohomology(const std::string& action, int degree, const std::string& file) {
  const Algebra a = read_algebra(file);
  const CohomologyDims d = cohomology_dims(*make_complex(a, parse_action(action)), degree);
  const bool must_vanish = degree == 1 && semisimple(a);
  return {to_json(d), must_vanish && d.dim_h != 0 ? 1 : 0};
}

Output cmd_extend(const std::string& file, const std::string& cocycle, bool trivialize) {
  const Algebra a = read_algebra(file);
  const Cochain c = cochain_from_json(read_json(cocycle), a);
  const CentralExtension ext = central_extend(a, c);
  Output out{Json::object()};
  out.doc["algebra"] = to_json(ext.extended);
  out.doc["fi"] = to_json(ext.fi);
  if (!ext.fi.passed) out.code = 1;
  if (trivialize && ext.fi.passed) {
    const Cochain beta = trivialize_semisimple(c);
    const ExtensionTrivialization t = trivialize_extension(ext, beta);
    out.doc["trivialization"] = {{"beta", to_json(beta)}, {"algebra", to_json(t.transformed)}, {"success", t.success}};
    if (!t.success) out.code = 1;
  }
  return out;
}

Output cmd_deform(const std::string& file, const std::string& cocycle, int order, bool trivialize) {
  const Algebra a = read_algebra(file);
  const Cochain c = cochain_from_json(read_json(cocycle), a);
  Output out{Json::object()};
  std::optional<Cochain> alpha2;
  if (order == 2) {
    if (!is_cocycle(c)) throw NotACocycle("the cochain is not a cocycle, so there is no first-order deformation");
    const ObstructionReport rep = obstruction_cocycle(a, c, true);
    out.doc["obstruction"] = {{"gamma", to_json(rep.gamma)}, {"closed", rep.gamma_closed}, {"extends", *rep.extends}};
    if (!rep.gamma_closed || !*rep.extends) out.code = 1;
    alpha2 = rep.alpha2;
  }
  const Deformation def = deform(a, c, order, alpha2);
  out.doc["deformation"] = to_json(def);
  Json residuals = Json::array();
  for (const auto& r : fi_residual_orders(def)) residuals.push_back(to_json(r));
  out.doc["residuals"] = residuals;
  if (!residuals[1]["passed"].get<bool>() || (order == 2 && alpha2 && !residuals[2]["passed"].get<bool>())) out.code = 1;
  if (trivialize && out.code == 0) {
    const Cochain beta = trivialize_semisimple(c);
    const DeformationTrivialization t = trivialize_deformation(def, beta);
    out.doc["trivialization"] = {{"beta", to_json(beta)}, {"residual", to_json(t.residual)}, {"success", t.success}};
    if (!t.success) out.code = 1;
  }
  return out;
}

Output cmd_suite(int max_n, std::uint64_t seed) {
  const SuiteOptions opts{max_n, seed};
  Output out{Json::object()};
  Json criteria = Json::array();
  bool all = true;
  for (const auto& r : run_whitehead_suite(opts)) {
    criteria.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  out.doc = {{"criteria", criteria}, {"max_n", max_n}, {"seed", seed}, {"passed", all}};
  out.code = all ? 0 : 1;
  return out;
}

void print_table(const Json& doc) {
  std::cout << "seed " << doc["seed"] << ", max-n " << doc["max_n"] << "\n";
  for (const auto& c : doc["criteria"])
    std::cout << std::setw(3) << c["id"].get<int>() << "  " << (c["passed"].get<bool>() ? "PASS" : "FAIL") << "  "
              << std::left << std::setw(40) << c["name"].get<std::string>() << std::right << c["detail"].get<std::string>()
              << "\n";
  std::cout << (doc["passed"].get<bool>() ? "all criteria passed" : "some criteria failed") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filippov and n-Leibniz algebras: exact cohomology and Whitehead checks"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Indented JSON, or a table for whitehead-suite");

  std::function<Output()> action;
  const auto sub = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  CLI::App* algebra = sub(&app, "algebra", "Construct algebras");
  algebra->require_subcommand(1);
  int n = 3;
  std::string signature;
  CLI::App* simple = sub(algebra, "simple", "Simple algebra A_{n+1} with a signature");
  simple->add_option("--n", n, "Arity")->required()->check(CLI::Range(2, 63));
  simple->add_option("--signature", signature, "Signs such as \"+++-\" (default all +)");
  simple->callback([&] { action = [&] { return cmd_simple(n, signature); }; });

  std::vector<std::string> files;
  CLI::App* sum = sub(algebra, "sum", "Direct sum of algebras");
  sum->add_option("files", files, "Algebra JSON files")->required()->check(CLI::ExistingFile);
  sum->callback([&] { action = [&] { return cmd_sum(files); }; });

  std::string file;
  CLI::App* lb = sub(algebra, "leibniz", "Associated Leibniz algebra on fundamental objects");
  lb->add_option("file", file, "Algebra JSON")->required();
  lb->callback([&] { action = [&] { return cmd_leibniz(file); }; });

  CLI::App* check = sub(&app, "check", "Identity checks");
  check->require_subcommand(1);
  CLI::App* fi = sub(check, "fi", "Fundamental identity");
  fi->add_option("file", file, "Algebra JSON")->required();
  fi->callback([&] { action = [&] { return cmd_check_fi(file); }; });

  std::string mode = "kasymov";
  CLI::App* killing = sub(&app, "killing", "Killing-type forms");
  killing->add_option("--mode", mode, "kasymov or gram")->check(CLI::IsMember({"kasymov", "gram"}));
  killing->add_option("file", file, "Algebra JSON")->required();
  killing->callback([&] { action = [&] { return cmd_killing(mode, file); }; });

  std::string act = "trivial";
  int degree = 1;
  CLI::App* coh = sub(&app, "cohomology", "Cohomology dimensions");
  coh->add_option("--action", act, "trivial or adjoint")->check(CLI::IsMember({"trivial", "adjoint"}));
  coh->add_option("--degree", degree, "Cochain degree")->check(CLI::Range(0, 2));
  coh->add_option("file", file, "Algebra JSON")->required();
  coh->callback([&] { action = [&] { return cmd_cohomology(act, degree, file); }; });

  std::string cocycle;
  bool trivialize = false;
  CLI::App* ext = sub(&app, "extend", "Central extension by a trivial 1-cochain");
  ext->add_option("file", file, "Algebra JSON")->required();
  ext->add_option("--cocycle", cocycle, "Cochain JSON")->required();
  ext->add_flag("--trivialize", trivialize, "Also split the extension");
  ext->callback([&] { action = [&] { return cmd_extend(file, cocycle, trivialize); }; });

  int order = 1;
  CLI::App* def = sub(&app, "deform", "Infinitesimal deformation by an adjoint 1-cochain");
  def->add_option("file", file, "Algebra JSON")->required();
  def->add_option("--cocycle", cocycle, "Cochain JSON")->required();
  def->add_option("--order", order, "1 or 2")->check(CLI::Range(1, 2));
  def->add_flag("--trivialize", trivialize, "Also undo the deformation by a basis change");
  def->callback([&] { action = [&] { return cmd_deform(file, cocycle, order, trivialize); }; });

  int max_n = SuiteOptions{}.max_n;
  std::uint64_t seed = 0;
  CLI::App* suite = sub(&app, "whitehead-suite", "Run the full verification battery");
  suite->add_option("--max-n", max_n, "Largest arity for simple-algebra scans")->check(CLI::Range(3, 5));
  suite->add_option("--seed", seed, "Seed for randomized checks")->envname("FILICOH_SEED");
  suite->callback([&] { action = [&] { return cmd_suite(max_n, seed); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Output out = action();
    if (pretty && out.doc.contains("criteria"))
      print_table(out.doc);
    else
      std::cout << (pretty ? out.doc.dump(2) : dump(out.doc)) << "\n";
    return out.code;
  } catch (const InputError& e) {
    std::cerr << "filicoh: " << e.what() << "\n";
    return 2;
  } catch (const NotACocycle& e) {
    std::cerr << "filicoh: " << e.what() << "\n";
    return 1;
  } catch (const VerificationFailure& e) {
    std::cerr << "filicoh: " << e.what() << "\n";
    return 1;
  }
}
