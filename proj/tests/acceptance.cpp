#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>

#include "filicoh/io.hpp"
#include "filicoh/suite.hpp"

using namespace filicoh;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& command) {
  Run r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

class RoundTrips {
 public:
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  }

  /// Output must be one canonical JSON document followed by a newline.
  Json document(const Run& r, int code, const std::string& what) {
    expect(r.code == code, what + " exit " + std::to_string(r.code));
    try {
      const Json j = parse_json(r.out);
      expect(dump(j) + "\n" == r.out, what + " is not canonical");
      return j;
    } catch (const std::exception&) {
      expect(false, what + " is not JSON");
      return Json();
    }
  }

  template <class Parse, class Emit>
  void artifact(const Json& j, const std::string& what, Parse parse, Emit emit) {
    ++checked;
    try {
      const std::string text = dump(j);
      expect(dump(emit(parse(parse_json(text)))) == text, what + " round trip");
    } catch (const std::exception& e) {
      expect(false, what + ": " + e.what());
    }
  }

  void algebra(const Json& j, const std::string& what) {
    artifact(j, what, algebra_from_json, [](const Algebra& a) { return to_json(a); });
  }
  void cochain(const Json& j, const Algebra& a, const std::string& what) {
    artifact(j, what, [&](const Json& x) { return cochain_from_json(x, a); }, [](const Cochain& c) { return to_json(c); });
  }
};

CriterionResult cli_criterion(const std::string& exe) {
  CriterionResult res{14, "CLI suite and round trips", false, "", 0};
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir = fs::temp_directory_path() / ("filicoh-acceptance-" + std::to_string(getpid()));
  fs::create_directories(dir);
  const auto file = [&](const std::string& name) { return (dir / name).string(); };
  const std::string cli = "'" + exe + "'";
  RoundTrips rt;

  const Run suite = run(cli + " whitehead-suite --seed 3");
  const Json sj = rt.document(suite, 0, "whitehead-suite");
  rt.expect(sj.is_object() && sj.value("passed", false) && sj["criteria"].size() == suite_criteria, "suite report");
  rt.expect(run(cli + " whitehead-suite --seed 3").out == suite.out, "suite output is deterministic");
  rt.expect(run("FILICOH_SEED=3 " + cli + " whitehead-suite").out == suite.out, "FILICOH_SEED fallback");

  for (const std::string sig : {"++++", "+++-", "++--"}) {
    const Run r = run(cli + " algebra simple --n 3 --signature " + sig);
    rt.algebra(rt.document(r, 0, "algebra simple " + sig), "simple " + sig);
  }
  const Run a4 = run(cli + " algebra simple --n 3");
  write(file("a4.json"), a4.out);
  const Run a5 = run(cli + " algebra simple --n 4");
  write(file("a5.json"), a5.out);
  const Run sum = run(cli + " algebra sum " + file("a4.json") + " " + file("a4.json"));
  rt.algebra(rt.document(sum, 0, "algebra sum"), "sum");
  write(file("s.json"), sum.out);
  const Run mixed = run(cli + " algebra sum " + file("a4.json") + " " + file("a5.json"));
  rt.expect(mixed.code == 2, "sum of different arities is an input error");
  const Run lb = run(cli + " algebra leibniz " + file("s.json"));
  rt.artifact(rt.document(lb, 0, "algebra leibniz"), "leibniz", leibniz_from_json,
              [](const NLeibnizAlgebra& l) { return to_json(l); });

  const Algebra s = algebra_from_json(parse_json(sum.out));
  std::mt19937_64 g(14);
  const auto tcx = make_complex(s, Action::Trivial);
  const auto acx = make_complex(s, Action::Adjoint);
  write(file("tc.json"), dump(to_json(random_combination(cocycle_basis(tcx, 1), tcx, 1, g))));
  write(file("ac.json"), dump(to_json(random_combination(cocycle_basis(acx, 1), acx, 1, g))));
  Cochain bad = Cochain::zero(acx, 1);
  bad.set({{0, 1}}, 2, 0, Rational(1));
  write(file("bad.json"), dump(to_json(bad)));

  const Json ext = rt.document(run(cli + " extend " + file("s.json") + " --cocycle " + file("tc.json") + " --trivialize"),
                               0, "extend");
  if (ext.is_object() && ext.contains("trivialization")) {
    rt.algebra(ext["algebra"], "extended algebra");
    rt.algebra(ext["trivialization"]["algebra"], "split algebra");
    rt.cochain(ext["trivialization"]["beta"], s, "extension beta");
    rt.expect(ext["trivialization"]["success"] == true, "extension split");
  } else {
    rt.expect(false, "extend report");
  }

  const auto deformation = [](const Json& x) { return deformation_from_json(x); };
  const auto emit_def = [](const Deformation& d) { return to_json(d); };
  const Json def = rt.document(run(cli + " deform " + file("s.json") + " --cocycle " + file("ac.json") + " --trivialize"), 0,
                               "deform");
  if (def.is_object() && def.contains("trivialization")) {
    rt.artifact(def["deformation"], "deformation", deformation, emit_def);
    rt.cochain(def["trivialization"]["beta"], s, "deformation beta");
    rt.cochain(def["trivialization"]["residual"], s, "deformation residual");
  } else {
    rt.expect(false, "deform report");
  }
  const Json def2 = rt.document(run(cli + " deform " + file("s.json") + " --cocycle " + file("ac.json") + " --order 2"), 0,
                                "deform --order 2");
  if (def2.is_object() && def2.contains("obstruction")) {
    rt.artifact(def2["deformation"], "second-order deformation", deformation, emit_def);
    rt.cochain(def2["obstruction"]["gamma"], s, "obstruction");
  } else {
    rt.expect(false, "second-order report");
  }
  rt.document(run(cli + " deform " + file("s.json") + " --cocycle " + file("bad.json")), 1, "deform by a non-cocycle");
  rt.document(run(cli + " cohomology --action adjoint --degree 1 " + file("a4.json")), 0, "cohomology");
  rt.expect(run(cli + " cohomology --bogus " + file("a4.json")).code == 2, "unknown flag exit");

  fs::remove_all(dir);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  res.passed = rt.failures.empty();
  res.detail = "suite exit " + std::to_string(suite.code) + ", " + std::to_string(rt.checked) + " artifacts round-tripped";
  for (const auto& f : rt.failures) res.detail += "; failed: " + f;
  return res;
}

void print(const CriterionResult& r) {
  std::cout << "criterion " << std::setw(2) << r.id << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.name << " ("
            << std::fixed << std::setprecision(2) << r.seconds << " s)  " << r.detail << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to filicoh>\n";
    return 2;
  }
  bool all = true;
  for (int id = 1; id <= suite_criteria; ++id) {
    const CriterionResult r = run_criterion(id, SuiteOptions{});
    print(r);
    all = all && r.passed;
  }
  const CriterionResult cli = cli_criterion(argv[1]);
  print(cli);
  all = all && cli.passed;
  std::cout << (all ? "all 14 criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}
