#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

const char* kVerbs = R"(verbs:
  decompose        A = XY - YX for a trace-zero matrix (Z, Fp[x], Z/N, Fp)
  field-decompose  A = [X, Y] over a prime field with X regular
  normal-form      reduced form B = g A g^-1 with its witness and pivot
  zero-diag        similar matrix with zero diagonal, or the obstructing prime
  verify           recompute XY - YX or g A g^-1 from a previous output
  gen              seeded random trace-zero instances
  regular-check    regularity over the fraction field, over R, and mod --prime

exit codes: 0 ok, 1 verification failure, 2 precondition violation, 64 usage or parse error)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact commutator decompositions of matrices over principal ideal domains", "pidc"};
  app.footer(kVerbs);
  std::string verb, ring, in, out, inline_json, prime;
  pidc::cli::Options opt;
  app.add_option("verb", verb, "command to run")
      ->required()
      ->check(CLI::IsMember({"decompose", "field-decompose", "normal-form", "zero-diag", "verify", "gen",
                             "regular-check"}));
  app.add_option("--ring", ring, "Z, F5[x], Z/12 or F5; overrides nothing, must match input tags");
  app.add_option("--in", in, "input file (default: stdin)");
  app.add_option("--json", inline_json, "inline input document");
  app.add_option("--out", out, "output file (default: stdout)");
  app.add_option("--seed", opt.seed, "gen: RNG seed");
  app.add_option("--count", opt.count, "gen: number of instances");
  app.add_option("--bound", opt.bound, "gen: entry bound over Z, degree bound over Fp[x]");
  app.add_option("-n,--n", opt.n, "gen: matrix size");
  app.add_option("--prime", prime, "regular-check: prime (integer, or comma-separated coefficients over Fp[x])");
  app.add_option("--threads", opt.threads, "batch worker threads (default: hardware)");
  app.add_flag("--oracle", opt.oracle, "cross-check with brute-force enumeration");
  app.add_flag("--regular-x", opt.regular_x, "decompose: 3x3 construction with X(X + y) = E31");
  app.get_option("--in")->excludes(app.get_option("--json"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pidc::cli::kUsage;
  }

  try {
    if (!ring.empty()) opt.ring = pidc::io::parse_ring_flag(ring);
  } catch (const pidc::io::ParseError& e) {
    std::cerr << "pidc: " << e.what() << "\n";
    return pidc::cli::kUsage;
  }
  if (!prime.empty()) opt.prime = prime;

  pidc::cli::Outcome res;
  if (verb == "gen") {
    res = pidc::cli::generate(opt);
  } else {
    std::string text;
    if (!inline_json.empty()) {
      text = inline_json;
    } else if (!in.empty() && in != "-") {
      std::ifstream f(in);
      if (!f) {
        std::cerr << "pidc: cannot read " << in << "\n";
        return pidc::cli::kUsage;
      }
      text.assign(std::istreambuf_iterator<char>(f), {});
    } else {
      text.assign(std::istreambuf_iterator<char>(std::cin), {});
    }
    auto doc = pidc::io::json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
      std::cerr << "pidc: input is not valid JSON\n";
      return pidc::cli::kUsage;
    }
    res = pidc::cli::run(verb, doc, opt);
  }

  if (res.code != pidc::cli::kOk) {
    std::cerr << "pidc " << verb << ": " << res.message << "\n";
    return res.code;
  }
  const std::string body = res.output.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << body;
  } else {
    std::ofstream f(out);
    if (!f || !(f << body)) {
      std::cerr << "pidc: cannot write " << out << "\n";
      return pidc::cli::kUsage;
    }
  }
  return pidc::cli::kOk;
}
