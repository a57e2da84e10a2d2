// lvt: type checking, machine runs and property suites from the command line.
//
// Exit codes: 0 ok / normal form, 1 type error or failed suite, 2 parse
// error, 3 I/O error, 4 fuel exhausted, 5 stuck.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lvt/format.hpp"
#include "lvt/harness.hpp"
#include "lvt/machine.hpp"
#include "lvt/sndorder.hpp"
#include "lvt/typing.hpp"

namespace {

enum Exit { kOk = 0, kTypeError = 1, kParseError = 2, kIoError = 3, kFuelExhausted = 4, kStuck = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

lvt::Signature load_signature(const std::string& path) {
  return path.empty() ? lvt::default_signature() : lvt::parse_signature(slurp(path));
}

// Maps the exceptions shared by all subcommands onto exit codes.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const lvt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const lvt::TypeError& e) {
    std::cerr << e.what() << "\n";
    return kTypeError;
  }
}

int cmd_check(const std::string& file, const std::string& sig_path) {
  return guarded([&] {
    const lvt::Signature sig = load_signature(sig_path);
    const lvt::Closure l = lvt::parse_closure(slurp(file));
    const lvt::Checker checker(sig);
    const lvt::TypingContext store_ctx = checker.check_closure(l);
    std::cout << "store: " << lvt::to_string(store_ctx) << "\n";
    std::cout << "cut: " << lvt::to_string(checker.cut_type(l)) << "\n";
    return static_cast<int>(kOk);
  });
}

int cmd_run(const std::string& file, const std::string& sig_path, std::uint64_t fuel, bool trace) {
  return guarded([&] {
    std::optional<lvt::Signature> sig;
    if (!sig_path.empty()) sig = lvt::parse_signature(slurp(sig_path));
    const lvt::Closure l = lvt::parse_closure(slurp(file));
    lvt::RunOptions opts;
    opts.signature = sig ? &*sig : nullptr;
    opts.record = false;
    if (trace) {
      opts.on_step = [](std::uint64_t n, lvt::Rule rule, const lvt::Closure& next) {
        std::cout << lvt::format_step(n, rule, next) << "\n";
      };
    }
    const lvt::Trace t = lvt::run(l, fuel, opts);
    std::cout << lvt::format_outcome(t.outcome, t.fuel_used) << "\n";
    switch (t.outcome.kind) {
      case lvt::Outcome::Kind::Normal: return static_cast<int>(kOk);
      case lvt::Outcome::Kind::FuelExhausted: return static_cast<int>(kFuelExhausted);
      case lvt::Outcome::Kind::Stuck: return static_cast<int>(kStuck);
    }
    return static_cast<int>(kStuck);
  });
}

int report(const std::vector<lvt::Report>& reports) {
  std::cout << lvt::render(reports);
  return lvt::all_ok(reports) ? kOk : kTypeError;
}

int cmd_fuzz(const std::string& sig_path, std::size_t count, std::uint64_t seed, std::uint64_t fuel) {
  return guarded([&] {
    lvt::GenConfig cfg;
    cfg.signature = load_signature(sig_path);
    cfg.seed = seed;
    cfg.bracket_rate = 0.1;
    try {
      return report(lvt::fuzz_suite(cfg, count, fuel));
    } catch (const lvt::GenerationFailed& e) {
      std::cerr << "error: " << e.what() << "\n";
      return static_cast<int>(kTypeError);
    }
  });
}

int cmd_lemmas(std::size_t count, std::uint64_t seed) {
  return report({lvt::store_lemma_suite(count, seed), lvt::weakening_suite(count, seed)});
}

int cmd_compare_cbn(const std::string& sig_path, std::size_t count, std::uint64_t seed, std::uint64_t fuel) {
  return guarded([&] {
    const lvt::Signature sig = load_signature(sig_path);
    try {
      return report({lvt::cbn_suite(sig, count, seed, fuel)});
    } catch (const lvt::GenerationFailed& e) {
      std::cerr << "error: " << e.what() << "\n";
      return static_cast<int>(kTypeError);
    }
  });
}

int cmd_check_deriv(const std::string& file, const std::string& sig_path) {
  return guarded([&] {
    const lvt::Signature sig = load_signature(sig_path);
    const lvt::so::Derivation d = lvt::so::parse_derivation(slurp(file));
    try {
      lvt::so::check_derivation(d, sig);
    } catch (const lvt::so::DerivationError& e) {
      std::cerr << e.what() << "\n";
      return static_cast<int>(kTypeError);
    }
    std::cout << "ok: " << lvt::so::size(d) << " nodes\n";
    return static_cast<int>(kOk);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lvt: call-by-need λ-calculus with control and stores"};
  app.require_subcommand(1);

  std::string file, sig_path;
  std::uint64_t fuel = 1000000, seed = 42;
  std::size_t count = 1000;
  bool trace = false;

  auto add_sig = [&](CLI::App* sub) {
    sub->add_option("--sig", sig_path, "signature file (sig (const k X) ... (coconst q A) ...)")
        ->check(CLI::ExistingFile);
  };
  auto add_suite_opts = [&](CLI::App* sub) {
    sub->add_option("--count", count, "number of generated cases")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "generator seed");
  };

  auto* check = app.add_subcommand("check", "type check a closure");
  check->add_option("file", file, "closure file")->required();
  add_sig(check);

  auto* run = app.add_subcommand("run", "run the machine on a closure");
  run->add_option("file", file, "closure file")->required();
  add_sig(run);
  run->add_option("--fuel", fuel, "maximum number of steps");
  run->add_flag("--trace", trace, "print every step");

  auto* fuzz = app.add_subcommand("fuzz", "subject reduction and normalization on generated closures");
  add_sig(fuzz);
  add_suite_opts(fuzz);
  fuzz->add_option("--fuel", fuel, "maximum number of steps per run");

  auto* lemmas = app.add_subcommand("lemmas", "store union lemma and weakening on generated cases");
  add_suite_opts(lemmas);

  auto* cbn = app.add_subcommand("compare-cbn", "machine against call-by-name on pure terms");
  add_sig(cbn);
  add_suite_opts(cbn);
  cbn->add_option("--fuel", fuel, "maximum number of steps per run");

  auto* deriv = app.add_subcommand("check-deriv", "check an explicit second-order derivation");
  deriv->add_option("file", file, "derivation file")->required();
  add_sig(deriv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*check) return cmd_check(file, sig_path);
  if (*run) return cmd_run(file, sig_path, fuel, trace);
  if (*fuzz) return cmd_fuzz(sig_path, count, seed, fuel);
  if (*lemmas) return cmd_lemmas(count, seed);
  if (*cbn) return cmd_compare_cbn(sig_path, count, seed, fuel);
  return cmd_check_deriv(file, sig_path);
}
