// Batch front-end: evaluate expressions against the symbolic engine, run
// the verification suites, emit text or JSON reports.
//
// Exit codes: 0 success, 1 suite failure, 2 usage or parse error, 3 domain
// error (NotInDomain, NotComposable, WitnessNotFound, Gram mismatch).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gtight/gtight.hpp"

using namespace gtight;
using nlohmann::json;

namespace {

struct Options {
  bool as_json = false;
  std::string out_file;
  int bound = -1;  // -1: per-command default
  int fock = 12;
  int winding = 8;
  double q = 0.0;
  std::optional<double> t0_turns;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out_file.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(opt.out_file);
    f << text << "\n";
  }
}

json germ_json(const Germ& g) {
  return json{{"unit", format_unit(g.range())},
              {"source", format_unit(g.source())},
              {"word", format_word(g.word())},
              {"winding", g.winding()}};
}

json report_json(const suites::SuiteReport& rep) {
  json failures = json::array();
  for (const auto& f : rep.failures)
    failures.push_back(
        json{{"input", f.input}, {"expected", f.expected}, {"got", f.got}});
  return json{{"schema", 1},
              {"suite", rep.suite},
              {"cases", rep.cases},
              {"failure_count", rep.failure_count},
              {"failures", failures},
              {"wall_ms", rep.wall_ms},
              {"notes", rep.notes},
              {"conventions", suites::resolved_conventions()}};
}

std::string report_text(const suites::SuiteReport& rep) {
  std::string out = "suite " + rep.suite + ": " + std::to_string(rep.cases) +
                    " checks, " + std::to_string(rep.failure_count) +
                    " failures (" + std::to_string(rep.wall_ms) + " ms)\n";
  for (const auto& f : rep.failures)
    out += "  " + f.input + " | expected " + f.expected + " | got " + f.got +
           "\n";
  for (const auto& [k, v] : rep.notes) out += "  note " + k + ": " + v + "\n";
  return out;
}

int run_verify(const Options& opt, const std::string& suite) {
  suites::SuiteReport rep;
  if (suite == "semigroup-axioms") {
    const int b = opt.bound < 0 ? 4 : opt.bound;
    rep = suites::run_semigroup_axioms(b, b);
  } else if (suite == "oracle-products") {
    const int b = opt.bound < 0 ? 3 : opt.bound;
    rep = suites::run_oracle_products(b, TruncConfig(opt.fock, opt.winding));
  } else if (suite == "ultrafilters") {
    const int b = opt.bound < 0 ? 6 : opt.bound;
    rep = suites::run_ultrafilters(std::max(0, b - 2), b);
  } else if (suite == "groupoid-axioms") {
    rep = suites::run_groupoid_axioms(opt.bound < 0 ? 3 : opt.bound);
  } else if (suite == "equivalence-oracle") {
    const int b = opt.bound < 0 ? 3 : opt.bound;
    rep = suites::run_equivalence_oracle(b, 2 * b);
  } else if (suite == "psi") {
    rep = suites::run_psi(TruncConfig(opt.fock, opt.winding));
  } else if (suite == "reps") {
    std::vector<double> samples = {0.0, 0.25, 0.3};
    if (opt.t0_turns) samples = {*opt.t0_turns};
    rep = suites::run_reps(samples, opt.bound < 0 ? 6 : opt.bound);
  } else if (suite == "orbit-topology") {
    rep = suites::run_orbit_topology();
  } else {
    throw CLI::ValidationError(
        "suite", "unknown suite '" + suite +
                     "' (semigroup-axioms, oracle-products, ultrafilters, "
                     "groupoid-axioms, equivalence-oracle, psi, reps, "
                     "orbit-topology)");
  }
  emit(opt, opt.as_json ? report_json(rep).dump(2) : report_text(rep));
  return rep.ok() ? 0 : 1;
}

int run_rep(const Options& opt, int case_i) {
  const double turns = opt.t0_turns.value_or(0.3);
  const TorusPoint t0 = TorusPoint::from_turns(turns);
  const int bound = opt.bound < 0 ? 6 : opt.bound;
  const auto rep = check_equivalence(case_i, t0, bound, turns);
  const auto sp = induced_space(case_i, t0, bound);
  if (opt.as_json) {
    json imgs = json::array();
    const std::array<GeneratorId, 4> ids = {GeneratorId::g1, GeneratorId::g2,
                                            GeneratorId::g3, GeneratorId::g4};
    for (int i = 0; i < 4; ++i) {
      const Mat m = induced_word_image(sp, generator(ids[i]));
      json entries = json::array();
      for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
          if (m.at(r, c) != Complex(0.0))
            entries.push_back(json::array(
                {r, c, m.at(r, c).real(), m.at(r, c).imag()}));
      imgs.push_back(json{{"generator", "s" + std::to_string(i + 1)},
                          {"entries", entries}});
    }
    emit(opt, json{{"schema", 1},
                   {"case", case_i},
                   {"t0_turns", turns},
                   {"bound", bound},
                   {"gram_rank", rep.gram_rank},
                   {"gram_psd", rep.gram_psd},
                   {"isometry_ok", rep.isometry_ok},
                   {"matched_family",
                    rep.matched ? to_string(*rep.matched) : "none"},
                   {"images", imgs},
                   {"conventions", suites::resolved_conventions()}}
                  .dump(2));
  } else {
    std::string out = "case " + std::to_string(case_i) + ", t0 = " +
                      std::to_string(turns) + " turns, bound " +
                      std::to_string(bound) + "\n";
    out += "  Gram rank " + std::to_string(rep.gram_rank) +
           (rep.gram_psd ? ", positive semidefinite" : ", NOT psd") + "\n";
    out += std::string("  identification ") +
           (rep.isometry_ok ? "isometric" : "NOT isometric") + "\n";
    out += "  matched family: " +
           (rep.matched ? to_string(*rep.matched) : std::string("none")) +
           "\n";
    emit(opt, out);
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic engine for the shift-word inverse semigroup, its "
               "tight groupoid, and the induced representations"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.as_json, "emit JSON");
  app.add_option("--out", opt.out_file, "write output to a file");
  app.add_option("--bound", opt.bound, "window bound for enumerations");
  app.add_option("--fock", opt.fock, "Fock truncation per natural leg");
  app.add_option("--winding", opt.winding, "winding truncation");
  app.add_option("--q", opt.q, "deformation parameter in [0,1)");
  auto* t0opt =
      app.add_option("--t0", "torus parameter, in turns around the circle");

  std::string arg1, arg2, suite_name;
  int case_i = 4;
  bool from_source = false;

  // global options may follow the subcommand
  app.fallthrough();

  auto* c_mul = app.add_subcommand("mul", "product of two words");
  c_mul->add_option("a", arg1)->required();
  c_mul->add_option("b", arg2)->required();
  auto* c_adj = app.add_subcommand("adjoint", "adjoint of a word");
  c_adj->add_option("a", arg1)->required();
  auto* c_canon =
      app.add_subcommand("canon", "canonical germ of a character-word pair");
  c_canon->add_option("unit", arg1)->required();
  c_canon->add_option("word", arg2)->required();
  auto* c_act = app.add_subcommand("act", "character action");
  c_act->add_option("unit", arg1)->required();
  c_act->add_option("word", arg2)->required();
  auto* c_fiber = app.add_subcommand("fiber", "range (or source) fibre");
  c_fiber->add_option("unit", arg1)->required();
  c_fiber->add_flag("--source", from_source, "source fibre instead of range");
  auto* c_iso = app.add_subcommand("isotropy", "isotropy germs with labels");
  c_iso->add_option("unit", arg1)->required();
  auto* c_rep =
      app.add_subcommand("rep", "induced representation of one orbit case");
  c_rep->add_option("--case", case_i, "orbit case 1..4")
      ->required()
      ->check(CLI::Range(1, 4));
  auto* c_realize = app.add_subcommand(
      "realize", "truncated matrix of a word (or of a generator when q > 0) "
                 "as a coordinate list");
  c_realize->add_option("word", arg1)->required();
  auto* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("suite", suite_name)->required();

  try {
    app.parse(argc, argv);
    if (t0opt->count()) opt.t0_turns = t0opt->as<double>();
    const int bound = opt.bound < 0 ? 3 : opt.bound;

    if (*c_mul) {
      const Word w = word_mul(parse_word(arg1), parse_word(arg2));
      emit(opt, opt.as_json ? json{{"word", format_word(w)}}.dump()
                            : format_word(w));
    } else if (*c_adj) {
      const Word w = adjoint(parse_word(arg1));
      emit(opt, opt.as_json ? json{{"word", format_word(w)}}.dump()
                            : format_word(w));
    } else if (*c_canon) {
      const Germ g = canonicalize(parse_unit(arg1), parse_word(arg2));
      emit(opt, opt.as_json ? germ_json(g).dump(2) : format_germ(g));
    } else if (*c_act) {
      const UnitPoint u = act(parse_unit(arg1), parse_word(arg2));
      emit(opt, opt.as_json ? json{{"unit", format_unit(u)}}.dump()
                            : format_unit(u));
    } else if (*c_fiber) {
      const UnitPoint u = parse_unit(arg1);
      const auto germs =
          from_source ? fiber_s(u, bound) : fiber_r(u, bound);
      if (opt.as_json) {
        json arr = json::array();
        for (const auto& g : germs) arr.push_back(germ_json(g));
        emit(opt, arr.dump(2));
      } else {
        std::string out;
        for (const auto& g : germs) out += format_germ(g) + "\n";
        emit(opt, out);
      }
    } else if (*c_iso) {
      const auto germs = isotropy(parse_unit(arg1), bound);
      if (opt.as_json) {
        json arr = json::array();
        for (const auto& g : germs) arr.push_back(germ_json(g));
        emit(opt, arr.dump(2));
      } else {
        std::string out;
        for (const auto& g : germs)
          out += "r=" + std::to_string(g.winding()) + "  " + format_germ(g) +
                 "\n";
        emit(opt, out);
      }
    } else if (*c_rep) {
      return run_rep(opt, case_i);
    } else if (*c_realize) {
      const TruncConfig cfg(opt.fock, opt.winding, opt.q);
      TruncatedOperator m(cfg);
      if (opt.q > 0.0) {
        // only the generators exist away from q = 0
        const Word w = parse_word(arg1);
        bool matched = false;
        for (auto id : {GeneratorId::g1, GeneratorId::g2, GeneratorId::g3,
                        GeneratorId::g4})
          if (generator(id) == w) {
            m = gen_q(id, cfg);
            matched = true;
          }
        if (!matched)
          throw NotInDomain("realize with q > 0 needs a generator word");
      } else {
        m = realize(parse_word(arg1), cfg);
      }
      emit(opt, m.coordinate_list());
    } else if (*c_verify) {
      return run_verify(opt, suite_name);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotInDomain& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const NotComposable& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const WitnessNotFound& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const GramDegeneracyMismatch& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
