#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "opcomm/errors.hpp"
#include "opcomm/json_io.hpp"
#include "opcomm/shoda.hpp"

namespace opcomm {
namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

/// One entry of the report's certificate list. Timing stays on stderr so the
/// stdout report is byte-identical across runs with the same seed.
Json check_entry(const std::string& check, Json parameters, bool pass, Json detail) {
  std::cerr << "[" << check << "] " << parameters.dump() << (pass ? " pass" : " FAIL")
            << "\n";
  return Json{{"check", check},
              {"parameters", std::move(parameters)},
              {"pass", pass},
              {"certificate", std::move(detail)}};
}

FamilyLayout pick_layout(bool alt) {
  return alt ? FamilyLayout::Mirrored : FamilyLayout::Forward;
}

Json run_t1(int level, FamilyLayout layout) {
  const auto cert = verify_identity_t1(level, layout);
  return check_entry("identity-t1",
                     Json{{"level", level}, {"layout", layout_name(layout)}}, cert.pass,
                     certificate_to_json(cert));
}

Json run_t1_matrix(int level, FamilyLayout layout) {
  const bool pass = verify_t1_matrix(level, layout);
  return check_entry("identity-t1-matrix",
                     Json{{"level", level},
                          {"layout", layout_name(layout)},
                          {"dimension", std::int64_t(1) << (level + 1)}},
                     pass, Json::object());
}

/// Re-derives the partial-isometry facts of the depth-k family: both shift
/// operators are exact partial isometries, they share the initial projection
/// (the core union of the E_n), and their final projections agree.
Json run_calculus(int level, FamilyLayout layout) {
  const auto family = build_spectral_family(level, layout);
  const auto u1 = build_u1(family);
  const auto u2 = build_u2(family);

  DyadicSet initial;
  DyadicSet final_set;
  for (int n = 0; n + 1 < level; ++n) {
    initial = set_union(initial, family.e[std::size_t(n)]);
    final_set = set_union(final_set, family.e[std::size_t(n) + 1]);
    final_set = set_union(final_set, family.f[std::size_t(n)]);
  }

  const auto r1 = verify_partial_isometry(u1, initial, final_set);
  const auto r2 = verify_partial_isometry(u2, initial, final_set);
  const bool shared_initial = u1.adjoint() * u1 == u2.adjoint() * u2;
  const bool shared_final = u1 * u1.adjoint() == u2 * u2.adjoint();
  const bool pass = r1.exact_pass && r2.exact_pass && shared_initial && shared_final;
  return check_entry("shift-calculus",
                     Json{{"level", level}, {"layout", layout_name(layout)}}, pass,
                     Json{{"initial_measure", initial.measure().str()},
                          {"final_measure", final_set.measure().str()}});
}

Json run_t2(long long shadow) {
  const auto report = verify_identity_t2();
  Json detail{{"identity", report.identity},
              {"residual_atoms", report.residual.atoms().size()}};
  bool pass = report.exact_pass;
  if (shadow > 0) {
    const bool shadow_pass = verify_identity_t2_shadow(std::size_t(shadow));
    detail["shadow_window"] = shadow;
    detail["shadow_pass"] = shadow_pass;
    pass = pass && shadow_pass;
  }
  return check_entry("identity-t2", Json{{"shadow", shadow}}, pass, std::move(detail));
}

AlgebraElement random_element(std::mt19937_64& rng, int max_level) {
  std::uniform_int_distribution<int> count_dist(1, 4);
  std::uniform_int_distribution<int> level_dist(0, max_level);
  std::uniform_int_distribution<long> num_dist(-9, 9);
  std::uniform_int_distribution<long> den_dist(1, 9);
  std::vector<TranslationAtom> atoms;
  const int count = count_dist(rng);
  for (int i = 0; i < count; ++i) {
    const int level = level_dist(rng);
    std::uniform_int_distribution<std::int64_t> index_dist(0, (std::int64_t(1) << level) - 1);
    atoms.push_back({{level, index_dist(rng)},
                     {level, index_dist(rng)},
                     make_rational(num_dist(rng), den_dist(rng))});
  }
  return AlgebraElement::from_atoms(std::move(atoms));
}

Json run_crosscheck(int level, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < samples; ++i) {
    const auto x = random_element(rng, level);
    const auto y = random_element(rng, level);
    if (!crosscheck(x, y, level)) {
      ++failures;
    }
  }
  return check_entry(
      "matrix-crosscheck",
      Json{{"level", level}, {"samples", samples}, {"seed", seed}}, failures == 0,
      Json{{"failures", failures}});
}

RationalMatrix random_trace_zero(std::mt19937_64& rng, std::size_t dimension) {
  std::uniform_int_distribution<long> entry_dist(-10, 10);
  RationalMatrix m(dimension);
  Rational diagonal_sum(0);
  for (std::size_t i = 0; i < dimension; ++i) {
    for (std::size_t j = 0; j < dimension; ++j) {
      m.at(i, j) = entry_dist(rng);
    }
    if (i + 1 < dimension) {
      diagonal_sum += m.at(i, i);
    }
  }
  m.at(dimension - 1, dimension - 1) = -diagonal_sum;
  return m;
}

Json shoda_witness_entry(const RationalMatrix& m, Json parameters) {
  const auto witness = commutator_realize(m);
  const bool pass = verify_commutator(witness.x, witness.y, m);
  Json detail{{"dimension", m.dimension()}};
  if (pass) {
    detail["x"] = to_json(witness.x);
    detail["y"] = to_json(witness.y);
    detail["similarity"] = to_json(witness.s);
  }
  return check_entry("shoda-witness", std::move(parameters), pass, std::move(detail));
}

Json run_shoda_random(long long dimension, long long count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Json entries = Json::array();
  for (long long i = 0; i < count; ++i) {
    const auto m = random_trace_zero(rng, std::size_t(dimension));
    entries.push_back(shoda_witness_entry(
        m, Json{{"dimension", dimension}, {"instance", i}, {"seed", seed}}));
  }
  return entries;
}

bool all_pass(const Json& certificates) {
  for (const auto& entry : certificates) {
    if (!entry.at("pass").get<bool>()) {
      return false;
    }
  }
  return true;
}

int emit_report(const std::string& command, Json parameters, Json certificates,
                Clock::time_point start) {
  const bool pass = all_pass(certificates);
  const Json report{{"schema", 1},
                    {"command", command},
                    {"parameters", std::move(parameters)},
                    {"pass", pass},
                    {"certificates", std::move(certificates)}};
  std::cout << report.dump(2) << "\n";
  std::cerr << "[" << command << "] " << (pass ? "pass" : "FAIL") << " in "
            << elapsed_ms(start) << " ms\n";
  return pass ? 0 : 1;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact verification suite for the dyadic operator model"};
  app.require_subcommand(1);

  int t1_level = 6;
  bool alt_layout = false;
  auto* t1_cmd = app.add_subcommand("verify-t1", "certify the two-commutator identity");
  t1_cmd->add_option("--level", t1_level, "truncation depth k")
      ->check(CLI::Range(2, kMaxLevel - 1));
  t1_cmd->add_flag("--alt-layout", alt_layout, "use the mirrored interval layout");

  long long shadow = 0;
  auto* t2_cmd = app.add_subcommand("verify-t2", "certify the halving-isometry identity");
  t2_cmd->add_option("--shadow", shadow, "also replay in 2N x 2N shadow matrices")
      ->check(CLI::Range(1LL, 1LL << 12));

  std::string shoda_input;
  std::vector<long long> shoda_random;
  auto* shoda_cmd =
      app.add_subcommand("shoda", "realize a trace-zero matrix as one commutator");
  shoda_cmd->add_option("--input", shoda_input, "JSON file with a matrix of \"num/den\"");
  shoda_cmd->add_option("--random", shoda_random, "dimension count seed")->expected(3);
  shoda_cmd->require_option(1);

  int cross_level = 6;
  int cross_samples = 200;
  std::uint64_t cross_seed = 1;
  auto* cross_cmd =
      app.add_subcommand("crosscheck", "compare symbolic products against matrices");
  cross_cmd->add_option("--level", cross_level, "grid level")->check(CLI::Range(0, 10));
  cross_cmd->add_option("--samples", cross_samples, "number of random pairs")
      ->check(CLI::PositiveNumber);
  cross_cmd->add_option("--seed", cross_seed, "generator seed");

  auto* suite_cmd = app.add_subcommand("suite", "run every verification at default scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = Clock::now();
  Json certificates = Json::array();

  if (t1_cmd->parsed()) {
    certificates.push_back(run_t1(t1_level, pick_layout(alt_layout)));
    return emit_report("verify-t1",
                       Json{{"level", t1_level}, {"layout", layout_name(pick_layout(alt_layout))}},
                       std::move(certificates), start);
  }

  if (t2_cmd->parsed()) {
    certificates.push_back(run_t2(shadow));
    return emit_report("verify-t2", Json{{"shadow", shadow}}, std::move(certificates),
                       start);
  }

  if (shoda_cmd->parsed()) {
    Json parameters;
    if (!shoda_input.empty()) {
      std::ifstream in(shoda_input);
      if (!in) {
        throw Error("cannot open " + shoda_input);
      }
      const auto m = matrix_from_json(Json::parse(in));
      parameters = Json{{"input", shoda_input}, {"dimension", m.dimension()}};
      try {
        certificates.push_back(shoda_witness_entry(m, parameters));
      } catch (const TraceObstructionError& e) {
        std::cerr << "trace obstruction: " << e.what() << "\n";
        certificates.push_back(check_entry("shoda-witness", parameters, false,
                                           Json{{"reason", e.what()}}));
      }
    } else {
      parameters = Json{{"dimension", shoda_random[0]},
                        {"count", shoda_random[1]},
                        {"seed", shoda_random[2]}};
      if (shoda_random[0] < 1 || shoda_random[0] > 64 || shoda_random[1] < 1) {
        throw Error("--random expects 1 <= dimension <= 64 and count >= 1");
      }
      certificates = run_shoda_random(shoda_random[0], shoda_random[1],
                                      std::uint64_t(shoda_random[2]));
    }
    return emit_report("shoda", std::move(parameters), std::move(certificates), start);
  }

  if (cross_cmd->parsed()) {
    certificates.push_back(run_crosscheck(cross_level, cross_samples, cross_seed));
    return emit_report(
        "crosscheck",
        Json{{"level", cross_level}, {"samples", cross_samples}, {"seed", cross_seed}},
        std::move(certificates), start);
  }

  if (suite_cmd->parsed()) {
    for (int k = 2; k <= 8; ++k) {
      certificates.push_back(run_t1(k, FamilyLayout::Forward));
      certificates.push_back(run_t1(k, FamilyLayout::Mirrored));
    }
    for (int k = 2; k <= 6; ++k) {
      certificates.push_back(run_t1_matrix(k, FamilyLayout::Forward));
    }
    certificates.push_back(run_calculus(4, FamilyLayout::Forward));
    certificates.push_back(run_calculus(4, FamilyLayout::Mirrored));
    certificates.push_back(run_t2(64));
    certificates.push_back(run_crosscheck(6, 200, 1));
    for (const auto& entry : run_shoda_random(6, 10, 7)) {
      certificates.push_back(entry);
    }
    return emit_report("suite", Json::object(), std::move(certificates), start);
  }

  return 2;
}

}  // namespace
}  // namespace opcomm

int main(int argc, char** argv) {
  try {
    return opcomm::run_cli(argc, argv);
  } catch (const opcomm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
