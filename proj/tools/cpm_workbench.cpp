// Command-line workbench: basis checking, randomized counterexample search,
// exhaustive Rel enumeration, metrology sweeps, and the Pauli demo.
//
// Exit codes are stable API:
//   0  success / property confirmed
//   1  negative but valid result (basis is not completely positive)
//   2  counterexample found (CP but non-canonical; survivor mismatch)
//   64 malformed input file
//   65 semantically invalid input (non-orthonormal basis, bad weights, ...)
//   75 enumeration budget exhausted
//   74 output I/O failure; other codes >2 come from flag parsing

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpmw/workbench.hpp"

namespace {

constexpr int kExitNotCp = 1;
constexpr int kExitCounterexample = 2;
constexpr int kExitBadFile = 64;
constexpr int kExitBadInput = 65;
constexpr int kExitIo = 74;
constexpr int kExitBudget = 75;

unsigned default_workers() {
  if (const char* env = std::getenv("CPM_WORKBENCH_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size())
      throw cpmw::ValidationError("could not parse number '" + item + "'");
  }
  return out;
}

int write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return kExitIo;
  }
  out << content;
  return out.good() ? 0 : kExitIo;
}

void emit(const std::optional<std::string>& out_path, const std::string& body,
          int& exit_code) {
  if (out_path) {
    const int rc = write_file(*out_path, body);
    if (rc != 0) exit_code = rc;
  } else {
    std::cout << body;
  }
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

int cmd_check_basis(const std::string& input, double tol, std::size_t samples,
                    std::uint64_t seed, const std::string& format,
                    bool no_validate) {
  cpmw::Json parsed;
  {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << input << "\n";
      return kExitBadFile;
    }
    try {
      in >> parsed;
    } catch (const std::exception& e) {
      std::cerr << "error: malformed JSON in " << input << ": " << e.what()
                << "\n";
      return kExitBadFile;
    }
  }

  Timer timer;
  cpmw::ConditionReport report;
  cpmw::MatrixBasis basis = cpmw::canonical_basis(1);
  try {
    basis = cpmw::basis_from_json(parsed, tol, !no_validate);
    report = cpmw::condition_report(basis, tol, samples, seed);
  } catch (const cpmw::BasisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const cpmw::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFile;
  }

  if (format == "json") {
    cpmw::RunManifest manifest;
    manifest.command = "check-basis";
    manifest.parameters = {{"input", input},
                           {"tol", tol},
                           {"samples", samples},
                           {"seed", seed},
                           {"no_validate", no_validate}};
    manifest.master_seed = seed;
    cpmw::Json body = cpmw::condition_report_to_json(report);
    body["n"] = basis.n();
    body["gram_deviation"] = basis.gram_deviation();
    manifest.wall_time_seconds = timer.seconds();
    std::cout << cpmw::wrap_report(manifest, body).dump(2) << "\n";
  } else {
    std::cout << "basis: n = " << basis.n() << ", Gram deviation "
              << basis.gram_deviation() << "\n";
    for (const auto& [name, check] : report.named_checks()) {
      std::cout << "  " << (check->ok ? "ok  " : "FAIL") << "  " << name;
      if (!check->ok && !check->witness.empty())
        std::cout << "  (" << check->witness << ")";
      std::cout << "\n";
    }
    std::cout << "completely positive: " << (report.is_cp ? "yes" : "NO")
              << " (min Choi eigenvalue " << report.min_choi_eigenvalue
              << ")\n";
    std::cout << "canonical: " << (report.is_canonical ? "yes" : "no") << "\n";
  }

  if (!report.is_cp) return kExitNotCp;
  if (!report.is_canonical) {
    std::cerr << "COUNTEREXAMPLE: basis is completely positive but not "
                 "canonical.\n";
    std::cerr << "full basis dump follows; replay with:\n  cpm_workbench "
                 "check-basis --input "
              << input << " --tol " << tol << " --seed " << seed << "\n";
    std::cerr << cpmw::basis_to_json(basis).dump(2) << "\n";
    return kExitCounterexample;
  }
  return 0;
}

int cmd_pauli_demo() {
  using namespace cpmw;
  const MatrixBasis pauli = pauli_basis();
  std::cout.precision(15);

  const ComplexMatrix combo =
      std::sqrt(2.0) * pauli[0] + pauli[1] + pauli[3];
  const HermitianSpectrum combo_spec = hermitian_spectrum(combo);
  std::cout << "2x2 combination sqrt(2)*a1 + a2 + a4: eigenvalues";
  for (double e : combo_spec.eigenvalues) std::cout << " " << e;
  std::cout << "  (expected {2, 0})\n";

  const ComplexMatrix image = std::sqrt(2.0) * kron(pauli[0], pauli[0]) +
                              kron(pauli[1], pauli[1]) +
                              kron(pauli[3], pauli[3]);
  const HermitianSpectrum image_spec = hermitian_spectrum(image);
  std::cout << "4x4 image under the copy map: eigenvalues";
  for (double e : image_spec.eigenvalues) std::cout << " " << e;
  std::cout << "  (contains (sqrt(2)-2)/2 = "
            << 0.5 * (std::sqrt(2.0) - 2.0) << ")\n";

  const CpVerdict verdict = is_cp(pauli);
  std::cout << "Choi matrix: "
            << (verdict.completely_positive ? "completely positive"
                                            : "NOT completely positive")
            << " (min eigenvalue " << verdict.min_choi_eigenvalue << ")\n";
  return verdict.completely_positive ? kExitCounterexample : 0;
}

int cmd_search(std::size_t n, std::size_t trials, std::uint64_t seed,
               unsigned workers, double tol,
               const std::optional<std::string>& out_path) {
  cpmw::SearchConfig config;
  config.n = n;
  config.trials = trials;
  config.master_seed = seed;
  config.tol = tol;
  config.workers = workers;
  const cpmw::SearchReport report = cpmw::run_search(config);

  cpmw::RunManifest manifest;
  manifest.command = "search";
  manifest.parameters = {{"n", n},       {"trials", trials},
                         {"seed", seed}, {"workers", workers},
                         {"tol", tol}};
  manifest.master_seed = seed;
  manifest.wall_time_seconds = report.wall_time_seconds;
  const cpmw::Json body = cpmw::search_report_body_to_json(report, n);
  const cpmw::Json wrapped = cpmw::wrap_report(manifest, body);

  int exit_code = 0;
  emit(out_path, wrapped.dump(2) + "\n", exit_code);
  if (exit_code != 0) return exit_code;

  std::cerr << "search: " << report.trials_run << " trials, cp "
            << report.cp_count << ", canonical " << report.canonical_count
            << ", near-miss " << report.near_miss_count << ", wall "
            << report.wall_time_seconds << "s\n";
  if (!report.counterexamples.empty()) {
    std::cerr << "COUNTEREXAMPLE found in " << report.counterexamples.size()
              << " trial(s); replay with: cpm_workbench search --n " << n
              << " --trials " << trials << " --seed " << seed << "\n";
    return kExitCounterexample;
  }
  return 0;
}

int cmd_rel_enumerate(std::size_t size, std::uint64_t cap, unsigned workers,
                      const std::optional<std::string>& out_path) {
  using namespace cpmw;
  Timer timer;
  EnumerationConfig config;
  config.x_size = size;
  config.candidate_cap = cap;
  config.workers = workers;

  EnumerationResult result;
  try {
    result = enumerate_cpm_classical_structures(config);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  }
  const std::vector<FiniteRelation> canonical = canonical_structure_set(size);
  std::vector<FiniteRelation> survivors;
  for (const SurvivorRecord& record : result.survivors)
    survivors.push_back(record.delta);
  const bool equal = survivors == canonical;

  RunManifest manifest;
  manifest.command = "rel-enumerate";
  manifest.parameters = {{"size", size}, {"cap", cap}, {"workers", workers}};
  manifest.wall_time_seconds = timer.seconds();

  Json body;
  body["size"] = size;
  body["candidates_checked"] = result.candidates_checked;
  Json survivor_list = Json::array();
  for (const SurvivorRecord& record : result.survivors)
    survivor_list.push_back(survivor_to_json(record));
  body["survivors"] = std::move(survivor_list);
  Json canonical_list = Json::array();
  for (const AbelianGroupoid& h : all_abelian_groupoids(size))
    canonical_list.push_back(groupoid_to_json(h));
  body["canonical_source_groupoids"] = std::move(canonical_list);
  body["survivor_count"] = survivors.size();
  body["canonical_count"] = canonical.size();
  body["survivors_equal_canonical"] = equal;

  int exit_code = 0;
  emit(out_path, wrap_report(manifest, body).dump(2) + "\n", exit_code);
  if (exit_code != 0) return exit_code;

  std::cerr << "rel-enumerate: size " << size << ", "
            << result.candidates_checked << " candidates, "
            << survivors.size() << " survivors, canonical set "
            << canonical.size() << (equal ? " (equal)" : " (MISMATCH)")
            << "\n";
  return equal ? 0 : kExitCounterexample;
}

int cmd_metrology(const std::string& mode, std::size_t n, std::size_t m,
                  const std::string& phases_text,
                  const std::string& weights_text, double phi_min,
                  double phi_max, std::size_t steps, std::size_t perms,
                  std::uint64_t seed, double tol,
                  const std::optional<std::string>& out_path) {
  using namespace cpmw;
  Timer timer;

  std::vector<double> coefficients, weights;
  try {
    coefficients = phases_text.empty() ? std::vector<double>{}
                                       : parse_double_list(phases_text);
    weights = weights_text.empty() ? std::vector<double>{}
                                   : parse_double_list(weights_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  if (coefficients.empty()) {
    coefficients.resize(n);
    for (std::size_t j = 0; j < n; ++j)
      coefficients[j] = static_cast<double>(j);
  }
  if (weights.empty()) {
    weights.assign(n, 0.0);
    weights[0] = 1.0;
  }

  try {
    if (mode == "sweep") {
      const DephasingPhaseMap tmpl(n, coefficients, weights);
      std::vector<double> grid(steps);
      for (std::size_t k = 0; k < steps; ++k)
        grid[k] = phi_min + (phi_max - phi_min) * static_cast<double>(k) /
                                static_cast<double>(steps - 1);
      const std::vector<SweepRow> rows = sweep(tmpl, m, grid);
      const std::string csv = sweep_to_csv(rows);

      int exit_code = 0;
      emit(out_path, csv, exit_code);
      if (exit_code != 0) return exit_code;
      if (out_path) {
        RunManifest manifest;
        manifest.command = "metrology sweep";
        manifest.parameters = {
            {"n", n},         {"m", m},
            {"phases", coefficients}, {"weights", weights},
            {"phi_min", phi_min},     {"phi_max", phi_max},
            {"steps", steps},
        };
        manifest.wall_time_seconds = timer.seconds();
        manifest.result_digest = "fnv1a:" + hex64(fnv1a64(csv));
        const int rc = write_file(*out_path + ".manifest.json",
                                  manifest_to_json(manifest).dump(2) + "\n");
        if (rc != 0) return rc;
      }
      return 0;
    }

    // verify: m copies when phases/weights were given explicitly, otherwise
    // m independent random dephasing maps drawn from the seed
    std::vector<QuantumMap> maps;
    if (!phases_text.empty() || !weights_text.empty()) {
      const DephasingPhaseMap map(n, coefficients, weights);
      maps.assign(m, kraus_of(map));
    } else {
      RandomStream stream(derive_seed(seed, 0x4d455452ull));
      for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> phi(n), r(n);
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          phi[j] = stream.next_uniform() * 2.0 * std::numbers::pi;
          r[j] = stream.next_uniform();
          sum += r[j];
        }
        for (std::size_t j = 0; j < n; ++j) r[j] /= sum;
        maps.push_back(kraus_of(DephasingPhaseMap(n, phi, r)));
      }
    }
    const SequentializationReport report =
        verify_sequentialization(maps, n, perms, seed, tol);
    std::cout << (report.pass ? "PASS" : "FAIL")
              << ": max |parallel - sequential| = " << report.max_abs_deviation
              << " over " << report.permutations_checked
              << " permutations (parallel scalar " << report.parallel_value
              << ")\n";
    return report.pass ? 0 : kExitCounterexample;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for completely positive copy maps: basis checking, "
               "counterexample search, finite-relation enumeration, and "
               "metrology diagram equality"};
  app.require_subcommand(1);

  // check-basis
  std::string cb_input, cb_format = "text";
  double cb_tol = 1e-9;
  std::size_t cb_samples = 64;
  std::uint64_t cb_seed = 0;
  bool cb_no_validate = false;
  CLI::App* check = app.add_subcommand(
      "check-basis", "Evaluate the condition suite on a basis file");
  check->add_option("--input", cb_input, "basis JSON file")->required();
  check->add_option("--tol", cb_tol, "tolerance");
  check->add_option("--samples", cb_samples, "samples for sampled conditions");
  check->add_option("--seed", cb_seed, "seed for sampled conditions");
  check->add_option("--format", cb_format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  check->add_flag("--no-validate", cb_no_validate,
                  "skip orthonormality validation on load");

  // pauli-demo
  CLI::App* demo = app.add_subcommand(
      "pauli-demo", "Reproduce the normalized-Pauli fixture values");

  // search
  std::size_t s_n = 2, s_trials = 1000;
  std::uint64_t s_seed = 0;
  unsigned s_workers = default_workers();
  double s_tol = 1e-9;
  std::string s_out;
  CLI::App* search = app.add_subcommand(
      "search", "Random orthonormal bases: count CP and canonical cases");
  search->add_option("--n", s_n, "matrix dimension")
      ->check(CLI::IsMember({2, 3, 4}));
  search->add_option("--trials", s_trials, "number of trials");
  search->add_option("--seed", s_seed, "master seed");
  search->add_option("--workers", s_workers, "worker threads");
  search->add_option("--tol", s_tol, "tolerance");
  search->add_option("--out", s_out, "report file (stdout when omitted)");

  // rel-enumerate
  std::size_t r_size = 2;
  std::uint64_t r_cap = 10'000'000;
  unsigned r_workers = default_workers();
  std::string r_out;
  CLI::App* rel = app.add_subcommand(
      "rel-enumerate",
      "Enumerate classical structures on the doubled carrier and compare "
      "with the canonical set");
  rel->add_option("--size", r_size, "base set size")
      ->check(CLI::IsMember({1, 2, 3}));
  rel->add_option("--cap", r_cap, "candidate budget");
  rel->add_option("--workers", r_workers, "worker threads");
  rel->add_option("--out", r_out, "report file (stdout when omitted)");

  // metrology
  std::string m_mode, m_phases, m_weights, m_out;
  std::size_t m_n = 2, m_m = 3, m_steps = 257, m_perms = 20;
  double m_phi_min = 1e-3, m_phi_max = 2.0 * std::numbers::pi - 1e-3,
         m_tol = 1e-9;
  std::uint64_t m_seed = 0;
  CLI::App* metrology = app.add_subcommand(
      "metrology", "Phase-estimation sweeps and sequentialization checks");
  metrology->add_option("mode", m_mode, "sweep or verify")
      ->required()
      ->check(CLI::IsMember({"sweep", "verify"}));
  metrology->add_option("--n", m_n, "Hilbert space dimension");
  metrology->add_option("--m", m_m, "number of probe maps");
  metrology->add_option("--phases", m_phases,
                        "comma list of per-level coefficients c_j; the map "
                        "at grid value phi uses phases c_j*phi");
  metrology->add_option("--weights", m_weights,
                        "comma list of dephasing weights r_s (sum 1)");
  metrology->add_option("--phi-min", m_phi_min, "sweep grid start");
  metrology->add_option("--phi-max", m_phi_max, "sweep grid end");
  metrology->add_option("--steps", m_steps, "sweep grid points");
  metrology->add_option("--perms", m_perms, "permutations for verify");
  metrology->add_option("--seed", m_seed, "seed for verify draws");
  metrology->add_option("--tol", m_tol, "tolerance");
  metrology->add_option("--out", m_out, "output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return cmd_check_basis(cb_input, cb_tol, cb_samples, cb_seed, cb_format,
                             cb_no_validate);
    if (demo->parsed()) return cmd_pauli_demo();
    if (search->parsed())
      return cmd_search(s_n, s_trials, s_seed, s_workers, s_tol,
                        s_out.empty() ? std::nullopt
                                      : std::optional<std::string>(s_out));
    if (rel->parsed())
      return cmd_rel_enumerate(r_size, r_cap, r_workers,
                               r_out.empty()
                                   ? std::nullopt
                                   : std::optional<std::string>(r_out));
    if (metrology->parsed())
      return cmd_metrology(m_mode, m_n, m_m, m_phases, m_weights, m_phi_min,
                           m_phi_max, m_steps, m_perms, m_seed, m_tol,
                           m_out.empty() ? std::nullopt
                                         : std::optional<std::string>(m_out));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
