// rrlab: exact-arithmetic verification of Bernoulli, power-sum and
// fixed-point-data congruences, with machine-readable reports.
//
// Exit codes: 0 all checks hold, 2 some verification failed (witnesses
// printed), 1 usage, parse, validation or bound errors.

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rrlab/arith.hpp"
#include "rrlab/bernoulli.hpp"
#include "rrlab/fpd.hpp"
#include "rrlab/classes.hpp"
#include "rrlab/report.hpp"
#include "rrlab/verify.hpp"

namespace {

using namespace rrlab;

struct CliConfig {
  bool json = false;
  bool tsv = false;
  int jobs = 1;
  std::string cache_path;
  std::int64_t order_bound = 512;

  OutputFormat format() const {
    if (json) return OutputFormat::json;
    if (tsv) return OutputFormat::tsv;
    return OutputFormat::human;
  }
  SweepOptions sweep_options() const {
    return SweepOptions{jobs, EnumerationLimits{order_bound}};
  }
};

void load_cache(BernoulliTable& table, const CliConfig& cfg) {
  if (!cfg.cache_path.empty() && std::filesystem::exists(cfg.cache_path))
    table.load_file(cfg.cache_path);
}

void save_cache(const BernoulliTable& table, const CliConfig& cfg) {
  if (!cfg.cache_path.empty() && table.max_index() > 0) table.save_file(cfg.cache_path);
}

int report_exit(const SweepReport& report, const CliConfig& cfg) {
  write_report(std::cout, report, cfg.format());
  std::cerr << "# " << report.check << ": " << report.total << " cases in " << std::fixed
            << std::setprecision(2) << report.elapsed_seconds << "s\n";
  return report.failures.empty() ? 0 : 2;
}

int result_exit(const VerificationResult& result, const CliConfig& cfg) {
  write_result(std::cout, result, cfg.format());
  return result.holds ? 0 : 2;
}

int run_bernoulli(const CliConfig& cfg, int max_k) {
  BernoulliTable table;
  load_cache(table, cfg);
  table.ensure(max_k);
  if (cfg.format() == OutputFormat::tsv) std::cout << "k\tb2k\tn2k\td2k\tn2k_prime\td2k_prime\n";
  for (int k = 1; k <= max_k; ++k) {
    const RRConstants rc = table.rr_constants(k);
    const std::string b = rc.n2k.str() + "/" + rc.d2k.str();
    switch (cfg.format()) {
      case OutputFormat::json:
        std::cout << nlohmann::json{{"k", k},
                                    {"b2k", b},
                                    {"n2k", rc.n2k.str()},
                                    {"d2k", rc.d2k.str()},
                                    {"n2k_prime", rc.n2k_prime.str()},
                                    {"d2k_prime", rc.d2k_prime.str()}}
                         .dump()
                  << '\n';
        break;
      case OutputFormat::tsv:
        std::cout << k << '\t' << b << '\t' << rc.n2k << '\t' << rc.d2k << '\t' << rc.n2k_prime
                  << '\t' << rc.d2k_prime << '\n';
        break;
      case OutputFormat::human:
        std::cout << "k=" << k << " B=" << b << " N'=" << rc.n2k_prime << " D'=" << rc.d2k_prime
                  << '\n';
        break;
    }
  }
  save_cache(table, cfg);
  return 0;
}

int run_enumerate(const CliConfig& cfg, std::int64_t genus, std::int64_t order) {
  const auto data = enumerate_data(genus, order, EnumerationLimits{cfg.order_bound});
  if (cfg.format() == OutputFormat::tsv) std::cout << "data\tgenus\torder\torbit_genus\tq\n";
  for (const FixedPointData& d : data) {
    switch (cfg.format()) {
      case OutputFormat::json:
        std::cout << nlohmann::json{{"data", d.to_string()},
                                    {"genus", d.genus},
                                    {"order", d.order},
                                    {"orbit_genus", d.orbit_genus},
                                    {"q", d.q()}}
                         .dump()
                  << '\n';
        break;
      case OutputFormat::tsv:
        std::cout << d.to_string() << '\t' << d.genus << '\t' << d.order << '\t' << d.orbit_genus
                  << '\t' << d.q() << '\n';
        break;
      case OutputFormat::human:
        std::cout << d.to_string() << " h=" << d.orbit_genus << " q=" << d.q() << '\n';
        break;
    }
  }
  std::cerr << "# enumerate: " << data.size() << " data\n";
  return 0;
}

int run_classes(const CliConfig& cfg, const std::string& text, int max_k) {
  const FixedPointData d = parse_fpd(text);
  if (cfg.format() == OutputFormat::tsv) std::cout << "data\tk\torder\te\ts\n";
  for (int k = 1; k <= max_k; ++k) {
    const CohomologyClass e = morita_mumford_class(d, k);
    const CohomologyClass s = newton_class(d, k);
    switch (cfg.format()) {
      case OutputFormat::json:
        std::cout << nlohmann::json{{"data", d.to_string()},
                                    {"k", k},
                                    {"order", std::to_string(d.order)},
                                    {"e", e.coeff.value.str()},
                                    {"s", s.coeff.value.str()}}
                         .dump()
                  << '\n';
        break;
      case OutputFormat::tsv:
        std::cout << d.to_string() << '\t' << k << '\t' << d.order << '\t' << e.coeff.value
                  << '\t' << s.coeff.value << '\n';
        break;
      case OutputFormat::human:
        std::cout << "k=" << k << " e=" << e.coeff.value << " s=" << s.coeff.value << " (mod "
                  << d.order << ")\n";
        break;
    }
  }
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "rrlab: exact verification of Bernoulli-number, power-sum and fixed-point-data "
      "congruences"};
  app.require_subcommand(1);

  CliConfig cfg;
  app.add_flag("--json", cfg.json, "emit JSON lines (one object per case, final summary object)");
  app.add_flag("--tsv", cfg.tsv, "emit tab-separated rows")->excludes("--json");
  app.add_option("--jobs", cfg.jobs, "worker count for sweeps")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  app.add_option("--cache", cfg.cache_path, "Bernoulli cache file (overrides RRLAB_CACHE)")
      ->envname("RRLAB_CACHE");
  app.add_option("--order-bound", cfg.order_bound, "largest admissible group order for sweeps")
      ->default_val(512)
      ->check(CLI::PositiveNumber);

  // bernoulli --max-k K
  auto* cmd_bernoulli = app.add_subcommand("bernoulli", "print the Bernoulli constant table");
  cmd_bernoulli->fallthrough();
  int bern_max_k = 0;
  cmd_bernoulli->add_option("--max-k", bern_max_k, "largest index k")
      ->required()
      ->check(CLI::PositiveNumber);

  // fpd {enumerate, classes}
  auto* cmd_fpd = app.add_subcommand("fpd", "fixed point data of finite mapping classes");
  cmd_fpd->require_subcommand(1);
  cmd_fpd->fallthrough();
  auto* cmd_fpd_enum =
      cmd_fpd->add_subcommand("enumerate", "list every admissible datum for a genus and order");
  cmd_fpd_enum->fallthrough();
  std::int64_t fpd_genus = 0, fpd_order = 0;
  cmd_fpd_enum->add_option("--genus", fpd_genus)->required()->check(CLI::PositiveNumber);
  cmd_fpd_enum->add_option("--order", fpd_order)->required()->check(CLI::PositiveNumber);
  auto* cmd_fpd_classes =
      cmd_fpd->add_subcommand("classes", "restricted characteristic classes of a datum");
  cmd_fpd_classes->fallthrough();
  std::string classes_data;
  int classes_max_k = 0;
  cmd_fpd_classes->add_option("--data", classes_data, "datum, e.g. 2,5;1/5,1/5,3/5")->required();
  cmd_fpd_classes->add_option("--max-k", classes_max_k)->required()->check(CLI::PositiveNumber);

  // verify {main, voronoi, porubsky}
  auto* cmd_verify = app.add_subcommand("verify", "run congruence verdicts");
  cmd_verify->require_subcommand(1);
  cmd_verify->fallthrough();

  auto* cmd_main = cmd_verify->add_subcommand(
      "main", "characteristic-class congruence N' e = D' s for cyclic data");
  cmd_main->fallthrough();
  std::string main_data;
  int main_k = 0;
  std::int64_t main_genus_max = 0, main_order_max = 0;
  int main_k_max = 0;
  bool main_prime_powers = false;
  auto* opt_main_data = cmd_main->add_option("--data", main_data, "single datum to check");
  auto* opt_main_k = cmd_main->add_option("--k", main_k)->check(CLI::PositiveNumber);
  auto* opt_main_gmax =
      cmd_main->add_option("--genus-max", main_genus_max)->check(CLI::PositiveNumber);
  auto* opt_main_nmax =
      cmd_main->add_option("--order-max", main_order_max)->check(CLI::PositiveNumber);
  auto* opt_main_kmax = cmd_main->add_option("--k-max", main_k_max)->check(CLI::PositiveNumber);
  cmd_main->add_flag("--prime-powers-only", main_prime_powers);
  opt_main_data->needs(opt_main_k);
  opt_main_k->needs(opt_main_data);
  opt_main_data->excludes(opt_main_gmax)->excludes(opt_main_nmax)->excludes(opt_main_kmax);

  auto* cmd_voronoi =
      cmd_verify->add_subcommand("voronoi", "generalized Voronoi congruence mod p^(a+b)");
  cmd_voronoi->fallthrough();
  std::int64_t vor_p_max = 0, vor_c_max = 0;
  int vor_ab_max = 0, vor_k_max = 0;
  cmd_voronoi->add_option("--p-max", vor_p_max)->required()->check(CLI::PositiveNumber);
  cmd_voronoi->add_option("--ab-max", vor_ab_max)->required()->check(CLI::NonNegativeNumber);
  cmd_voronoi->add_option("--c-max", vor_c_max)->required()->check(CLI::PositiveNumber);
  cmd_voronoi->add_option("--k-max", vor_k_max)->required()->check(CLI::PositiveNumber);

  auto* cmd_porubsky =
      cmd_verify->add_subcommand("porubsky", "localized Bernoulli congruences mod N");
  cmd_porubsky->fallthrough();
  std::int64_t por_n_max = 0, por_c_max = 0;
  int por_k_max = 0;
  std::string por_eq = "por2";
  cmd_porubsky->add_option("--n-max", por_n_max)->required()->check(CLI::PositiveNumber);
  cmd_porubsky->add_option("--c-max", por_c_max)->required()->check(CLI::PositiveNumber);
  cmd_porubsky->add_option("--k-max", por_k_max)->required()->check(CLI::PositiveNumber);
  cmd_porubsky->add_option("--eq", por_eq, "which congruence (default por2)")
      ->check(CLI::IsMember({"por1", "por2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*cmd_bernoulli) return run_bernoulli(cfg, bern_max_k);
    if (*cmd_fpd_enum) return run_enumerate(cfg, fpd_genus, fpd_order);
    if (*cmd_fpd_classes) return run_classes(cfg, classes_data, classes_max_k);

    BernoulliTable table;
    load_cache(table, cfg);
    int code = 1;
    if (*cmd_main) {
      if (*opt_main_data) {
        code = result_exit(verify_main(parse_fpd(main_data), main_k, table), cfg);
      } else if (main_genus_max > 0 && main_order_max > 0 && main_k_max > 0) {
        code = report_exit(sweep_main(Range{2, main_genus_max}, Range{1, main_order_max},
                                      Range{1, main_k_max}, main_prime_powers, table,
                                      cfg.sweep_options()),
                           cfg);
      } else {
        std::cerr << "error: verify main needs either --data/--k or "
                     "--genus-max/--order-max/--k-max\n";
        return 1;
      }
    } else if (*cmd_voronoi) {
      code = report_exit(
          sweep_voronoi(vor_p_max, vor_ab_max, vor_c_max, vor_k_max, table, cfg.sweep_options()),
          cfg);
    } else if (*cmd_porubsky) {
      const PorubskyEq eq = por_eq == "por1" ? PorubskyEq::por1 : PorubskyEq::por2;
      code = report_exit(
          sweep_porubsky(por_n_max, por_c_max, por_k_max, eq, table, cfg.sweep_options()), cfg);
    }
    save_cache(table, cfg);
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int main(int argc, char** argv) { return run_cli(argc, argv); }
