#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "jobs.hpp"

namespace cli = gaugeworks::cli;

namespace {

struct Options {
  std::vector<std::string> files;
  std::optional<std::int64_t> prime;
  std::string report;
  unsigned jobs = 1;
};

cli::JobOutcome run_file(const std::string& path, const Options& opt, cli::Mode mode) {
  const std::string label = std::filesystem::path(path).filename().string();
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    cli::JobOutcome out;
    out.code = cli::ExitCode::schema;
    out.message = label + ": schema error: cannot read " + path;
    out.report = {{"job", label}, {"status", "schema_error"}, {"message", out.message}};
    return out;
  }
  std::ostringstream text;
  text << in.rdbuf();
  return cli::run_job(label, text.str(), opt.prime, mode);
}

// Jobs run on up to opt.jobs threads; output is assembled in input order.
int run_files(const Options& opt, cli::Mode mode) {
  std::vector<cli::JobOutcome> outcomes(opt.files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < opt.files.size();) outcomes[k] = run_file(opt.files[k], opt, mode);
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(opt.files.size())));
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  cli::Json reports = cli::Json::array();
  for (const auto& o : outcomes) {
    std::cout << o.table;
    if (!o.message.empty()) std::cerr << o.message << "\n";
    if (code == 0) code = static_cast<int>(o.code);
    reports.push_back(o.report);
  }
  if (!opt.report.empty()) {
    std::ofstream out(opt.report, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write report " << opt.report << "\n";
      return 1;
    }
    out << cli::Json{{"format", 1}, {"jobs", reports}}.dump(2) << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaugeworks: exact syntomic cohomology at the arithmetic point"};
  app.require_subcommand(1);

  Options compute_opt, check_opt;
  for (auto [name, help, opt] : {std::tuple{"compute", "compute the requested outputs of job files", &compute_opt},
                                 std::tuple{"check", "validate the laws of job files", &check_opt}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("files", opt->files, "job files (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--prime", opt->prime, "prime p; must agree with the job's prime if it has one");
    sub->add_option("--report", opt->report, "write a JSON report to this path");
    sub->add_option("--jobs", opt->jobs, "number of job files processed in parallel")->check(CLI::Range(1u, 256u));
  }

  std::string kind;
  std::int64_t prime = 0;
  int from = -5, to = 5;
  CLI::App* table = app.add_subcommand("table", "print twist tables");
  table->add_option("--kind", kind, "filphi, fgauge or reduced")
      ->required()
      ->check(CLI::IsMember({"filphi", "fgauge", "reduced"}));
  table->add_option("--prime", prime, "prime p")->required();
  table->add_option("--from", from, "first twist");
  table->add_option("--to", to, "last twist");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (app.got_subcommand("compute")) return run_files(compute_opt, cli::Mode::compute);
  if (app.got_subcommand("check")) return run_files(check_opt, cli::Mode::check);
  try {
    std::cout << cli::twist_table(kind, prime, from, to);
  } catch (const std::exception& e) {
    std::cerr << "table: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
