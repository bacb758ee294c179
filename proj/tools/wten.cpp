#include "wten/baselines.hpp"
#include "wten/commands.hpp"
#include "wten/error.hpp"
#include "wten/io.hpp"
#include "wten/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

void add_common(CLI::App* cmd, wten::RunConfig& cfg, std::string& method, std::string& format) {
  cmd->add_option("--input", cfg.input, "input tensor (.npy)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--method", method, "w, spw or t")->capture_default_str();
  cmd->add_option("--levels", cfg.levels, "wavelet levels (default: max for p)");
  cmd->add_option("--out", cfg.output, "reconstruction (.npy)");
  cmd->add_option("--preview", cfg.preview, "band-mean preview (.pgm), default next to --out");
  cmd->add_option("--report", cfg.report, "report file");
  cmd->add_option("--format", format, "report format: json or csv")->capture_default_str();
  cmd->add_option("--reps", cfg.repetitions, "timed repetitions")->capture_default_str();
  cmd->add_option("--mpp", cfg.mpp, "maximum pixel value (default: max over input and result)");
  cmd->add_flag("!--no-baseline", cfg.compare_t, "skip timing the t baseline");
}

wten::Band parse_band(const std::string& text) {
  if (text == "mean") return wten::Band::average();
  std::size_t used = 0;
  long k = 0;
  try {
    k = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw wten::ValueError("band must be 'mean' or a 1-based slice index");
  return wten::Band::slice(static_cast<wten::Index>(k) - 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wten: third-order tensor products, factorisations and deblurring"};
  app.require_subcommand(1);

  wten::RunConfig cfg;
  std::string method = "w";
  std::string format = "json";

  CLI::App* svd = app.add_subcommand("svd", "rank-r tensor approximation");
  add_common(svd, cfg, method, format);
  svd->add_option("--rank", cfg.rank, "truncation rank")->required();

  CLI::App* deblur = app.add_subcommand("deblur", "synthetic blur and least-squares deblur");
  add_common(deblur, cfg, method, format);
  deblur->add_option("--bv", cfg.bv, "vertical blur length")->capture_default_str();
  deblur->add_option("--bh", cfg.bh, "horizontal blur length")->capture_default_str();
  deblur->add_option("--blurred", cfg.blurred, "pre-blurred tensor (.npy)")->check(CLI::ExistingFile);

  CLI::App* bench = app.add_subcommand("bench", "time m, t and w products on random cubes");
  bench->add_option("--pmin", cfg.pmin, "smallest p")->capture_default_str();
  bench->add_option("--pmax", cfg.pmax, "largest p")->capture_default_str();
  bench->add_option("--reps", cfg.repetitions, "timed repetitions")->capture_default_str();
  bench->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  bench->add_option("--levels", cfg.levels, "cap on wavelet levels");
  bench->add_option("--format", format, "json or csv")->capture_default_str();
  bench->add_option("--report", cfg.report, "report file (default: stdout)");

  std::string kind = "w";
  wten::Index n1 = 0, n2 = 0, n3 = 0, p = 0;
  CLI::App* opcount = app.add_subcommand("opcount", "closed-form operation count");
  opcount->add_option("--kind", kind, "m, t or w")->required();
  opcount->add_option("--n1", n1)->required();
  opcount->add_option("--n2", n2)->required();
  opcount->add_option("--n3", n3)->required();
  opcount->add_option("--p", p)->required();

  std::string band = "mean";
  CLI::App* preview = app.add_subcommand("preview", "write a PGM of one band or the band mean");
  preview->add_option("--input", cfg.input, "tensor (.npy)")->required()->check(CLI::ExistingFile);
  preview->add_option("--band", band, "'mean' or a 1-based slice index")->capture_default_str();
  preview->add_option("--out", cfg.preview, "output (.pgm)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    wten::configure_threads_from_env();
    cfg.method = wten::parse_method(method);
    cfg.format = wten::parse_report_format(format);

    if (*svd) {
      const wten::BenchRecord r = wten::cmd_svd(cfg);
      std::cout << wten::to_json(r);
    } else if (*deblur) {
      const wten::BenchRecord r = wten::cmd_deblur(cfg);
      std::cout << wten::to_json(r);
    } else if (*bench) {
      const auto records = wten::cmd_bench(cfg);
      if (cfg.report.empty()) {
        std::cout << (cfg.format == wten::ReportFormat::csv ? wten::to_csv(records)
                                                            : wten::to_json(records));
      }
    } else if (*opcount) {
      std::cout << wten::op_count(wten::parse_method(kind), n1, n2, n3, p).count << '\n';
    } else if (*preview) {
      wten::save_preview(wten::load_tensor(cfg.input), cfg.preview, parse_band(band));
    }
  } catch (const wten::FormatError& e) {
    std::cerr << "wten: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "wten: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
