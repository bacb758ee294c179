#pragma once

#include "wten/baselines.hpp"
#include "wten/tensor.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace wten {

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(std::string_view text);

struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path output;   ///< reconstruction (NPY); empty = not written
  std::filesystem::path report;   ///< empty = not written
  std::filesystem::path preview;  ///< PGM of the band mean; empty = next to output
  std::filesystem::path blurred;  ///< deblur: pre-blurred input instead of synthesising one

  std::optional<int> levels;  ///< default max_levels(p)
  Index rank = 0;
  Method method = Method::w;
  Index bv = 1;
  Index bh = 1;
  std::uint64_t seed = 0;
  int repetitions = 10;
  ReportFormat format = ReportFormat::json;

  bool compare_t = true;  ///< also time the t baseline so speedup_vs_t is filled
  std::optional<double> mpp;  ///< default: max_pixel_value over original and result

  // bench ladder: cubes p x p x p for p = pmin, 2 pmin, ..., pmax
  Index pmin = 2;
  Index pmax = 512;
};

struct BenchRecord {
  std::string method;
  std::array<Index, 3> shape{};  ///< n1, n2, p
  int levels = 0;
  Index rank = 0;
  double time_median_s = 0.0;
  double time_mean_s = 0.0;
  std::uint64_t op_count = 0;
  std::optional<double> psnr_db;
  std::optional<double> psnr_db_std;
  std::optional<double> ssim;
  std::optional<double> speedup_vs_t;
  int threads = 1;
  int repetitions = 0;
};

struct Timing {
  double median = 0.0;
  double mean = 0.0;
  std::vector<double> samples;
};

/// Runs fn once as warm-up (discarded), then `repetitions` timed runs on the
/// monotonic clock. repetitions == 1 is allowed but warns. Throws ValueError
/// for repetitions < 1.
Timing time_repeated(int repetitions, const std::function<void()>& fn);

/// Report serialisation. JSON numbers that are infinite are written as the
/// string "inf"; absent optional fields are null (JSON) or empty (CSV).
std::string to_json(const BenchRecord& r);
std::string to_json(const std::vector<BenchRecord>& records);
std::string to_csv(const std::vector<BenchRecord>& records);
void write_report(const std::vector<BenchRecord>& records, const std::filesystem::path& path,
                  ReportFormat format);

struct SvdOutcome {
  BenchRecord record;
  Tensor3 reconstruction;
};

struct DeblurOutcome {
  BenchRecord record;
  Tensor3 blurred;
  Tensor3 reconstruction;
};

/// Rank-r approximation of x by cfg.method (w, spw or t) with timings and
/// quality against x.
SvdOutcome run_svd(const Tensor3& x, const RunConfig& cfg);

/// Blurs x with the operators for (cfg.bv, cfg.bh) under cfg.method's product
/// unless `blurred` is given, deblurs by cfg.method and scores the result against x.
/// The t baseline timed for speedup_vs_t deblurs the same blurred tensor.
DeblurOutcome run_deblur(const Tensor3& x, const RunConfig& cfg,
                         const Tensor3* blurred = nullptr);

/// Times m, t and w products on random cubes over the p ladder.
std::vector<BenchRecord> run_bench(const RunConfig& cfg);

/// File-driven variants: read cfg.input, write cfg.output / preview / report.
BenchRecord cmd_svd(const RunConfig& cfg);
BenchRecord cmd_deblur(const RunConfig& cfg);
std::vector<BenchRecord> cmd_bench(const RunConfig& cfg);

}  // namespace wten
