#include "wten/commands.hpp"

#include "wten/decomposition.hpp"
#include "wten/error.hpp"
#include "wten/imaging.hpp"
#include "wten/io.hpp"
#include "wten/lifting.hpp"
#include "wten/log.hpp"
#include "wten/parallel.hpp"
#include "wten/walgebra.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace wten {

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  throw ValueError("unknown report format '" + std::string(text) + "' (expected json or csv)");
}

Timing time_repeated(int repetitions, const std::function<void()>& fn) {
  if (repetitions < 1) throw ValueError("repetitions must be at least 1");
  if (repetitions == 1) warn("timing with a single repetition; median and mean carry no variance information");
  using clock = std::chrono::steady_clock;
  fn();
  Timing t;
  t.samples.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) {
    const auto start = clock::now();
    fn();
    t.samples.push_back(std::chrono::duration<double>(clock::now() - start).count());
  }
  std::vector<double> sorted = t.samples;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  t.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  t.mean = std::accumulate(t.samples.begin(), t.samples.end(), 0.0) / static_cast<double>(n);
  return t;
}

// ---------------------------------------------------------------- reports

namespace {

using nlohmann::ordered_json;

ordered_json number(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  if (std::isnan(*v)) return "nan";
  return *v;
}

ordered_json record_json(const BenchRecord& r) {
  ordered_json j;
  j["method"] = r.method;
  j["shape"] = {r.shape[0], r.shape[1], r.shape[2]};
  j["levels"] = r.levels;
  j["rank"] = r.rank;
  j["time_median_s"] = r.time_median_s;
  j["time_mean_s"] = r.time_mean_s;
  j["op_count"] = r.op_count;
  j["psnr_db"] = number(r.psnr_db);
  j["psnr_db_std"] = number(r.psnr_db_std);
  j["ssim"] = number(r.ssim);
  j["speedup_vs_t"] = number(r.speedup_vs_t);
  j["threads"] = r.threads;
  j["repetitions"] = r.repetitions;
  return j;
}

std::string csv_number(const std::optional<double>& v) {
  if (!v) return "";
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.precision(17);
  s << *v;
  return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string to_json(const BenchRecord& r) { return record_json(r).dump(2) + "\n"; }

std::string to_json(const std::vector<BenchRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const BenchRecord& r : records) arr.push_back(record_json(r));
  return arr.dump(2) + "\n";
}

std::string to_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream s;
  s << "method,n1,n2,p,levels,rank,time_median_s,time_mean_s,op_count,psnr_db,psnr_db_std,ssim,"
       "speedup_vs_t,threads,repetitions\n";
  for (const BenchRecord& r : records) {
    s << r.method << ',' << r.shape[0] << ',' << r.shape[1] << ',' << r.shape[2] << ','
      << r.levels << ',' << r.rank << ',' << csv_number(r.time_median_s) << ','
      << csv_number(r.time_mean_s) << ',' << r.op_count << ',' << csv_number(r.psnr_db) << ','
      << csv_number(r.psnr_db_std) << ',' << csv_number(r.ssim) << ','
      << csv_number(r.speedup_vs_t) << ',' << r.threads << ',' << r.repetitions << '\n';
  }
  return s.str();
}

void write_report(const std::vector<BenchRecord>& records, const std::filesystem::path& path,
                  ReportFormat format) {
  if (format == ReportFormat::csv) {
    write_text(path, to_csv(records));
  } else if (records.size() == 1) {
    write_text(path, to_json(records.front()));
  } else {
    write_text(path, to_json(records));
  }
}

// ---------------------------------------------------------------- commands

namespace {

int resolve_levels(const RunConfig& cfg, Index p) {
  const int levels = cfg.levels.value_or(max_levels(p));
  require_levels(p, levels);
  return levels;
}

BenchRecord base_record(Method method, const Tensor3& x, int levels, const RunConfig& cfg) {
  BenchRecord r;
  r.method = std::string(to_string(method));
  r.shape = {x.rows(), x.cols(), x.slices()};
  r.levels = method == Method::t ? 0 : levels;
  r.rank = cfg.rank;
  r.threads = thread_count();
  r.repetitions = cfg.repetitions;
  return r;
}

void fill_timing(BenchRecord& r, const Timing& t) {
  r.time_median_s = t.median;
  r.time_mean_s = t.mean;
}

void fill_quality(BenchRecord& r, const Tensor3& x, const Tensor3& y, const RunConfig& cfg) {
  const QualityReport q = quality(x, y, cfg.mpp);
  r.psnr_db = q.psnr;
  r.psnr_db_std = q.psnr_std;
  r.ssim = q.ssim;
}

Tensor3 approximate(const Tensor3& x, Method method, Index rank, int levels) {
  switch (method) {
    case Method::w: return w_svd(x, rank, levels).reconstruction;
    case Method::spw: return sp_w_svd(x, rank, levels);
    case Method::t: return t_svd(x, rank);
    case Method::m: break;
  }
  throw ValueError("svd supports methods w, spw and t");
}

void emit_outputs(const RunConfig& cfg, const Tensor3& y, const BenchRecord& record) {
  if (!cfg.output.empty()) save_tensor(y, cfg.output);
  std::filesystem::path preview = cfg.preview;
  if (preview.empty() && !cfg.output.empty()) {
    preview = cfg.output;
    preview.replace_extension(".pgm");
  }
  if (!preview.empty()) save_preview(y, preview, Band::average());
  if (!cfg.report.empty()) write_report({record}, cfg.report, cfg.format);
}

}  // namespace

SvdOutcome run_svd(const Tensor3& x, const RunConfig& cfg) {
  if (cfg.method == Method::m) throw ValueError("svd supports methods w, spw and t");
  const Index q = std::min(x.rows(), x.cols());
  if (cfg.rank < 1 || cfg.rank > q) {
    throw RankError("rank " + std::to_string(cfg.rank) + " outside [1, " + std::to_string(q) + "]");
  }
  const int levels = resolve_levels(cfg, x.slices());

  SvdOutcome out;
  out.record = base_record(cfg.method, x, levels, cfg);
  out.record.op_count = svd_op_count(cfg.method, x.rows(), x.cols(), x.slices(), levels);

  const Timing timing = time_repeated(cfg.repetitions, [&] {
    out.reconstruction = approximate(x, cfg.method, cfg.rank, levels);
  });
  fill_timing(out.record, timing);
  if (cfg.method == Method::t) {
    out.record.speedup_vs_t = 1.0;
  } else if (cfg.compare_t) {
    Tensor3 sink;
    const Timing base = time_repeated(cfg.repetitions, [&] { sink = t_svd(x, cfg.rank); });
    out.record.speedup_vs_t = base.median / timing.median;
  }
  fill_quality(out.record, x, out.reconstruction, cfg);
  return out;
}

DeblurOutcome run_deblur(const Tensor3& x, const RunConfig& cfg, const Tensor3* blurred) {
  if (cfg.method == Method::m) throw ValueError("deblur supports methods w, spw and t");
  const int levels = resolve_levels(cfg, x.slices());
  const BlurOperators ops = blur_operator({cfg.bv, cfg.bh, x.rows(), x.cols(), x.slices()});

  DeblurOutcome out;
  if (blurred != nullptr) {
    require_same_shape(x, *blurred, "deblur input");
    out.blurred = *blurred;
  } else {
    out.blurred = blur(x, ops.vertical, ops.horizontal, levels, cfg.method);
  }
  out.record = base_record(cfg.method, x, levels, cfg);
  out.record.rank = 0;
  out.record.op_count = deblur_op_count(cfg.method, x.rows(), x.cols(), x.slices(), levels);

  const Timing timing = time_repeated(cfg.repetitions, [&] {
    out.reconstruction = deblur(out.blurred, ops.vertical, ops.horizontal, levels, cfg.method);
  });
  fill_timing(out.record, timing);
  if (cfg.method == Method::t) {
    out.record.speedup_vs_t = 1.0;
  } else if (cfg.compare_t) {
    Tensor3 sink;
    const Timing base = time_repeated(cfg.repetitions, [&] {
      sink = deblur(out.blurred, ops.vertical, ops.horizontal, levels, Method::t);
    });
    out.record.speedup_vs_t = base.median / timing.median;
  }
  fill_quality(out.record, x, out.reconstruction, cfg);
  return out;
}

std::vector<BenchRecord> run_bench(const RunConfig& cfg) {
  if (cfg.pmin < 1 || cfg.pmax < cfg.pmin) throw ValueError("bench: need 1 <= pmin <= pmax");
  std::vector<BenchRecord> records;
  for (Index p = cfg.pmin; p <= cfg.pmax; p *= 2) {
    const Tensor3 a = Tensor3::random_uniform(p, p, p, cfg.seed);
    const Tensor3 b = Tensor3::random_uniform(p, p, p, cfg.seed + 1);
    const int levels = cfg.levels ? std::min(*cfg.levels, max_levels(p)) : max_levels(p);
    const ModeTransform dct = ModeTransform::dct(p);

    Tensor3 sink;
    std::array<Timing, 3> timings;
    const std::array<Method, 3> methods{Method::m, Method::t, Method::w};
    timings[0] = time_repeated(cfg.repetitions, [&] { sink = m_product(a, b, dct); });
    timings[1] = time_repeated(cfg.repetitions, [&] { sink = t_product(a, b); });
    timings[2] = time_repeated(cfg.repetitions, [&] { sink = w_product(a, b, levels); });

    for (std::size_t i = 0; i < methods.size(); ++i) {
      BenchRecord r;
      r.method = std::string(to_string(methods[i]));
      r.shape = {p, p, p};
      r.levels = methods[i] == Method::w ? levels : 0;
      r.op_count = op_count(methods[i], p, p, p, p).count;
      r.threads = thread_count();
      r.repetitions = cfg.repetitions;
      fill_timing(r, timings[i]);
      r.speedup_vs_t = timings[1].median / timings[i].median;
      records.push_back(r);
    }
  }
  return records;
}

BenchRecord cmd_svd(const RunConfig& cfg) {
  const Tensor3 x = load_tensor(cfg.input);
  const SvdOutcome out = run_svd(x, cfg);
  emit_outputs(cfg, out.reconstruction, out.record);
  return out.record;
}

BenchRecord cmd_deblur(const RunConfig& cfg) {
  const Tensor3 x = load_tensor(cfg.input);
  DeblurOutcome out;
  if (!cfg.blurred.empty()) {
    const Tensor3 b = load_tensor(cfg.blurred);
    out = run_deblur(x, cfg, &b);
  } else {
    out = run_deblur(x, cfg);
  }
  emit_outputs(cfg, out.reconstruction, out.record);
  return out.record;
}

std::vector<BenchRecord> cmd_bench(const RunConfig& cfg) {
  std::vector<BenchRecord> records = run_bench(cfg);
  if (!cfg.report.empty()) write_report(records, cfg.report, cfg.format);
  return records;
}

}  // namespace wten
