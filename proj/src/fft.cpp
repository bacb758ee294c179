#include "fft.hpp"

#include "block_parallel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace wten::detail {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex planner_mutex;

// Tubes are gathered kBlock at a time into a scratch buffer whose row stride
// is padded off a power of two, so the p strided loads do not alias in cache.
// Fixed sizes keep results independent of the thread count.
constexpr Index kBlock = 64;
constexpr Index kStride = kBlock + 4;
constexpr Index kBlocksPerTask = 16;

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(Index count) {
  return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * static_cast<std::size_t>(count))));
}

enum class Direction { forward, backward };

struct PlanPair {
  fftw_plan full = nullptr;
  fftw_plan tail = nullptr;
};

// Plans live for the whole process, keyed by direction, length and block width.
fftw_plan cached_plan(Direction dir, Index p, Index width) {
  static std::map<std::tuple<Direction, Index, Index>, fftw_plan> cache;
  std::lock_guard lock(planner_mutex);
  auto [it, inserted] = cache.try_emplace({dir, p, width}, nullptr);
  if (!inserted) return it->second;
  const Index bins = p / 2 + 1;
  auto real = fftw_buffer<double>(kStride * p);
  auto spec = fftw_buffer<Complex>(kStride * bins);
  const int len = static_cast<int>(p);
  const int stride = static_cast<int>(kStride);
  const int howmany = static_cast<int>(width);
  it->second = dir == Direction::forward
                   ? fftw_plan_many_dft_r2c(1, &len, howmany, real.get(), nullptr, stride, 1,
                                            as_fftw(spec.get()), nullptr, stride, 1, FFTW_ESTIMATE)
                   : fftw_plan_many_dft_c2r(1, &len, howmany, as_fftw(spec.get()), nullptr, stride, 1,
                                            real.get(), nullptr, stride, 1, FFTW_ESTIMATE);
  return it->second;
}

PlanPair plans_for(Direction dir, Index p, Index n) {
  PlanPair plans;
  plans.full = cached_plan(dir, p, kBlock);
  if (n % kBlock != 0) plans.tail = cached_plan(dir, p, n % kBlock);
  return plans;
}

// Runs body(first, width, plan) for every block of tubes, grouped into tasks.
template <class Body>
void for_each_block(Index n, const PlanPair& plans, Body&& body) {
  const Index blocks = (n + kBlock - 1) / kBlock;
  const Index tasks = (blocks + kBlocksPerTask - 1) / kBlocksPerTask;
  parallel_for(tasks, [&](Index task) {
    auto state = body.prepare();
    const Index last = std::min(blocks, (task + 1) * kBlocksPerTask);
    for (Index blk = task * kBlocksPerTask; blk < last; ++blk) {
      const Index first = blk * kBlock;
      const Index width = std::min(kBlock, n - first);
      body.run(state, first, width, width == kBlock ? plans.full : plans.tail);
    }
  });
}

}  // namespace

HalfSpectrum mode3_rfft(const Tensor3& t) {
  const Index n = t.slice_size();
  const Index p = t.slices();
  const Index bins = p / 2 + 1;
  HalfSpectrum out(t.rows(), t.cols(), p);

  const PlanPair plans = plans_for(Direction::forward, p, n);

  struct Body {
    const Tensor3& t;
    HalfSpectrum& out;
    Index n, p, bins;
    struct State {
      FftwBuffer<double> real;
      FftwBuffer<Complex> spec;
    };
    State prepare() const { return {fftw_buffer<double>(kStride * p), fftw_buffer<Complex>(kStride * bins)}; }
    void run(State& s, Index first, Index width, fftw_plan plan) const {
      const double* src = t.data().data() + first;
      for (Index k = 0; k < p; ++k) std::copy_n(src + k * n, width, s.real.get() + k * kStride);
      fftw_execute_dft_r2c(plan, s.real.get(), as_fftw(s.spec.get()));
      Complex* dst = out.data() + first;
      for (Index k = 0; k < bins; ++k) std::copy_n(s.spec.get() + k * kStride, width, dst + k * n);
    }
  };
  for_each_block(n, plans, Body{t, out, n, p, bins});
  return out;
}

Tensor3 mode3_irfft(const HalfSpectrum& s) {
  const Index n = s.rows() * s.cols();
  const Index p = s.length();
  const Index bins = s.bins();
  Tensor3 out(s.rows(), s.cols(), p);

  const PlanPair plans = plans_for(Direction::backward, p, n);

  struct Body {
    const HalfSpectrum& s;
    Tensor3& out;
    Index n, p, bins;
    struct State {
      FftwBuffer<Complex> spec;
      FftwBuffer<double> real;
    };
    State prepare() const { return {fftw_buffer<Complex>(kStride * bins), fftw_buffer<double>(kStride * p)}; }
    void run(State& st, Index first, Index width, fftw_plan plan) const {
      const Complex* src = s.data() + first;
      for (Index k = 0; k < bins; ++k) std::copy_n(src + k * n, width, st.spec.get() + k * kStride);
      // c2r overwrites its input; the scratch copy absorbs that.
      fftw_execute_dft_c2r(plan, as_fftw(st.spec.get()), st.real.get());
      const double scale = 1.0 / static_cast<double>(p);
      double* dst = out.data().data() + first;
      for (Index k = 0; k < p; ++k) {
        const double* row = st.real.get() + k * kStride;
        for (Index e = 0; e < width; ++e) dst[k * n + e] = row[e] * scale;
      }
    }
  };
  for_each_block(n, plans, Body{s, out, n, p, bins});
  return out;
}

}  // namespace wten::detail
