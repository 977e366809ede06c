#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <span>

#include "dnls/grid.hpp"

namespace dnls {

/// Complex 1-D DFT of fixed length backed by FFTW.
///
/// Plans are built with FFTW_ESTIMATE so results are reproducible run to run.
/// The inverse is normalized by 1/N. One instance is not thread-safe; use
/// Fft::local(n) for a per-thread cached instance.
class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (buf_ == nullptr) throw std::bad_alloc();
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buf_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  [[nodiscard]] std::size_t size() const { return n_; }

  /// out_k = sum_j in_j e^{-2 pi i jk/N}. in and out may alias.
  void forward(std::span<const Complex> in, std::span<Complex> out) { run(forward_, in, out, 1.0); }

  /// out_j = (1/N) sum_k in_k e^{2 pi i jk/N}. in and out may alias.
  void inverse(std::span<const Complex> in, std::span<Complex> out) {
    run(backward_, in, out, 1.0 / static_cast<double>(n_));
  }

  static Fft& local(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<Fft>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Fft>(n);
    return *slot;
  }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  void run(fftw_plan plan, std::span<const Complex> in, std::span<Complex> out, double scale) {
    // std::complex<double> is layout-compatible with fftw_complex.
    std::memcpy(buf_, in.data(), sizeof(fftw_complex) * n_);
    fftw_execute(plan);
    const auto* b = reinterpret_cast<const Complex*>(buf_);
    if (scale == 1.0) {
      std::memcpy(out.data(), b, sizeof(fftw_complex) * n_);
    } else {
      for (std::size_t j = 0; j < n_; ++j) out[j] = b[j] * scale;
    }
  }

  std::size_t n_;
  fftw_complex* buf_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace dnls
