#pragma once

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "hartree_inverse/common.hpp"

namespace hinv {

/// RAII wrapper around an in-place complex FFTW plan pair (forward uses the
/// e^{-2 pi i jk/n} sign). Plans are created once per size and reused; plan
/// creation is serialized, execution is const and thread-safe.
class FftPlan {
 public:
  FftPlan(int rank, int n) : rank_(rank), n_(n) {
    std::vector<cplx> scratch(static_cast<std::size_t>(count()));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (rank == 1) {
      fwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags);
      bwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags);
    } else if (rank == 3) {
      fwd_ = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, flags);
      bwd_ = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, flags);
    } else {
      throw std::invalid_argument("FftPlan: rank must be 1 or 3");
    }
    if (!fwd_ || !bwd_) throw numerical_error("FftPlan: fftw plan creation failed");
  }

  ~FftPlan() {
    if (fwd_) fftw_destroy_plan(fwd_);
    if (bwd_) fftw_destroy_plan(bwd_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  [[nodiscard]] std::size_t count() const {
    std::size_t c = 1;
    for (int r = 0; r < rank_; ++r) c *= static_cast<std::size_t>(n_);
    return c;
  }

  void forward(cplx* data) const {
    fftw_execute_dft(fwd_, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
  }
  void backward(cplx* data) const {
    fftw_execute_dft(bwd_, reinterpret_cast<fftw_complex*>(data), reinterpret_cast<fftw_complex*>(data));
  }

  /// Shared plan per (rank, n).
  static const FftPlan& get(int rank, int n) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::unique_ptr<FftPlan>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto& slot = cache[{rank, n}];
    if (!slot) slot = std::make_unique<FftPlan>(rank, n);
    return *slot;
  }

 private:
  int rank_;
  int n_;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

}  // namespace hinv
