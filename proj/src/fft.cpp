#include "decon/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "decon/errors.hpp"

namespace decon {

namespace {
// FFTW plan creation is not thread-safe; execution of distinct plans is.
std::mutex plan_mutex;
}  // namespace

void fft_nd(std::vector<std::complex<double>>& data, const std::vector<int>& shape,
            int sign) {
  require(!shape.empty(), ErrorCode::validation, "fft shape must be non-empty");
  size_t n = 1;
  for (int s : shape) {
    require(s > 0, ErrorCode::validation, "fft shape entries must be positive");
    n *= static_cast<size_t>(s);
  }
  require(data.size() == n, ErrorCode::validation, "fft data/shape mismatch");

  // Work in fftw-allocated buffers so plans always see aligned memory and
  // pick the same codelets run to run.
  fftw_complex* buf = fftw_alloc_complex(n);
  require(buf != nullptr, ErrorCode::numeric, "fft buffer allocation failed");
  std::memcpy(buf, data.data(), n * sizeof(fftw_complex));

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), buf, buf,
                         sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  require(plan != nullptr, ErrorCode::numeric, "fft planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
  std::memcpy(data.data(), buf, n * sizeof(fftw_complex));
  fftw_free(buf);
}

}  // namespace decon
