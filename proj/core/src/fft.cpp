#include "jsnl/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "jsnl/errors.hpp"

namespace jsnl::fft {
namespace {

// Plans are cached per (size, direction, in-place) and reused through the
// new-array execute interface. FFTW_UNALIGNED keeps them valid for arbitrary
// caller buffers; plan creation is serialized (FFTW planning is not
// thread-safe), execution is.
class PlanCache {
 public:
  fftw_plan get(int n, int sign, bool in_place) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(n, sign, in_place);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    fftw_complex* a = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_complex* b = in_place ? a : fftw_alloc_complex(static_cast<size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!in_place) fftw_free(b);
    fftw_free(a);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<const std::complex<double>> in, std::span<std::complex<double>> out,
             int sign) {
  if (in.size() != out.size()) raise(Errc::bad_argument, "fft size mismatch");
  const int n = static_cast<int>(in.size());
  if (n == 0) return;
  auto* src = reinterpret_cast<fftw_complex*>(
      const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan = cache().get(n, sign, src == dst);
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(in, out, FFTW_FORWARD);
}

void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(in, out, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
}

}  // namespace jsnl::fft
