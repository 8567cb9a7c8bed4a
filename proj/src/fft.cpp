#include "bicomm/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace bicomm::fft {
namespace {

struct PlanKey {
  std::vector<int> dims;
  int sign;
  auto operator<=>(const PlanKey&) const = default;
};

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct AlignedDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using AlignedBuffer = std::unique_ptr<fftw_complex, AlignedDeleter>;

// Plans are created once per (extent, direction) and executed through the
// new-array interface, which FFTW documents as thread-safe.
class PlanCache {
 public:
  fftw_plan get(const PlanKey& key, std::size_t total) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second.get();
    AlignedBuffer scratch(fftw_alloc_complex(total));
    fftw_plan plan = fftw_plan_dft(static_cast<int>(key.dims.size()), key.dims.data(), scratch.get(),
                                   scratch.get(), key.sign, FFTW_ESTIMATE);
    plans_.emplace(key, PlanHandle(plan));
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<PlanKey, PlanHandle> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<std::complex<double>> data, std::span<const std::size_t> dims, int sign) {
  PlanKey key{{}, sign};
  std::size_t total = 1;
  for (auto d : dims) {
    key.dims.push_back(static_cast<int>(d));
    total *= d;
  }
  fftw_plan plan = cache().get(key, total);
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  if (fftw_alignment_of(reinterpret_cast<double*>(raw)) == 0) {
    fftw_execute_dft(plan, raw, raw);
    return;
  }
  AlignedBuffer buf(fftw_alloc_complex(total));
  auto* aligned = reinterpret_cast<std::complex<double>*>(buf.get());
  std::copy_n(data.data(), total, aligned);
  fftw_execute_dft(plan, buf.get(), buf.get());
  std::copy_n(aligned, total, data.data());
}

}  // namespace

void forward(std::span<std::complex<double>> data, std::span<const std::size_t> dims) {
  execute(data, dims, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

void inverse(std::span<std::complex<double>> data, std::span<const std::size_t> dims) {
  execute(data, dims, FFTW_BACKWARD);
}

}  // namespace bicomm::fft
