#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "srso3/kernels.hpp"

namespace srso3::kernels {

#ifdef SRSO3_HAVE_AVX2
const Backend& avx2_backend_impl();
#endif

bool avx2_available() {
#ifdef SRSO3_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Backend& avx2_backend() {
#ifdef SRSO3_HAVE_AVX2
    if (avx2_available()) return avx2_backend_impl();
#endif
    throw std::runtime_error("AVX2 kernel backend is not available on this machine");
}

namespace {

const Backend* resolve(const char* name) {
    if (std::strcmp(name, "scalar") == 0) return &scalar_backend();
    if (std::strcmp(name, "avx2") == 0) return &avx2_backend();
    if (std::strcmp(name, "auto") == 0)
        return avx2_available() ? &avx2_backend() : &scalar_backend();
    throw std::invalid_argument(std::string("unknown kernel backend: ") + name);
}

std::atomic<const Backend*> g_forced{nullptr};

} // namespace

const Backend& active_backend() {
    if (const Backend* f = g_forced.load(std::memory_order_acquire)) return *f;
    static const Backend* env_choice = [] {
        const char* env = std::getenv("SRSO3_KERNEL");
        return resolve(env && *env ? env : "auto");
    }();
    return *env_choice;
}

void force_backend(const char* name) {
    if (std::strcmp(name, "auto") == 0) {
        g_forced.store(nullptr, std::memory_order_release);
        return;
    }
    g_forced.store(resolve(name), std::memory_order_release);
}

} // namespace srso3::kernels
