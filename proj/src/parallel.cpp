#include "sievelab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sievelab {
namespace {

std::atomic<std::size_t> g_override{0};

std::size_t from_environment() {
    if (const char* env = std::getenv("SIEVELAB_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace

std::size_t worker_count() {
    if (const std::size_t o = g_override.load(); o != 0) return o;
    static const std::size_t env = from_environment();
    return env;
}

ScopedWorkerCount::ScopedWorkerCount(std::size_t workers)
    : previous_(g_override.exchange(workers == 0 ? 1 : workers)) {}

ScopedWorkerCount::~ScopedWorkerCount() { g_override.store(previous_); }

}  // namespace sievelab
