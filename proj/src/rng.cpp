#include "voigt/rng.hpp"

#include <cmath>

namespace voigt {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    return std::mt19937_64(seq);
}

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RngStream::uniform() {
    const double u = std::generate_canonical<double, 53>(engine_);
    // generate_canonical may round up to exactly 1 (LWG 2524).
    return u < 1.0 ? u : std::nextafter(1.0, 0.0);
}

double RngStream::uniform_pos() { return 1.0 - uniform(); }

double RngStream::normal() { return normal_(engine_); }

double RngStream::exponential(double rate) {
    return std::exponential_distribution<double>(rate)(engine_);
}

RngStream RngStream::split(std::uint64_t child_id) const {
    return RngStream(derive_seed(seed_, stream_id_), child_id);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
    return mix64(seed ^ mix64(key));
}

}  // namespace voigt
