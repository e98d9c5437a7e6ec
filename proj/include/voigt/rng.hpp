#pragma once

#include <cstdint>
#include <random>

namespace voigt {

/// Seedable source of uniform and standard-normal variates. Identical
/// (seed, stream_id) pairs reproduce the same sequence; distinct stream ids
/// seed the engine through std::seed_seq and give unrelated sequences.
///
/// Single owner: concurrent tasks each hold their own stream.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on (0, 1]; safe to pass to log().
    double uniform_pos();
    double normal();
    /// Exponential with the given rate.
    double exponential(double rate);

    /// A child stream keyed on this stream's (seed, stream_id), for nested studies.
    RngStream split(std::uint64_t child_id) const;

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Mixes a seed with a study key (e.g. a sample size) into a new seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key);

}  // namespace voigt
