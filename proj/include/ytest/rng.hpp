#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string_view>

namespace ytest::rng {

/// SplitMix64 finalizer; the mixing primitive behind key derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a hash of a label, passed through mix64.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Deterministic, splittable random stream.
///
/// The draw sequence is xoshiro256** seeded from a 64-bit key via SplitMix64.
/// Child streams are derived from the key alone, never from the draw state,
/// so derivation order and interleaving cannot disturb sibling streams.
class Stream {
public:
    explicit Stream(std::uint64_t key);

    /// Derives an independent stream for a numeric label.
    [[nodiscard]] Stream child(std::uint64_t label) const;
    /// Derives an independent stream for a string label (e.g. a node name).
    [[nodiscard]] Stream child(std::string_view label) const;

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double uniform01();
    /// Uniform over {lo, ..., hi}; hi - lo + 1 must be a power of two.
    std::uint64_t uniform_pow2(std::uint64_t lo, std::uint64_t hi);
    /// Standard normal via the Box-Muller transform (pairs cached).
    double normal();
    /// n independent standard normals.
    Eigen::VectorXd normals(Eigen::Index n);

    [[nodiscard]] std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t state_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace ytest::rng
