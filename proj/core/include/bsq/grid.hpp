#pragma once

#include <cstdint>

namespace bsq {

/// Periodic box [0, 2*pi)^3 sampled on an N^3 grid.
///
/// Retained integer wavevectors are k in {-N/2+1, ..., N/2} per axis;
/// the Nyquist plane k_i = N/2 is zeroed on field construction.
struct Grid {
  int n = 0;               // points per axis, even, >= 8
  int dealias_cutoff = 0;  // floor(n/3), 2/3 rule

  static Grid make(int n);

  long size() const { return static_cast<long>(n) * n * n; }

  /// Signed wavenumber for a storage index in [0, n).
  int wavenumber(int idx) const { return idx <= n / 2 ? idx : idx - n; }

  bool operator==(const Grid&) const = default;
};

inline constexpr double kBoxLength = 6.283185307179586476925286766559;  // 2*pi
inline constexpr double kBoxVolume =
    kBoxLength * kBoxLength * kBoxLength;  // (2*pi)^3

}  // namespace bsq
