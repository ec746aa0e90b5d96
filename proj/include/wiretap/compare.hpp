#pragma once

#include <string>

#include "wiretap/channels.hpp"
#include "wiretap/secrecy_rates.hpp"

namespace wiretap {

/// Which of the named binary noise structures a spec matches (several can
/// hold at once, e.g. identical marginals with independent noise).
struct BinaryStructure {
  bool binary = false;  // all five alphabets are binary
  bool noiseless = false;
  bool independent = false;
  bool degraded_main = false;     // N1 = N2 xor independent flip
  bool degraded_wiretap = false;  // N2 = N1 xor independent flip
  double eps = 0.0, delta = 0.0;  // noise marginals Pr{N1=1}, Pr{N2=1}
};

BinaryStructure detect_binary_structure(const ModAddChannelSpec& spec, double tol = 1e-9);

/// One comparison line: every rate the library computes for a binary wiretap
/// setting, side by side.
struct CompareRow {
  double eps, delta;
  double c_s;                     // no-feedback lower bound
  double c_sp_lower, c_sp_upper;  // public-discussion bounds
  bool c_sp_tight;                // bounds agree within 1e-9
  double c_sf;                    // full-duplex feedback capacity
  double hd_rate, hd_mu, hd_t;    // optimized half-duplex point
  BinaryStructure structure;
};

CompareRow build_compare_row(const BscWiretapSpec& spec, std::size_t grid_steps = 64);

}  // namespace wiretap
