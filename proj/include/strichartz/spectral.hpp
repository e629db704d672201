#pragma once

#include "strichartz/cutoff.hpp"
#include "strichartz/fft.hpp"
#include "strichartz/fourier_state.hpp"
#include "strichartz/region.hpp"

namespace strichartz {

// Sharp projection: keep coefficients whose frequency lies in the region.
FourierState project(const FourierState& s, const FrequencyRegion& region);

// Smooth Littlewood-Paley projection P_N: multiply by psi_N(|n|).
FourierState project(const FourierState& s, const DyadicCutoff& cutoff);

// P_{<=N}: multiply by the telescoped symbol psi(|n|/N).
FourierState project_le(const FourierState& s, long N);

// Linear propagator of section-2 convention: coefficients gain e^{2 pi i Q(n) t}.
FourierState propagate(const FourierState& s, double t);

// Evaluate the trigonometric polynomial on the uniform G^d grid x_m = m/G via
// zero-padded inverse FFT. Requires G > 2 max_j |n_j| (Nyquist), exact up to
// roundoff.
Grid sample_grid(const FourierState& s, int grid_per_dim);

}  // namespace strichartz
