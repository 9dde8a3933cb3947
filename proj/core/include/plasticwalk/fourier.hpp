#pragma once

#include <cstddef>
#include <vector>

#include "plasticwalk/types.hpp"

namespace plasticwalk {

/// Momentum of FFT bin n on a ring of N sites, mapped into [-pi/dx, pi/dx).
double ring_momentum(std::size_t n, std::size_t sites, double dx);
/// All ring momenta in FFT bin order.
std::vector<double> ring_momenta(std::size_t sites, double dx);

/// Unnormalized forward DFT, sum_l f_l e^{-2 pi i n l / N}.
std::vector<cplx> dft_forward(const std::vector<cplx>& values);
/// Inverse of dft_forward (includes the 1/N).
std::vector<cplx> dft_inverse(const std::vector<cplx>& values);

/// Componentwise spectra of a field: (plus-hat, minus-hat), FFT bin order.
struct FieldSpectrum {
  std::vector<cplx> plus;
  std::vector<cplx> minus;
};
FieldSpectrum field_spectrum(const SpinorField& field);
SpinorField field_from_spectrum(const FieldSpectrum& spectrum, double dx);

/// Trigonometric interpolation onto a grid `factor` times finer (zero
/// padding; an even-N Nyquist coefficient is split between +-pi/dx).
/// Sample values are kept, so restrict(trig_interpolate(f, r), r) == f.
SpinorField trig_interpolate(const SpinorField& field, std::size_t factor);

/// Keeps every `factor`-th site.
SpinorField restrict_to_coarse(const SpinorField& fine, std::size_t factor);

}  // namespace plasticwalk
