#include "plasticwalk/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include "plasticwalk/errors.hpp"

namespace plasticwalk {

double ring_momentum(std::size_t n, std::size_t sites, double dx) {
  const auto nn = static_cast<std::ptrdiff_t>(n);
  const auto ns = static_cast<std::ptrdiff_t>(sites);
  const std::ptrdiff_t signed_n = 2 * nn < ns ? nn : nn - ns;
  return 2.0 * kPi * static_cast<double>(signed_n) / (static_cast<double>(sites) * dx);
}

std::vector<double> ring_momenta(std::size_t sites, double dx) {
  std::vector<double> k(sites);
  for (std::size_t n = 0; n < sites; ++n) k[n] = ring_momentum(n, sites, dx);
  return k;
}

std::vector<cplx> dft_forward(const std::vector<cplx>& values) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, values);
  return out;
}

std::vector<cplx> dft_inverse(const std::vector<cplx>& values) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, values);
  return out;
}

FieldSpectrum field_spectrum(const SpinorField& field) {
  std::vector<cplx> p(field.size()), m(field.size());
  for (std::size_t l = 0; l < field.size(); ++l) {
    p[l] = field[l].plus;
    m[l] = field[l].minus;
  }
  return {dft_forward(p), dft_forward(m)};
}

SpinorField field_from_spectrum(const FieldSpectrum& spectrum, double dx) {
  const auto p = dft_inverse(spectrum.plus);
  const auto m = dft_inverse(spectrum.minus);
  SpinorField out(p.size(), dx);
  for (std::size_t l = 0; l < p.size(); ++l) out[l] = {p[l], m[l]};
  return out;
}

namespace {

std::vector<cplx> pad_spectrum(const std::vector<cplx>& coarse, std::size_t factor) {
  const std::size_t n = coarse.size();
  const std::size_t nf = n * factor;
  std::vector<cplx> fine(nf, cplx{});
  const double scale = static_cast<double>(factor);
  const std::size_t half = n / 2;
  if (n % 2 == 0) {
    for (std::size_t j = 0; j < half; ++j) fine[j] = scale * coarse[j];
    for (std::size_t j = half + 1; j < n; ++j) fine[nf - n + j] = scale * coarse[j];
    fine[half] += 0.5 * scale * coarse[half];
    fine[nf - half] += 0.5 * scale * coarse[half];
  } else {
    for (std::size_t j = 0; j <= half; ++j) fine[j] = scale * coarse[j];
    for (std::size_t j = half + 1; j < n; ++j) fine[nf - n + j] = scale * coarse[j];
  }
  return fine;
}

}  // namespace

SpinorField trig_interpolate(const SpinorField& field, std::size_t factor) {
  if (factor == 0) throw DomainError("interpolation factor must be >= 1");
  if (factor == 1) return field;
  const FieldSpectrum s = field_spectrum(field);
  return field_from_spectrum({pad_spectrum(s.plus, factor), pad_spectrum(s.minus, factor)},
                             field.dx() / static_cast<double>(factor));
}

SpinorField restrict_to_coarse(const SpinorField& fine, std::size_t factor) {
  if (factor == 0 || fine.size() % factor != 0) throw DomainError("restriction factor must divide the fine size");
  const std::size_t n = fine.size() / factor;
  SpinorField out(n, fine.dx() * static_cast<double>(factor));
  for (std::size_t l = 0; l < n; ++l) out[l] = fine[l * factor];
  return out;
}

}  // namespace plasticwalk
