#include <doctest.h>

#include <numbers>

#include "fft.hpp"
#include "rng.hpp"
#include "errors.hpp"

using namespace opschur;
using Complex = std::complex<double>;

namespace {

std::vector<Complex> random_signal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> v(n);
  for (auto& x : v) x = rng.complex_gaussian();
  return v;
}

}  // namespace

TEST_CASE("fft round trip and parseval") {
  auto a = random_signal(256, 90);
  const auto original = a;
  fft::transform(a, false);
  double freq_energy = 0.0;
  for (const auto& x : a) freq_energy += std::norm(x);
  double time_energy = 0.0;
  for (const auto& x : original) time_energy += std::norm(x);
  CHECK(freq_energy / 256.0 == doctest::Approx(time_energy).epsilon(1e-12));
  fft::transform(a, true);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(a[i] - original[i]) < 1e-12);
}

TEST_CASE("fft of a shifted impulse is a phase ramp") {
  std::vector<Complex> a(8, Complex(0));
  a[3] = 1.0;
  fft::transform(a, false);
  for (std::size_t k = 0; k < 8; ++k) {
    const double phase = -2.0 * std::numbers::pi * 3.0 * static_cast<double>(k) / 8.0;
    CHECK(std::abs(a[k] - std::polar(1.0, phase)) < 1e-14);
  }
}

TEST_CASE("circular convolution matches the quadratic oracle") {
  const auto a = random_signal(64, 91);
  const auto b = random_signal(64, 92);
  const auto fast = fft::circular_convolve(a, b);
  for (std::size_t k = 0; k < 64; ++k) {
    Complex direct = 0.0;
    for (std::size_t m = 0; m < 64; ++m) direct += a[m] * b[(k + 64 - m) % 64];
    CHECK(std::abs(fast[k] - direct) < 1e-11);
  }
}

TEST_CASE("fft rejects non power-of-two sizes") {
  std::vector<Complex> a(12, Complex(0));
  CHECK_THROWS_AS(fft::transform(a, false), Error);
  CHECK(fft::next_pow2(12) == 16);
  CHECK(fft::next_pow2(1) == 1);
  CHECK(fft::next_pow2(17) == 32);
}
