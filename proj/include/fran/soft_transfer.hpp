// soft_transfer.hpp - Finite-SNR model of quantized fronthaul signalling.
//
// The cloud precodes under power P(1 - 2^-B), quantizes each baseband sample
// to B bits (noise power 2^-B P), and the users see an effective SNR of
// P(1 - 2^-B) / (1 + 2^-B P G) where G is the channel gain sum per user.
// With B = log2(P) the effective SNR is exactly (P - 1) / (1 + G), so the
// quantized scheme keeps the full power scaling.
#pragma once

#include <stdexcept>

#include "fran/rational.hpp"

namespace fran {

inline Rational effective_snr(const Rational& snr, int bits_per_sample, const Rational& gain_sum) {
  if (snr <= 1) throw std::invalid_argument("SNR must exceed one");
  if (bits_per_sample <= 0) throw std::invalid_argument("sample resolution must be positive");
  if (gain_sum < 0) throw std::invalid_argument("gain sum must be nonnegative");
  const Rational q = pow2(-bits_per_sample);
  return snr * (1 - q) / (1 + q * snr * gain_sum);
}

struct SoftTransferModel {
  Rational snr;         // P, linear scale
  int bits_per_sample;  // B
  Rational gain_sum;    // G

  Rational quantization_noise() const { return snr * pow2(-bits_per_sample); }
  Rational precoding_power() const { return snr * (1 - pow2(-bits_per_sample)); }
  Rational effective() const { return effective_snr(snr, bits_per_sample, gain_sum); }
};

}  // namespace fran
