#include "mgswap/pricing.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgswap {

void PriceParams::validate() const {
  if (!(reference_price > 0) || !(reserve_price > 0) || !(swap_price > 0) ||
      !(reference_el_power > 0) || !(delta_t > 0))
    throw std::invalid_argument("price parameters must all be strictly positive");
}

PriceTrack PriceTrack::flat(int periods, double value) {
  PriceTrack t;
  t.price.assign(periods, value);
  t.bss_mode.assign(periods, 1);
  return t;
}

double real_time_price(double expected_el, double traded_energy, int bss_mode,
                       const PriceParams& pp) {
  double price;
  if (bss_mode == 1) {
    price = pp.reference_price * (expected_el * pp.delta_t + traded_energy) /
            (pp.reference_el_power * pp.delta_t);
  } else {
    price = pp.reference_price * expected_el / pp.reference_el_power;
  }
  return std::max(price, 0.0);
}

double reserve_payment(double reserve_kw, int bss_mode, const PriceParams& pp) {
  return pp.reserve_price * (1 - bss_mode) * reserve_kw;
}

PriceTrack price_track(const std::vector<double>& expected_el,
                       const std::vector<double>& traded_energy,
                       const std::vector<int>& bss_mode, const PriceParams& pp) {
  if (expected_el.size() != traded_energy.size() || expected_el.size() != bss_mode.size())
    throw std::invalid_argument("price_track: horizon lengths differ");
  PriceTrack t;
  t.bss_mode = bss_mode;
  t.price.reserve(expected_el.size());
  for (std::size_t i = 0; i < expected_el.size(); ++i)
    t.price.push_back(real_time_price(expected_el[i], traded_energy[i], bss_mode[i], pp));
  return t;
}

}  // namespace mgswap
