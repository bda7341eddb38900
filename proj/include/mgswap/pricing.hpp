#pragma once

#include <vector>

namespace mgswap {

struct PriceParams {
  double reference_price = 1.0;      // $/kWh
  double reserve_price = 0.02;       // $/kW per period
  double swap_price = 1.4;           // $/kWh
  double reference_el_power = 80.0;  // kW
  double delta_t = 1.0;              // h

  void validate() const;
};

/// Per-period trade price and the BSS mode it was computed for
/// (1 = charge/discharge, 0 = reserve only).
struct PriceTrack {
  std::vector<double> price;
  std::vector<int> bss_mode;

  int periods() const { return static_cast<int>(price.size()); }
  static PriceTrack flat(int periods, double value);
};

/// Demand-response price. `traded_energy` is (charge - discharge) * dt in
/// kWh, positive while the station charges. Floored at zero.
double real_time_price(double expected_el, double traded_energy, int bss_mode,
                       const PriceParams& pp);

/// Reserve payment for one period; only reserve-mode periods are paid.
double reserve_payment(double reserve_kw, int bss_mode, const PriceParams& pp);

/// Price track for a whole horizon from expected equivalent loads and the
/// station's traded energy and modes.
PriceTrack price_track(const std::vector<double>& expected_el,
                       const std::vector<double>& traded_energy,
                       const std::vector<int>& bss_mode, const PriceParams& pp);

}  // namespace mgswap
