#pragma once

namespace rfqc::dsp {

/// 1-based Nyquist zone of |f|: zone k spans [(k-1) f_s/2, k f_s/2).
int nyquist_zone(double f, double f_s);

/// Alias of `f` after sampling at `f_s`, in [0, f_s/2].
double fold_frequency(double f, double f_s);

/// True when the alias of a positive tone is spectrally inverted (even zones), i.e. its
/// phase appears conjugated after sampling.
bool is_inverted(double f, double f_s);

enum class DacMode { normal, mix };

/// Relative output power factor (amplitude) of a DAC zone, evaluated at the zone centre.
/// Normal mode is the zero-order-hold sinc response; mix mode is the return-to-zero response
/// that boosts the second and third zones. Only zones 1..4 are tabulated; others return 0.
double zone_gain(DacMode mode, int zone);

}  // namespace rfqc::dsp
