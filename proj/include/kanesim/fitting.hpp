#pragma once

#include <optional>
#include <vector>

namespace kanesim {

// Decay-rate estimate for values ~ A*exp(-rate*t): ordinary least squares
// on ln|value| against t, restricted to samples whose magnitude exceeds
// min_signal_ratio times their standard error (so the noise floor is never
// fitted). Returns nullopt when fewer than two usable samples remain or
// the usable samples do not span distinct times.
std::optional<double> fit_exponential_decay_rate(const std::vector<double>& times,
                                                 const std::vector<double>& values,
                                                 const std::vector<double>& stderrs,
                                                 double min_signal_ratio = 10.0);

}  // namespace kanesim
