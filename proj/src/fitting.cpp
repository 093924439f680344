#include "kanesim/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace kanesim {

std::optional<double> fit_exponential_decay_rate(const std::vector<double>& times,
                                                 const std::vector<double>& values,
                                                 const std::vector<double>& stderrs,
                                                 double min_signal_ratio) {
    if (times.size() != values.size() || times.size() != stderrs.size()) {
        throw std::invalid_argument("fit inputs must have equal length");
    }
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    long n = 0;
    double t_first = 0.0;
    bool spread = false;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double v = std::abs(values[i]);
        if (v == 0.0 || v <= min_signal_ratio * stderrs[i]) continue;
        const double t = times[i];
        const double y = std::log(v);
        if (n == 0) {
            t_first = t;
        } else if (t != t_first) {
            spread = true;
        }
        ++n;
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    if (n < 2 || !spread) return std::nullopt;
    const double denom = n * stt - st * st;
    const double slope = (n * sty - st * sy) / denom;
    return -slope;
}

}  // namespace kanesim
