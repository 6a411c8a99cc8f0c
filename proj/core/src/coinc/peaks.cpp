#include "qlink/coinc/peaks.hpp"

#include <algorithm>
#include <cmath>

namespace qlink::coinc {

std::vector<Peak> detect_peaks(const Histogram& hist, double threshold_sigma) {
    std::vector<Peak> peaks;
    if (hist.counts.empty())
        return peaks;

    std::vector<std::uint64_t> sorted(hist.counts);
    const std::size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid),
                     sorted.end());
    const double background = static_cast<double>(sorted[mid]);
    const double threshold =
        background + threshold_sigma * std::sqrt(std::max(background, 1.0));

    double sum_w = 0.0, sum_wc = 0.0;
    std::size_t last_hot = 0;
    bool open = false;
    auto close = [&] {
        if (open && sum_w > 0.0)
            peaks.push_back({sum_wc / sum_w, sum_w});
        open = false;
        sum_w = sum_wc = 0.0;
    };

    for (std::size_t k = 0; k < hist.counts.size(); ++k) {
        const double c = static_cast<double>(hist.counts[k]);
        if (c <= threshold)
            continue;
        if (open && k - last_hot >= 2)
            close();
        const double excess = c - background;
        sum_w += excess;
        sum_wc += excess * hist.bin_center(k);
        last_hot = k;
        open = true;
    }
    close();
    return peaks;
}

} // namespace qlink::coinc
