#pragma once

#include <vector>

#include "qlink/coinc/histogram.hpp"

namespace qlink::coinc {

struct Peak {
    double center_ps = 0.0; // excess-count weighted centroid
    double weight = 0.0;    // counts above background
};

// Finds clusters of bins exceeding background + threshold_sigma *
// sqrt(max(background, 1)), where background is the median bin count.
// Bins closer than two bins apart merge into one peak. Peaks are returned
// sorted by center.
std::vector<Peak> detect_peaks(const Histogram& hist, double threshold_sigma = 5.0);

} // namespace qlink::coinc
