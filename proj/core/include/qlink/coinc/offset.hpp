#pragma once

#include "qlink/error.hpp"
#include "qlink/timetag.hpp"

namespace qlink::coinc {

QLINK_DEFINE_ERROR(NoPeak);

// Relative delay between the two streams: both are binned at bin_width on
// the shared clock and slid against each other over +/- search_range. The
// returned offset (a multiple of bin_width) maximizes the correlation; ties
// break toward the smallest |offset|. Throws NoPeak when the best bin does
// not clear the accidental background by five standard deviations.
TimePs find_offset(const TagStream& a, const TagStream& b, TimePs search_range_ps,
                   TimePs bin_width_ps);

} // namespace qlink::coinc
