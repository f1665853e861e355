#ifndef EPILOG_SVG_H
#define EPILOG_SVG_H

#include "epilog/date.h"
#include "epilog/numerics.h"

#include <string>
#include <vector>

namespace epilog
{

struct SvgSeries {
    std::string label;
    std::vector<double> values; ///< one value per day, starting at the chart epoch
    bool dashed  = false;
    bool markers = false; ///< draw a square at every sample, for observed data
};

struct SvgStyle {
    std::string title;
    std::string y_label = "cases";
    Date epoch          = study_epoch; ///< date of sample 0, used for x tick labels
};

enum class Column {
    Cumulative,
    Daily,
};

struct LabeledTrajectory {
    std::string label;
    Trajectory trajectory;
};

/**
 * @brief Line chart, 960x540, one polyline per series and a legend in input order.
 *
 * Output depends only on the inputs: no timestamps, fixed float formatting.
 * Throws std::invalid_argument for an empty list or series of different lengths.
 */
std::string emit_svg(const std::vector<SvgSeries>& series, const SvgStyle& style = {});

std::string emit_svg(const std::vector<LabeledTrajectory>& trajectories, Column column, const SvgStyle& style = {});

/// Round tick positions covering [lo, hi]; steps are 1, 2 or 5 times a power of ten.
std::vector<double> nice_ticks(double lo, double hi, int target_count = 6);

} // namespace epilog

#endif // EPILOG_SVG_H
