#ifndef PROBCLUST_TOOLS_SVG_REPORT_HPP
#define PROBCLUST_TOOLS_SVG_REPORT_HPP

#include <cstddef>
#include <string>

#include "probclust/cluster_engine.hpp"
#include "probclust/data_io.hpp"

namespace probclust::cli {

/// Scatter of `data` projected onto dimensions (jx, jy), colored by the
/// region assign() picks, with one class="center" marker and one class="scale"
/// box (center ± scale in both projected dimensions) per region.
/// Throws InvalidArgument when a projection index is out of range.
std::string render_projection_svg(const ClusterModel& model, const Dataset& data, std::size_t jx,
                                  std::size_t jy);

}  // namespace probclust::cli

#endif  // PROBCLUST_TOOLS_SVG_REPORT_HPP
