#pragma once

#include <string>

#include "mtvrp/harness.hpp"

namespace mtvrp {

/// K x K circle matrix of mean transfer counts (rows: receiving task, columns: donor task).
/// Circle area is proportional to the count. A diagonal cell is split in two half discs: the
/// intra-task count on the left (grey) and the row's summed inter-task count on the right (orange).
/// Output depends only on the input matrix.
std::string render_transfer_svg(const LabeledMatrix& matrix);

}  // namespace mtvrp
