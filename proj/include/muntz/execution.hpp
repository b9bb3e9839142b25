#pragma once

namespace muntz {

/// Parallel kernels use OpenMP; serial ones are the reference they must
/// reproduce bit for bit.
enum class Execution { serial, parallel };

}  // namespace muntz
