#pragma once

namespace gr2 {

/// Execution policy for kernels that have both an OpenMP and a serial path.
/// Results are identical for both; Serial is the reference implementation.
enum class Execution { Serial, Parallel };

/// Caps the OpenMP team size for all parallel kernels.
void set_threads(int n);
int threads();

}  // namespace gr2
