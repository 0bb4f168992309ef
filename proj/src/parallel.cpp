#include "gr2/parallel.hpp"

#include <omp.h>

namespace gr2 {

void set_threads(int n) { omp_set_num_threads(n < 1 ? 1 : n); }

int threads() { return omp_get_max_threads(); }

}  // namespace gr2
