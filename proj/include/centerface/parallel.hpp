#pragma once

namespace centerface {

// Thread count used by the OpenMP kernels. set_threads(n <= 0) restores the
// hardware default. Results do not depend on the thread count.
int max_threads();
void set_threads(int n);

}  // namespace centerface
