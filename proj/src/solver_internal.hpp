#ifndef FNLSLAB_SOLVER_INTERNAL_HPP
#define FNLSLAB_SOLVER_INTERNAL_HPP

#include <functional>

#include "fnlslab/solver.hpp"

namespace fnls::detail {

// Picard engine for u_j = base_j + i \int_0^{t_j} U(t_j - s) rhs(u)(s) ds on
// a window mesh.  base is given in physical space at mesh times; rhs maps
// (mesh index, physical state) to the physical forcing.  start_from_zero
// selects the initial iterate (0 or base).  The xnorm callback, when set,
// receives the update trajectory and returns the reporting norm; with
// gate_on_xnorm the convergence/contraction bookkeeping uses that norm
// instead of the sup-over-mesh L2 update.
PicardResult picard_fixed_point(
    const GridPtr& grid, double beta, const WindowMesh& mesh,
    const std::vector<Field>& base,
    const std::function<Field(int, const Field&)>& rhs, double tol,
    int max_iter, bool throw_on_noncontraction, bool start_from_zero,
    const char* noncontraction_message,
    const std::function<double(const std::vector<Field>&)>& xnorm = nullptr,
    bool gate_on_xnorm = false);

// D_j = i \int_0^{t_j} U(t_j - s) forcing(s) ds for a fixed forcing given at
// mesh times (cumulative Simpson in the interaction picture).
std::vector<Field> duhamel_integral(const GridPtr& grid, double beta,
                                    const WindowMesh& mesh,
                                    const std::vector<Field>& forcing);

}  // namespace fnls::detail

#endif
