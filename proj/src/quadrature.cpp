#include "dos/quadrature.hpp"

#include "dos/errors.hpp"

namespace dos {

void QuadratureSpec::validate() const {
    if (panels < 16) throw InvalidInput("QuadratureSpec: panels must be >= 16");
    if (!(tail_cutoff >= 10.0)) throw InvalidInput("QuadratureSpec: tail_cutoff must be >= 10");
    if (refine_factor < 2) throw InvalidInput("QuadratureSpec: refine_factor must be >= 2");
}

}  // namespace dos
