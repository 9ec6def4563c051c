#ifndef ORRLAB_INIT_DATA_HPP
#define ORRLAB_INIT_DATA_HPP

#include "orrlab/config.hpp"
#include "orrlab/spectral_field.hpp"

namespace orrlab {

// Builds the initial vorticity for the configured family, Hermitian and
// dealiased, normalized so that ||omega_in||_2 = epsilon.  The mean mode
// (0,0) is never populated.
SpectralField make_initial_data(const Grid& grid, const InitConfig& init);

// Fraction of the enstrophy carried by the k != 0 modes.
double nonzero_mode_fraction(const SpectralField& f);

}  // namespace orrlab

#endif
