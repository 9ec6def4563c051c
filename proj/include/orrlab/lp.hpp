#ifndef ORRLAB_LP_HPP
#define ORRLAB_LP_HPP

#include <vector>

#include "orrlab/spectral_field.hpp"
#include "orrlab/transforms.hpp"

namespace orrlab {

// Smooth Littlewood-Paley cutoff: 1 on |x| <= 1/2, 0 on |x| >= 3/4, with a
// C^infinity bump-quotient transition between.
double lp_psi(double x);
// Shell profile rho(x) = psi(x/2) - psi(x), supported on 1/2 < |x| < 3/2.
double lp_rho(double x);

// Dyadic shell values 1/2, 1, 2, ..., up to the first shell covering the
// grid's largest |k| + |eta|.
std::vector<double> lp_shells(const Grid& grid);

// Shell projection f_M (M = 1/2 selects the psi low block); frequencies are
// measured in the l1 modulus |k| + |eta|.
SpectralField lp_project(const SpectralField& f, double shell);

// Low block f_{<M} = psi(|xi|/M) f (telescoped closed form).
SpectralField lp_project_below(const SpectralField& f, double shell);

struct Paraproduct {
  SpectralField t_fg;  // low f, high g
  SpectralField t_gf;  // low g, high f
  SpectralField r;     // comparable frequencies
  Paraproduct(const Grid& g) : t_fg(g), t_gf(g), r(g) {}
};

// Bony decomposition fg = T_f g + T_g f + R(f,g); each piece is assembled
// with the same dealiased pseudospectral products as a direct evaluation of
// fg, so the identity holds to rounding.
Paraproduct paraproduct(const SpectralField& f, const SpectralField& g,
                        Transformer& tr);

}  // namespace orrlab

#endif
