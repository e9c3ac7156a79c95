"""
Liouville integrability and singular fibers of spectral-curve fibrations
for the autonomous 2- and 4-dimensional Painleve-type systems.

Modules: algebra (exact polynomials), hamiltonian (brackets, Lax
residuals), curves (Weierstrass and infinity models), kodaira (genus 1),
liu (genus 2, Igusa invariants), catalog (the paper's systems and
spectral types), cli.
"""
from .algebra import (MultiPoly, RationalFunction, Q, var, symbols, parse_expr,
                      Place, Witness, ord_at, resultant, discriminant_poly)
from .hamiltonian import (PhaseSpace, LaxSystem, poisson_bracket, hamiltonian_derivative,
                          lax_residual, char_poly, verify_integrable,
                          trace_power_conservation)
from .curves import (SpectralCurve, WeierstrassG1, WeierstrassG2, reduce_to_weierstrass,
                     infinity_model_g1, infinity_model_g2, level_set_curve)
from .kodaira import tate_classify, classify_g1_at_infinity, KodairaType
from .liu import igusa_invariants, stable_type, classify_g2_at_infinity
from .catalog import (load_catalog, get_entry, parse_spectral_type, singularity_pattern,
                      pattern_label, classify_entry, verify_entry)

__version__ = "0.1.0"
