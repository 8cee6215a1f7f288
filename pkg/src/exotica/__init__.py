"""Exact computations for structures modelled on the exotic homogeneous
surfaces G_D and G'_D."""

from .errors import *  # noqa: F401,F403
from .exppoly import (Divisor, ExpPoly, ExpPoly2, diff, divisor_shift, in_vd, pd_apply,
                      scale_arg, shift_arg, vd_basis)
from .groups import (GdElement, GdpElement, LieVec, SurfacePoint, bracket, gd_adjoint,
                     gdp_adjoint, include_gd_in_gdp, include_subdivisor, jacobian, rescale_iso)
from .homogeneous import (CATALOG, HeisenbergElement, InducingMorphism, Plane,
                          TranslationElement, compose_inducing, verify_inducing)
from .moduli import (ModuliDescription, coset_representative, moduli_gd_torus,
                     moduli_gdp_torus, quotient_dim)
from .scalar import E, ExpScalar, GaussRat
from .surfaces import (DevelopingSystem, KodairaGroup, TorusLattice, build_kodaira_gd,
                       build_kodaira_gdp, build_torus_gd, build_torus_gdp, build_torus_gdp_exp,
                       conjugate_system, normal_form, verify_developing_system)

__version__ = "0.1.0"
