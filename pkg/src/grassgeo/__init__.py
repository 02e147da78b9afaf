"""grassgeo: exact rank-one tangency structure on Grassmannians.

A small exact-arithmetic stack (rationals / prime fields, Groebner
bases, Pluecker coordinates, Hom-model tangent spaces) used to compute
and verify coisotropic/isotropic structure of subvarieties of
Grassmannians: Chow and Hurwitz forms, higher associated varieties,
contact-line varieties of hypersurfaces, and osculating curves.
"""

__version__ = "0.1.0"
