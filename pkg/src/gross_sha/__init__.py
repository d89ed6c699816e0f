"""Critical L-values for quadratic twists of Gross curves.

For a prime q = 3 mod 4 this package computes L(E/H, 1) for the twist E of the
Gross curve over the Hilbert class field H of Q(sqrt(-q)), as a product of
Hecke L-values L(rho*chi, 1), and the analytic order of Sha(E/H).
"""

from .classgroup import ClassGroup, ReducedForm, compose, dirichlet_h, enumerate_class_group
from .heckechar import Grossencharacter, build_conductor, build_rho, epsilon_candidates, grossencharacters
from .lseries import l_product, l_product_for, l_value
from .numerics import PrecisionContext, gamma
from .period_sha import ShaReport, omega, sha_order
from .pipeline import compute
from .quadfield import FieldParams, QuadIdeal, QuadInt, prime_above, principal_generator

__version__ = "0.1.0"

__all__ = [
    "ClassGroup", "ReducedForm", "compose", "dirichlet_h", "enumerate_class_group",
    "Grossencharacter", "build_conductor", "build_rho", "epsilon_candidates", "grossencharacters",
    "l_product", "l_product_for", "l_value", "PrecisionContext", "gamma",
    "ShaReport", "omega", "sha_order", "compute",
    "FieldParams", "QuadIdeal", "QuadInt", "prime_above", "principal_generator",
]
