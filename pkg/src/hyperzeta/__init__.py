"""hyperzeta: zeta functions of hyperelliptic curves over finite fields.

Library + CLI implementing Cantor division polynomials, torsion modelling
by bi-homogeneous polynomial systems, a desk-scale geometric-resolution
solver, and a Schoof-Pila driver with brute-force oracles for everything.
"""

__version__ = "0.1.0"

SCHEMA = "hyperzeta/1"
