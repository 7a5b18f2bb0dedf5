"""Envelopes of submodules, semiprime and prime radicals, and locally nilradicals.

Modules are finitely generated over Z, Z/n, or Z[X]/(f) with f monic,
presented as Z^n modulo a relation lattice with an integer matrix for X.
"""

__version__ = "0.1.0"
