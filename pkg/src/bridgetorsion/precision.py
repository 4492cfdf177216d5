"""Scalar backends: IEEE double via cmath/math, or mpmath extended precision.

Everything downstream (polynomials, matrices, dual numbers) is duck-typed,
so mpmath values flow through the same code paths as builtin complex.
"""

import cmath
import math


class Precision:
    """Bundle of the scalar constructors the pipeline needs."""

    __slots__ = ("name", "sqrt", "exp", "sin", "cos", "pi", "imag_unit")

    def __init__(self, name="double", dps=None):
        self.name = name
        if name == "double":
            self.sqrt = cmath.sqrt
            self.exp = cmath.exp
            self.sin = math.sin
            self.cos = math.cos
            self.pi = math.pi
            self.imag_unit = 1j
        elif name == "extended":
            import mpmath

            # mpmath precision is a process-global setting; never lower it.
            if dps is not None:
                mpmath.mp.dps = dps
            elif mpmath.mp.dps < 30:
                mpmath.mp.dps = 30
            self.sqrt = mpmath.sqrt
            self.exp = mpmath.exp
            self.sin = mpmath.sin
            self.cos = mpmath.cos
            self.pi = +mpmath.pi
            self.imag_unit = mpmath.mpc(0, 1)
        else:
            raise ValueError(f"unknown precision {name!r} (want 'double' or 'extended')")

    def __repr__(self):
        return f"Precision({self.name!r})"


DOUBLE = Precision("double")


def get_precision(name, dps=None):
    if name == "double":
        return DOUBLE
    return Precision(name, dps)
