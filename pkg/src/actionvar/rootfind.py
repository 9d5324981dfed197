"""Scalar root finding for smooth monotone functions.

Bisection to shrink the bracket, then secant steps for the final digits;
every secant iterate is kept inside the current bracket, so convergence is
guaranteed for continuous functions.
"""

from __future__ import annotations

import math
from typing import Callable

from .core import BracketNotFound, NotMonotonic

__all__ = ["bracketed_root", "expand_bracket"]


def expand_bracket(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    max_expansions: int = 60,
) -> tuple[float, float]:
    """Grow [lo, hi] geometrically until f changes sign across it."""
    flo, fhi = f(lo), f(hi)
    for _ in range(max_expansions):
        if flo == 0.0:
            return lo, lo
        if fhi == 0.0:
            return hi, hi
        if flo * fhi < 0:
            return lo, hi
        width = hi - lo
        lo = max(lo - width, lo * 0.5) if lo > 0 else lo - width
        hi = hi + width
        flo, fhi = f(lo), f(hi)
    raise BracketNotFound(f"no sign change found in expanded bracket around [{lo}, {hi}]")


def bracketed_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    f_tol: float,
    x_tol: float = 0.0,
    max_iter: int = 200,
    require_increasing: bool = False,
) -> float:
    """Root of f in [lo, hi] with |f(root)| <= f_tol.

    With require_increasing, raises NotMonotonic if f(lo) > f(hi).
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if require_increasing and flo > fhi:
        raise NotMonotonic("function decreases across the bracket")
    if flo * fhi > 0:
        raise BracketNotFound(f"f({lo}) = {flo:.6g} and f({hi}) = {fhi:.6g} have equal sign")

    a, fa, b, fb = lo, flo, hi, fhi
    x, fx = a, fa
    for _ in range(max_iter):
        # secant proposal, clipped to the bracket interior
        if fb != fa:
            x = b - fb * (b - a) / (fb - fa)
        if not (a < x < b):
            x = 0.5 * (a + b)
        fx = f(x)
        if abs(fx) <= f_tol or (b - a) <= x_tol:
            return x
        if fa * fx < 0:
            b, fb = x, fx
        else:
            a, fa = x, fx
        if b - a <= max(abs(x), 1.0) * 4.0 * math.ulp(1.0):
            return x
    return x
