"""Deterministic adaptive Simpson quadrature.

The interval is first cut into ``initial_panels`` equal panels; each panel
is then refined by recursive bisection with Richardson extrapolation until
its error estimate fits within an equal share of the total budget
``max(abs_tol, rel_tol * |coarse total|)``.  The rule is classical and the
node set depends only on the integrand and the spec, so results are
bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import AccuracyError, InvalidInputError


@dataclass(frozen=True)
class QuadratureSpec:
    """Accuracy knobs for :func:`integrate`."""

    abs_tol: float = 1e-9
    rel_tol: float = 1e-8
    max_depth: int = 40
    initial_panels: int = 64

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise InvalidInputError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise InvalidInputError("max_depth must be at least 1")
        if self.initial_panels < 8:
            raise InvalidInputError("initial_panels must be at least 8")


DEFAULT_SPEC = QuadratureSpec()


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


def _refine(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    err = (left + right - whole) / 15.0
    if abs(err) <= tol:
        return left + right + err
    if depth <= 0:
        raise AccuracyError(
            f"adaptive Simpson did not converge on [{a!r}, {b!r}]",
            estimate=left + right + err,
        )
    half = 0.5 * tol
    return _refine(f, a, m, fa, flm, fm, left, half, depth - 1) + _refine(
        f, m, b, fm, frm, fb, right, half, depth - 1
    )


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Integral of ``f`` over ``[a, b]`` to the accuracy of ``spec``.

    Raises :class:`AccuracyError` (carrying the best panel estimate) if any
    panel fails to converge within ``max_depth`` bisections, which callers
    may treat as evidence of a non-integrable singularity.
    """
    spec = spec or DEFAULT_SPEC
    if not a <= b:
        raise InvalidInputError(f"integration bounds out of order: {a!r} > {b!r}")
    if a == b:
        return 0.0
    n = spec.initial_panels
    width = (b - a) / n
    edges = [a + (b - a) * i / n for i in range(n + 1)]
    f_edges = [f(x) for x in edges]
    mids = [0.5 * (edges[i] + edges[i + 1]) for i in range(n)]
    f_mids = [f(x) for x in mids]
    coarse = [
        _simpson(f_edges[i], f_mids[i], f_edges[i + 1], width) for i in range(n)
    ]
    total = sum(coarse)
    panel_tol = max(spec.abs_tol, spec.rel_tol * abs(total)) / n
    result = 0.0
    for i in range(n):
        result += _refine(
            f,
            edges[i],
            edges[i + 1],
            f_edges[i],
            f_mids[i],
            f_edges[i + 1],
            coarse[i],
            panel_tol,
            spec.max_depth,
        )
    return result
