"""Named test signals on [0, 1], combinable as ``"psi:3 + 0.5*psi:80 - t"``.

Atoms: ``zero``, ``one``, ``t``, ``exp``, ``step`` (0 below 1/2, 1 above),
``psi:L`` (the cosine eigenfunction ``sqrt(2) cos(L pi t)``, ``psi:0 = 1``),
``sin:L`` (``sqrt(2) sin(L pi t)``). Each term may carry a numeric
multiplier ``a*atom``.
"""

from __future__ import annotations

import math
import re
from typing import Callable

import numpy as np

from .errors import InputValidationError

__all__ = ["parse_signal"]

Signal = Callable[[np.ndarray], np.ndarray]

_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(rf"\s*([+-])?\s*(?:({_NUMBER})\s*\*\s*)?([a-z]+(?::\d+)?)\s*")


def _atom(token: str) -> Signal:
    name, _, arg = token.partition(":")
    if name in ("psi", "sin"):
        if not arg:
            raise InputValidationError(f"{name} needs an index, e.g. {name}:3")
        l = int(arg)
        if name == "psi":
            if l == 0:
                return lambda t: np.ones_like(t)
            return lambda t: math.sqrt(2) * np.cos(l * np.pi * t)
        return lambda t: math.sqrt(2) * np.sin(l * np.pi * t)
    if arg:
        raise InputValidationError(f"signal {name!r} takes no index")
    table: dict[str, Signal] = {
        "zero": np.zeros_like,
        "one": np.ones_like,
        "t": lambda t: np.array(t, dtype=float),
        "exp": np.exp,
        "step": lambda t: (np.asarray(t) > 0.5).astype(float),
    }
    try:
        return table[name]
    except KeyError:
        raise InputValidationError(f"unknown signal {name!r}") from None


def parse_signal(expr: str) -> Signal:
    """Compile a signal expression into a vectorized function of ``t``.

    >>> f = parse_signal("2*psi:0 - t")
    >>> f(np.array([0.0, 1.0]))
    array([2., 1.])
    """
    text = expr.strip().lower()
    if not text:
        raise InputValidationError("empty signal expression")
    terms: list[tuple[float, Signal]] = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (terms and not m.group(1)):
            raise InputValidationError(f"cannot parse signal expression {expr!r} at position {pos}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = float(m.group(2)) if m.group(2) else 1.0
        terms.append((sign * coef, _atom(m.group(3))))
        pos = m.end()

    def signal(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for a, f in terms:
            out = out + a * f(t)
        return out

    return signal
