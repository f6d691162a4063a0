import math

import numpy as np
import pytest

from csr.errors import InputValidationError
from csr.signals import parse_signal

T = np.linspace(0, 1, 11)


@pytest.mark.parametrize(
    "expr, expected",
    [
        ("zero", np.zeros_like(T)),
        ("one", np.ones_like(T)),
        ("t", T),
        ("exp", np.exp(T)),
        ("psi:0", np.ones_like(T)),
        ("psi:3", math.sqrt(2) * np.cos(3 * math.pi * T)),
        ("sin:2", math.sqrt(2) * np.sin(2 * math.pi * T)),
        ("psi:3 + psi:80", math.sqrt(2) * (np.cos(3 * math.pi * T) + np.cos(80 * math.pi * T))),
        ("2*one - 0.5*t", 2 - 0.5 * T),
        ("-t", -T),
        ("1e-1*t", 0.1 * T),
    ],
)
def test_expressions(expr, expected):
    np.testing.assert_allclose(parse_signal(expr)(T), expected, atol=1e-14)


@pytest.mark.parametrize("expr", ["", "foo", "psi", "t:3", "t t", "2*"])
def test_rejects(expr):
    with pytest.raises(InputValidationError):
        parse_signal(expr)
