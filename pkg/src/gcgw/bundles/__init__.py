"""Čech-level data of strong generalized holomorphic bundles."""
from .cech import bott_dims, bott_dims_p0, cech_oracle_p1
from .cocycles import *  # noqa: F401,F403
from .cocycles import __all__ as _cocycle_all
from .forms import ChartForm, pull_form
from .functions import Chart, ChartNerve, FunctionParseError, RationalFunction, format_expr, parse_function


def projective_line(m: int = 1, names=("z", "w")) -> "TransitionCocycle":
    """``O(m)`` on the two standard charts of the line."""
    nerve = ChartNerve(
        [Chart("U0", (names[0],)), Chart("U1", (names[1],))],
        {("U0", "U1"): {names[1]: f"1/{names[0]}"}},
    )
    return TransitionCocycle(nerve, 1, {("U0", "U1"): [[f"{names[0]}^{m}" if m >= 0 else f"1/{names[0]}^{-m}"]]})


__all__ = list(_cocycle_all) + [
    "Chart",
    "ChartForm",
    "ChartNerve",
    "FunctionParseError",
    "RationalFunction",
    "bott_dims",
    "bott_dims_p0",
    "cech_oracle_p1",
    "format_expr",
    "parse_function",
    "projective_line",
    "pull_form",
]
