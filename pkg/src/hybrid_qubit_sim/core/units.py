"""Unit conventions.

hbar = 1 throughout. Energies and splittings are angular frequencies in rad/ns,
times are in ns. Figures quoted as "X x 2pi GHz" are X cyclic GHz.
"""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi


def ghz_to_rad_per_ns(ghz: float) -> float:
    return TWO_PI * ghz
