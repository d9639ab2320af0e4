import math
from dataclasses import dataclass

import numpy as np
from scipy import special


@dataclass(frozen=True)
class Constants:
    """Mathematical constants used by the log-moment estimating equations.

    Attributes:
        euler_gamma (float): The Euler-Mascheroni constant.
        zeta3 (float): Riemann zeta function at 3 (Apery's constant).
        pi_sq_over6 (float): pi^2 / 6, which is also zeta(2) and trigamma(1).
    """

    euler_gamma: float = float(np.euler_gamma)
    zeta3: float = float(special.zeta(3.0, 1.0))
    pi_sq_over6: float = math.pi**2 / 6.0


CONSTANTS = Constants()
