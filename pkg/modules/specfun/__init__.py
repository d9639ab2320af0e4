from .constants import CONSTANTS, Constants
from .mittag_leffler import PrabhakarArgs, mittag_leffler, mittag_leffler_scaled, ml, pochhammer
from .polygamma import digamma, digamma_expansion, polygamma

__all__ = [
    "CONSTANTS",
    "Constants",
    "PrabhakarArgs",
    "mittag_leffler",
    "mittag_leffler_scaled",
    "ml",
    "pochhammer",
    "digamma",
    "digamma_expansion",
    "polygamma",
]
