"""Published benchmark energies for the triple well, transcribed verbatim.

Each row is (omega, half_width, terms, (E0, E1, E2)). The strings are kept
exactly as printed, so their digit counts set the comparison resolution.
"""

from dataclasses import dataclass
from decimal import Decimal


@dataclass(frozen=True)
class ReferenceRow:
    omega: int
    half_width: str
    terms: int
    energies: tuple

    @property
    def decimals(self):
        return max(-Decimal(e).as_tuple().exponent for e in self.energies)


PUBLISHED_ROWS = (
    ReferenceRow(20, "2", 750, ("9.1100715702553", "17.5140977513941", "17.6975924458074")),
    ReferenceRow(40, "2", 1000, ("19.200084475112926", "37.948103273585804", "37.948176236685948")),
    ReferenceRow(60, "1.5", 1000, ("29.218766418207469", "58.017242546933332", "58.017242556963103")),
    ReferenceRow(80, "1.5", 1000, ("39.227231934365212", "78.047249798583686", "78.047249798584662")),
    ReferenceRow(
        100,
        "1.5",
        1500,
        (
            "49.23207941514294132072024439682",
            "98.06414003277967330221270153882",
            "98.06414003277967338155670061896",
        ),
    ),
)


def row_for(omega):
    for row in PUBLISHED_ROWS:
        if row.omega == omega:
            return row
    raise KeyError(omega)


def last_digit_match(computed, published):
    """True when ``computed`` is within one unit of the last printed digit."""
    p = Decimal(published)
    unit = Decimal(1).scaleb(p.as_tuple().exponent)
    return abs(Decimal(computed) - p) <= unit


def matching_digits(computed, published):
    """Leading significant digits of ``published`` reproduced by ``computed``.

    A digit position counts when the difference is at most one unit in it,
    so a value one ulp away still matches every printed digit.
    """
    p = Decimal(published)
    sig = len(p.as_tuple().digits)
    diff = abs(Decimal(computed) - p)
    unit_exp = p.as_tuple().exponent
    if diff <= Decimal(1).scaleb(unit_exp):
        return sig
    lead = p.adjusted()
    # largest position k (from the leading digit) with diff <= 10**(lead - k + 1)
    k = lead + 1 - diff.adjusted()
    if diff > Decimal(1).scaleb(diff.adjusted()):
        k -= 1
    return max(0, min(sig, k))
