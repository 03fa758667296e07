"""Published reference values for the two smallest polynomial taus.

Keys are (check, staircase index).  Values are canonical polynomial text.
"""

from __future__ import annotations

from .algebra import Poly, parse_poly

REFERENCE_SIDES: dict[tuple[str, int], str] = {
    ("cubic-i", 1): "2*z1*z2^3 - 2*z1^3*z2",
    ("cubic-i", 2): (
        "6*z1*z2^3*t1^6 - 6*z1^3*z2*t1^6 + 36*z1^5*z2*t1^4 - 36*z1*z2^5*t1^4"
        " + 126*z1*z2^3*t1^3*t3 - 126*z1^3*z2*t1^3*t3 + 54*z1^3*z2^5*t1^2 - 54*z1^5*z2^3*t1^2"
        " + 54*z1^5*z2*t1*t3 - 54*z1*z2^5*t1*t3 + 54*z1*z2^3*t3^2 - 54*z1^3*z2*t3^2"
    ),
    ("cubic-ii", 1): "4*z^3",
    ("cubic-ii", 2): (
        "12*z^3*t1^6 - 144*z^5*t1^4 + 252*z^3*t1^3*t3 + 108*z^7*t1^2"
        " - 216*z^5*t1*t3 + 108*z^3*t3^2"
    ),
    # the printed constant term reads z1^2*z3^3*z4^2, which has odd z-degree
    # while every other term has even degree; the derived value uses z3^2
    ("seventh", 1): (
        "-2*z1^2*t1^4 + 2*z2^2*t1^4 - 2*z3^2*t1^4 + 2*z4^2*t1^4"
        " + 4*z1^2*z3^2*t1^2 - 4*z2^2*z4^2*t1^2"
        " - 2*z1^2*z2^2*z3^2 + 2*z1^2*z2^2*z4^2 - 2*z1^2*z3^2*z4^2 + 2*z2^2*z3^2*z4^2"
    ),
}

SEVENTH_TAU1_AS_PRINTED = (
    "-2*z1^2*t1^4 + 2*z2^2*t1^4 - 2*z3^2*t1^4 + 2*z4^2*t1^4"
    " + 4*z1^2*z3^2*t1^2 - 4*z2^2*z4^2*t1^2"
    " - 2*z1^2*z2^2*z3^2 + 2*z1^2*z2^2*z4^2 - 2*z1^2*z3^3*z4^2 + 2*z2^2*z3^2*z4^2"
)

SEVENTH_TYPO_NOTE = (
    "reference term z1^2*z3^3*z4^2 is degree-inconsistent (odd z-degree); "
    "derived value has z1^2*z3^2*z4^2"
)

MIN_SEVENTH_TERMS_TAU3 = 250


def reference(check: str, k: int) -> Poly | None:
    text = REFERENCE_SIDES.get((check, k))
    return parse_poly(text) if text is not None else None
