"""Printed reference tables of the basic kernels, n = 1..5, m = 0..5.

Each entry is transcribed as printed: ``k(t) = prefactor * t^odd * sum c_i t^{p_i}``.
One entry (n=3, m=2) is printed with a stray variable ``x`` and an odd
exponent inside an even bracket; it is kept verbatim alongside the reading
that restores the exponents, and checks resolve it with the moment contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomial import RationalPoly


@dataclass(frozen=True)
class TableEntry:
    n: int
    m: int
    prefactor: Fraction
    terms: tuple  # (integer coefficient, exponent inside the bracket)
    corrected_terms: tuple | None = None
    note: str = ""

    @property
    def odd(self) -> bool:
        return self.n % 2 == 1

    def _build(self, terms) -> RationalPoly:
        deg = max(e for _, e in terms) + (1 if self.odd else 0)
        c = [0] * (deg + 1)
        for coef, e in terms:
            c[e + (1 if self.odd else 0)] += coef
        return RationalPoly(c) * self.prefactor

    def printed(self) -> RationalPoly:
        return self._build(self.terms)

    def resolved(self) -> RationalPoly:
        return self._build(self.corrected_terms or self.terms)

    @property
    def has_typo(self) -> bool:
        return self.corrected_terms is not None


def _e(n, m, num, den, coeffs, corrected=None, note=""):
    terms = tuple((c, 2 * i) for i, c in enumerate(coeffs)) if not isinstance(coeffs[0], tuple) else tuple(coeffs)
    return TableEntry(n, m, Fraction(num, den), terms, corrected, note)


TABLE = (
    _e(1, 0, -3, 2, [1]),
    _e(1, 1, -15, 8, [5, -7]),
    _e(1, 2, -105, 128, [35, -126, 99]),
    _e(1, 3, -315, 512, [105, -693, 1287, -715]),
    _e(1, 4, -3465, 32768, [1155, -12012, 38610, -48620, 20995]),
    _e(1, 5, -9009, 131072, [3003, -45045, 218790, -461890, 440895, -156009]),

    _e(2, 0, 15, 4, [-1, 3]),
    _e(2, 1, -105, 32, [5, -42, 45]),
    _e(2, 2, 315, 256, [-35, 567, -1485, 1001]),
    _e(2, 3, -3465, 4096, [105, -2772, 12870, -20020, 9945]),
    _e(2, 4, 45045, 65536, [-231, 9009, -64350, 170170, -188955, 74613]),
    _e(2, 5, -45045, 524288, [3003, -162162, 1640925, -6466460, 11904165, -10296594, 3380195]),

    _e(3, 0, -105, 4, [-3, 5]),
    _e(3, 1, 945, 32, [21, -90, 77]),
    _e(3, 2, -10395, 256, ((-63, 0), (495, 2), (-1001, 4), (585, 7)),
       corrected=((-63, 0), (495, 2), (-1001, 4), (585, 6)),
       note="printed '-1001x^4+585x^7'; read as t^4 and t^6"),
    _e(3, 3, 45045, 4096, [693, -8580, 30030, -39780, 17765]),
    _e(3, 4, -135135, 65536, [-9009, 160875, -850850, 1889550, -1865325, 676039]),
    _e(3, 5, 2297295, 524288, [9009, -218790, 1616615, -5290740, 8580495, -6760390, 2064825]),

    _e(4, 0, 945, 16, [3, -30, 35]),
    _e(4, 1, -10395, 64, [-7, 135, -385, 273]),
    _e(4, 2, 135135, 2048, [63, -1980, 10010, -16380, 8415]),
    _e(4, 3, -135135, 8192, [-693, 32175, -250250, 696150, -799425, 323323]),
    _e(4, 4, 2297295, 262144, [3003, -193050, 2127125, -8817900, 16787925, -14872858, 4970875]),
    _e(4, 5, -43648605, 1048576, [-1287, 109395, -1616615, 9258795, -25741485, 37182145,
                                   -26842725, 7653825]),

    _e(5, 0, -10395, 16, [15, -70, 63]),
    _e(5, 1, 135135, 64, [-45, 385, -819, 495]),
    _e(5, 2, -675675, 2048, [1485, -20020, 73710, -100980, 46189]),
    _e(5, 3, 11486475, 8192, [-1287, 25025, -139230, 319770, -323323, 119301]),
    _e(5, 4, -218243025, 262144, [6435, -170170, 1322685, -4476780, 7436429, -5965050, 1847475]),
    _e(5, 5, 43648605, 1048576, [-328185, 11316305, -116660817, 540571185, -1301375075,
                                 1691091675, -1125112275, 300540195]),
)


def entry(n: int, m: int) -> TableEntry:
    for e in TABLE:
        if e.n == n and e.m == m:
            return e
    raise KeyError((n, m))
