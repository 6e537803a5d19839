"""
Angle doubling, orbit classification and the angle-to-kneading map
"""

from fractions import Fraction
from typing import Dict, Tuple

import structlog

from core_entropy.core.exceptions import AngleError
from core_entropy.models.angle import Angle, OrbitShape
from core_entropy.models.kneading import KneadingSequence
from core_entropy.models.symbols import Symbol

logger = structlog.get_logger(__name__)

# explicit orbit iteration is only repeated for orbits up to this length
ITERATION_CHECK_LIMIT = 4096


def double(theta: Angle) -> Angle:
    return Angle.wrap(2 * theta.value)


def _two_adic_split(denominator: int) -> Tuple[int, int]:
    valuation = 0
    while denominator % 2 == 0:
        denominator //= 2
        valuation += 1
    return valuation, denominator


def _order_of_two(modulus: int) -> int:
    if modulus == 1:
        return 1
    order, residue = 1, 2 % modulus
    while residue != 1:
        residue = (2 * residue) % modulus
        order += 1
    return order


def _iterated_shape(theta: Angle) -> OrbitShape:
    seen: Dict[Fraction, int] = {}
    x = theta.value
    index = 0
    while x not in seen:
        seen[x] = index
        x = (2 * x) % 1
        index += 1
    return OrbitShape(preperiod=seen[x], period=index - seen[x])


def orbit_shape(theta: Angle) -> OrbitShape:
    """
    Preperiod and period of theta under doubling

    The preperiod is the 2-adic valuation of the denominator and the period is
    the order of 2 modulo its odd part.
    """
    preperiod, odd = _two_adic_split(theta.denominator)
    shape = OrbitShape(preperiod=preperiod, period=_order_of_two(odd))

    # 2^(a+n) theta == 2^a theta (mod 1)
    p, q = theta.numerator, theta.denominator
    if (pow(2, shape.length, q) - pow(2, shape.preperiod, q)) * p % q != 0:
        raise AngleError(f"orbit shape {shape} of {theta} failed the modular check")
    if shape.length <= ITERATION_CHECK_LIMIT:
        iterated = _iterated_shape(theta)
        if iterated != shape:
            raise AngleError(f"orbit shape {shape} of {theta} disagrees with iteration {iterated}")
    return shape


def partition(theta: Angle) -> Tuple[Fraction, Fraction]:
    """Boundary points theta/2 and (theta+1)/2; A_1 is the open arc between them"""
    return theta.value / 2, (theta.value + 1) / 2


def itinerary_symbol(theta: Angle, x: Fraction) -> Symbol:
    """Symbol of the point x with respect to the partition defined by theta"""
    low, high = partition(theta)
    if x == low or x == high:
        return Symbol.STAR
    if low < x < high:
        return Symbol.ONE
    return Symbol.ZERO


def kneading_of_angle(theta: Angle) -> KneadingSequence:
    """
    Kneading sequence of a rational angle

    Args:
        theta: non-zero rational angle

    Returns:
        nu with nu_k = i when 2^(k-1) theta lies in A_i, and * on the boundary
    """
    if theta.value == 0:
        raise AngleError("the angle 0 has no kneading sequence")
    shape = orbit_shape(theta)

    symbols = []
    x = theta.value
    for _ in range(shape.length):
        symbols.append(itinerary_symbol(theta, x).value)
        x = (2 * x) % 1
    if symbols[0] != Symbol.ONE.value:
        raise AngleError(f"{theta} is not in its own arc A_1")

    nu = KneadingSequence("".join(symbols[: shape.preperiod]), "".join(symbols[shape.preperiod:]))
    logger.debug("kneading of angle", angle=theta.text, sequence=nu.text, shape=(shape.preperiod, shape.period))
    return nu


def is_recurrent_angle(theta: Angle) -> bool:
    """Raw orbit fact: some strict forward iterate returns to theta"""
    return orbit_shape(theta).is_periodic


def circle_distance(theta: Angle, phi: Angle) -> Fraction:
    gap = abs(theta.value - phi.value)
    return min(gap, 1 - gap)
