"""Canonical Klein-quartic setup shared by the whole package.

GF(8) is fixed with modulus x^3 + x + 1; the order is weighted-degree-lex
with weights (2, 3) and ties won by the larger Y exponent; the curve is
Y^3 + X^3*Y + X with the two field equations adjoined.  Any irreducible
modulus gives an isomorphic field, so footprint sizes, weights and code
parameters do not depend on the choice; fixing one keeps output byte-stable.
"""

from __future__ import annotations

from functools import lru_cache

from .gf import FieldSpec, field_make
from .groebner import Footprint, GroebnerBasis, buchberger, footprint
from .poly import FieldDomain, MonomialOrder, Polynomial, parse_poly

GF8_MODULUS_BITS = 0b1011
ORDER_WEIGHTS = (2, 3)
ORDER_TIEBREAK = 1

CURVE_TEXT = "Y^3+X^3*Y+X"
FIELD_EQ_X_TEXT = "X^8+X"
FIELD_EQ_Y_TEXT = "Y^8+Y"

# Best distances known to exist for length-22 codes over GF(8) at the 15
# constructed dimensions (static constants from the published code tables;
# no network access).  The construction's bound meets these except at
# dimensions 4, 14, 15 and 18, where the best known value is one more.
BEST_KNOWN_DISTANCE = {
    1: 22, 2: 19, 3: 18, 4: 17, 5: 15, 7: 13, 8: 12, 10: 10,
    11: 9, 13: 7, 14: 7, 15: 6, 17: 4, 18: 4, 20: 2,
}


@lru_cache(maxsize=None)
def klein_field() -> FieldSpec:
    return field_make(3, GF8_MODULUS_BITS)


@lru_cache(maxsize=None)
def klein_domain() -> FieldDomain:
    return FieldDomain(klein_field())


@lru_cache(maxsize=None)
def klein_order() -> MonomialOrder:
    return MonomialOrder("weighted_deg_lex", ORDER_WEIGHTS, ORDER_TIEBREAK)


@lru_cache(maxsize=None)
def curve_polynomial() -> Polynomial:
    return parse_poly(CURVE_TEXT, klein_domain())


@lru_cache(maxsize=None)
def ideal_generators() -> tuple[Polynomial, ...]:
    """Generators of the full ideal: curve plus both field equations."""
    dom = klein_domain()
    return (
        curve_polynomial(),
        parse_poly(FIELD_EQ_X_TEXT, dom),
        parse_poly(FIELD_EQ_Y_TEXT, dom),
    )


@lru_cache(maxsize=None)
def klein_basis() -> GroebnerBasis:
    return buchberger(list(ideal_generators()), klein_order())


@lru_cache(maxsize=None)
def klein_footprint() -> Footprint:
    return footprint(klein_basis())
