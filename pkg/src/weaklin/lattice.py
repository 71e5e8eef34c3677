"""Complete residuated lattices on exact rational truth values.

Every truth value is a :class:`fractions.Fraction` in ``[0, 1]``.  The
finite chain ``a_0 < a_1 < ... < a_n`` is realised on the points ``k/n``,
so ``a_k`` is ``Fraction(k, n)`` and all structures share one scalar type.
"""
from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional

from weaklin.errors import LatticeMismatchError

ZERO = Fraction(0)
ONE = Fraction(1)

# t-norm families understood by the integer kernels
TNORM_MIN = 0
TNORM_LUKASIEWICZ = 1


def truth(value) -> Fraction:
    """Convert ``value`` to an exact truth value.

    Accepts ``Fraction``, ``int``, ``Decimal`` and strings such as ``"0.3"``
    or ``"3/10"``.  Floats are refused: they would silently carry binary
    rounding error into the stabilization test.
    """
    if isinstance(value, Fraction):
        out = value
    elif isinstance(value, bool):
        out = ONE if value else ZERO
    elif isinstance(value, (int, Decimal)):
        out = Fraction(value)
    elif isinstance(value, str):
        try:
            out = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact scalar: {value!r}") from exc
    elif isinstance(value, float):
        raise TypeError(f"float {value!r} is not exact; pass a string such as '0.3'")
    else:
        raise TypeError(f"cannot interpret {value!r} as a truth value")
    if not ZERO <= out <= ONE:
        raise ValueError(f"truth value {out} lies outside [0, 1]")
    return out


class ResiduatedLattice:
    """A linearly ordered complete residuated lattice on a subset of [0, 1].

    Subclasses provide ``_mul`` and ``_imp``; the public operations validate
    their operands first.  Meet and join are ``min`` and ``max`` for every
    structure offered here.
    """

    name: str = ""
    locally_finite: bool = True
    #: which integer kernel can evaluate this structure (None: exact path only)
    tnorm: Optional[int] = None

    def __repr__(self) -> str:
        return f"<lattice {self.name}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, ResiduatedLattice) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def contains(self, x: Fraction) -> bool:
        return isinstance(x, Fraction) and ZERO <= x <= ONE

    def check(self, *values: Fraction) -> None:
        for x in values:
            if not self.contains(x):
                raise LatticeMismatchError(f"{x!r} is not an element of {self.name}")

    def _mul(self, x: Fraction, y: Fraction) -> Fraction:
        raise NotImplementedError

    def _imp(self, x: Fraction, y: Fraction) -> Fraction:
        raise NotImplementedError

    def _bires(self, x: Fraction, y: Fraction) -> Fraction:
        return min(self._imp(x, y), self._imp(y, x))

    def otimes(self, x: Fraction, y: Fraction) -> Fraction:
        self.check(x, y)
        return self._mul(x, y)

    def residuum(self, x: Fraction, y: Fraction) -> Fraction:
        self.check(x, y)
        return self._imp(x, y)

    def biresiduum(self, x: Fraction, y: Fraction) -> Fraction:
        self.check(x, y)
        return self._bires(x, y)

    def meet(self, x: Fraction, y: Fraction) -> Fraction:
        self.check(x, y)
        return min(x, y)

    def join(self, x: Fraction, y: Fraction) -> Fraction:
        self.check(x, y)
        return max(x, y)

    def meet_all(self, values: Iterable[Fraction]) -> Fraction:
        values = list(values)
        self.check(*values)
        return min(values, default=ONE)

    def join_all(self, values: Iterable[Fraction]) -> Fraction:
        values = list(values)
        self.check(*values)
        return max(values, default=ZERO)

    def elements(self) -> Optional[tuple]:
        """All carrier elements in increasing order, or None for infinite carriers."""
        return None


class Godel(ResiduatedLattice):
    name = "godel"
    tnorm = TNORM_MIN

    def _mul(self, x, y):
        return x if x < y else y

    def _imp(self, x, y):
        return ONE if x <= y else y


class Lukasiewicz(ResiduatedLattice):
    name = "lukasiewicz"
    tnorm = TNORM_LUKASIEWICZ

    def _mul(self, x, y):
        s = x + y - ONE
        return s if s > ZERO else ZERO

    def _imp(self, x, y):
        s = ONE - x + y
        return s if s < ONE else ONE


class Product(ResiduatedLattice):
    name = "product"
    locally_finite = False

    def _mul(self, x, y):
        return x * y

    def _imp(self, x, y):
        return ONE if x <= y else y / x


class FiniteChain(Lukasiewicz):
    """The chain ``a_0 < ... < a_n`` with ``a_k (x) a_l = a_max(k+l-n, 0)``.

    Elements are the fractions ``k/n``; on those points the operations
    coincide with the Lukasiewicz ones.
    """

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"chain length must be a positive integer, got {n!r}")
        self.n = n
        self.name = f"chain:{n}"

    def contains(self, x):
        return isinstance(x, Fraction) and ZERO <= x <= ONE and self.n % x.denominator == 0

    def element(self, k: int) -> Fraction:
        """The chain element ``a_k``."""
        if not 0 <= k <= self.n:
            raise ValueError(f"index {k} outside 0..{self.n}")
        return Fraction(k, self.n)

    def index(self, x: Fraction) -> int:
        self.check(x)
        return int(x * self.n)

    def elements(self):
        return tuple(Fraction(k, self.n) for k in range(self.n + 1))


class Boolean(FiniteChain):
    def __init__(self):
        super().__init__(1)
        self.name = "boolean"


BOOLEAN = Boolean()
GODEL = Godel()
LUKASIEWICZ = Lukasiewicz()
PRODUCT = Product()


def parse_lattice(text: str) -> ResiduatedLattice:
    """Parse a lattice selector: ``boolean``, ``godel``, ``lukasiewicz``,
    ``product`` or ``chain:<n>``."""
    key = text.strip().lower()
    fixed = {"boolean": BOOLEAN, "godel": GODEL, "goedel": GODEL,
             "lukasiewicz": LUKASIEWICZ, "product": PRODUCT, "goguen": PRODUCT}
    if key in fixed:
        return fixed[key]
    if key.startswith("chain:"):
        try:
            n = int(key[len("chain:"):])
        except ValueError:
            raise ValueError(f"bad chain length in {text!r}") from None
        return BOOLEAN if n == 1 else FiniteChain(n)
    raise ValueError(f"unknown lattice {text!r}")


# Module-level spellings of the operations, mirroring the method API.

def otimes(lattice: ResiduatedLattice, x: Fraction, y: Fraction) -> Fraction:
    return lattice.otimes(x, y)


def residuum(lattice: ResiduatedLattice, x: Fraction, y: Fraction) -> Fraction:
    return lattice.residuum(x, y)


def biresiduum(lattice: ResiduatedLattice, x: Fraction, y: Fraction) -> Fraction:
    return lattice.biresiduum(x, y)


def meet_all(lattice: ResiduatedLattice, values: Iterable[Fraction]) -> Fraction:
    return lattice.meet_all(values)


def join_all(lattice: ResiduatedLattice, values: Iterable[Fraction]) -> Fraction:
    return lattice.join_all(values)


def saturate(lattice: ResiduatedLattice, seeds: Iterable[Fraction], cap: int) -> Optional[frozenset]:
    """Close ``seeds | {0, 1}`` under the lattice operations by brute force.

    Returns None as soon as the closure grows past ``cap`` elements.  Meet
    and join never produce new values on a chain, so only the product and
    the residuum (both argument orders) are applied.
    """
    have = {ZERO, ONE}
    for s in seeds:
        lattice.check(s)
        have.add(s)
    if len(have) > cap:
        return None
    frontier = list(have)
    while frontier:
        fresh = []
        current = list(have)
        for x in frontier:
            for y in current:
                for z in (lattice._mul(x, y), lattice._imp(x, y), lattice._imp(y, x)):
                    if z not in have:
                        have.add(z)
                        fresh.append(z)
                        if len(have) > cap:
                            return None
        frontier = fresh
    return frozenset(have)


def generated_subalgebra(lattice: ResiduatedLattice, seeds: Iterable[Fraction],
                         cap: int = 4096) -> Optional[frozenset]:
    """Subalgebra generated by ``seeds`` (together with 0 and 1).

    Returns the closure as a frozenset, or None when it has more than
    ``cap`` elements.  For the Lukasiewicz structure the closure of
    rationals with least common denominator ``d`` is exactly
    ``{0, 1/d, ..., 1}``, so no saturation is needed there.  For the
    product structure any value strictly between 0 and 1 has infinitely
    many distinct powers, so the closure is finite only for seeds in {0, 1}.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    seeds = list(seeds)
    lattice.check(*seeds)
    if type(lattice) is Lukasiewicz:
        d = lcm(1, *(s.denominator for s in seeds))
        if d + 1 > cap:
            return None
        return frozenset(Fraction(k, d) for k in range(d + 1))
    if type(lattice) is Product and any(ZERO < s < ONE for s in seeds):
        return None
    return saturate(lattice, seeds, cap)
