"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Values are sparse maps exponent -> Fraction over the canonical basis
1, zeta, ..., zeta^(phi(e)-1), i.e. remainders modulo the e-th cyclotomic
polynomial.  For prime-power e (the only case the p-group pipeline ever
produces) the reduction is a sparse substitution; composite orders fall
back to dense polynomial remainder.  No floating point anywhere: equality,
zero tests and |x|^2 are exact decisions.

Values of different orders combine by embedding into the lcm order, and a
normalized value is re-expressed in the smallest prime-power subfield
containing it, so equal values of p-power orders compare (and hash) equal.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def phi(e: int) -> int:
    """Euler totient."""
    result = e
    m = e
    f = 2
    while f * f <= m:
        if m % f == 0:
            result -= result // f
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _prime_power_split(e: int) -> tuple[int, int] | None:
    """(r, a) with e = r^a if e is a prime power > 1, else None."""
    if e < 2:
        return None
    m, f = e, 2
    while f * f <= m:
        if m % f == 0:
            a = 0
            while m % f == 0:
                m //= f
                a += 1
            return (f, a) if m == 1 else None
        f += 1
    return (e, 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of the e-th cyclotomic polynomial."""
    if e == 1:
        return (Fraction(-1), Fraction(1))
    # (x^e - 1) / prod_{d | e, d < e} Phi_d
    num = [Fraction(0)] * (e + 1)
    num[0] = Fraction(-1)
    num[e] = Fraction(1)
    for d in range(1, e):
        if e % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _polydiv_exact(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    dlead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] / dlead
        out[k] = c
        if c:
            for t, dc in enumerate(den):
                num[k + t] -= c * dc
    assert all(c == 0 for c in num[: len(den) - 1]), "non-exact polynomial division"
    return out


def _reduce(e: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    """Canonical form: exponents in [0, phi(e)), zero coefficients dropped."""
    work: dict[int, Fraction] = {}
    for k, c in coeffs.items():
        if c:
            k %= e
            work[k] = work.get(k, Fraction(0)) + c
    if e == 1:
        out = {0: sum(work.values(), start=Fraction(0))}
        return out if out[0] else {}
    deg = phi(e)
    pp = _prime_power_split(e)
    if pp is not None:
        # zeta^phi(e)+t = -(zeta^t + zeta^(m+t) + ... + zeta^((r-2)m+t)), m = e/r
        r, _ = pp
        m = e // r
        changed = True
        while changed:
            changed = False
            for k in [k for k in work if k >= deg]:
                c = work.pop(k)
                if not c:
                    continue
                t = k - deg
                for s in range(r - 1):
                    kk = s * m + t
                    work[kk] = work.get(kk, Fraction(0)) - c
                changed = True
        return {k: c for k, c in work.items() if c}
    # general order: dense remainder modulo Phi_e
    top = max(work, default=0)
    if top < deg:
        return {k: c for k, c in work.items() if c}
    dense = [Fraction(0)] * (top + 1)
    for k, c in work.items():
        dense[k] = c
    mod = cyclotomic_polynomial(e)
    dmod = len(mod) - 1
    for k in range(top, deg - 1, -1):
        c = dense[k]
        if c:
            for t in range(dmod + 1):
                dense[k - dmod + t] -= c * mod[t]
    return {k: c for k, c in enumerate(dense[:deg]) if c}


class Cyclotomic:
    """An exact element of Q(zeta_order), immutable."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: dict[int, Fraction] | None = None, *,
                 _canonical: bool = False):
        if order < 1:
            raise ValueError("order must be positive")
        raw = coeffs or {}
        if not _canonical:
            raw = _reduce(order, {int(k): Fraction(c) for k, c in raw.items()})
            order, raw = _descend(order, raw)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", raw)

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(order: int = 1) -> "Cyclotomic":
        return Cyclotomic(1, {}, _canonical=True)

    @staticmethod
    def rational(q) -> "Cyclotomic":
        q = Fraction(q)
        return Cyclotomic(1, {0: q} if q else {}, _canonical=True)

    @staticmethod
    def root(order: int, k: int = 1) -> "Cyclotomic":
        """zeta_order^k."""
        return Cyclotomic(order, {k % order: Fraction(1)})

    # -- ring operations ----------------------------------------------------

    def _promote(self, other: "Cyclotomic") -> tuple[int, dict, dict]:
        e = self.order * other.order // gcd(self.order, other.order)
        a = {k * (e // self.order): c for k, c in self.coeffs.items()}
        b = {k * (e // other.order): c for k, c in other.coeffs.items()}
        return e, a, b

    def __add__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        e, a, b = self._promote(other)
        for k, c in b.items():
            a[k] = a.get(k, Fraction(0)) + c
        return Cyclotomic(e, a)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, {k: -c for k, c in self.coeffs.items()},
                          _canonical=True)

    def __sub__(self, other) -> "Cyclotomic":
        return self.__add__(-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        e, a, b = self._promote(other)
        out: dict[int, Fraction] = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = (k1 + k2) % e
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return Cyclotomic(e, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def conjugate(self) -> "Cyclotomic":
        """Image under zeta -> zeta^-1 (complex conjugation)."""
        e = self.order
        return Cyclotomic(e, {(-k) % e: c for k, c in self.coeffs.items()})

    def abs_squared(self) -> "Cyclotomic":
        """x * conj(x); fixed by conjugation, rational for character tests."""
        return self * self.conjugate()

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs.get(0, Fraction(0))

    def equals_rational(self, q) -> bool:
        return self.is_rational() and self.rational_value() == Fraction(q)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.equals_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        # compare in the common field; prime-power orders already descend
        # to a unique minimal order, so this only triggers for mixed orders
        e, a, b = self._promote(other)
        return _reduce(e, a) == _reduce(e, b)

    def __hash__(self):
        # equal values of prime-power order share a canonical form; equal
        # values stored at incompatible composite orders may hash apart,
        # so only same-conductor values should be used as dict keys
        return hash((self.order, frozenset(self.coeffs.items())))

    # -- display ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if k == 0:
                parts.append(str(c))
            else:
                mono = f"E({self.order})" if k == 1 else f"E({self.order})^{k}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for term in parts[1:]:
            out += term if term.startswith("-") else "+" + term
        return out

    def __repr__(self):
        return f"Cyclotomic({self})"


def _coerce(x) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.rational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")


def _descend(e: int, coeffs: dict[int, Fraction]) -> tuple[int, dict[int, Fraction]]:
    """Rewrite in the smallest prime-power subfield (prime-power e only)."""
    if not coeffs:
        return 1, {}
    if set(coeffs) == {0}:
        return 1, dict(coeffs)
    pp = _prime_power_split(e)
    if pp is None:
        return e, coeffs
    r, _ = pp
    while e > 1:
        # canonical basis exponents of Q(zeta_{e/r}) inside Q(zeta_e)
        # are exactly the multiples of r, so containment is a support test
        if e % r == 0 and all(k % r == 0 for k in coeffs):
            e //= r
            coeffs = {k // r: c for k, c in coeffs.items()}
            coeffs = _reduce(e, coeffs)
            if not coeffs or set(coeffs) == {0}:
                return 1, coeffs
        else:
            break
    return e, coeffs


def arith(x: Cyclotomic, y: Cyclotomic, op: str) -> Cyclotomic:
    """add / sub / mul dispatch, embedding into the lcm order."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def conjugate(x: Cyclotomic) -> Cyclotomic:
    return x.conjugate()


def abs_squared(x: Cyclotomic) -> Cyclotomic:
    return x.abs_squared()


def is_zero(x: Cyclotomic) -> bool:
    return x.is_zero()


def equals_rational(x: Cyclotomic, q) -> bool:
    return x.equals_rational(q)


def root_sum(order: int, multiplicities) -> Cyclotomic:
    """Sum m_u * zeta_order^u for a multiplicity vector indexed by u."""
    return Cyclotomic(order, {u: Fraction(int(m)) for u, m in enumerate(multiplicities) if m})
