"""Completely reducible n-gonal curves and their fiber-derived invariants.

A curve is a product of graphs y = y_i(x) with exact rational coefficients.
Singular fibers sit at the x-values where components collide; collisions are
located by exhaustive rational-root extraction on the pairwise differences,
and any difference with a root outside Q makes the fiber set unresolvable
(IrrationalCollisionUnresolved names the offending pair).

Monodromy words are constructed only for the families whose monodromy is a
power of a (partial) full twist: `one_fiber_monodromy` gives ((s1..s_{n-1})^n)^d
and `partial_fiber_monodromy` the analogous twist on a contiguous strand range.
`analyze` classifies a curve, builds or accepts a monodromy, and computes the
Krammer polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .braid import BraidWord
from .errors import (
    IndexOutOfRange,
    IrrationalCollisionUnresolved,
    ParseError,
    PartTooSmall,
)
from .laurent import LaurentPoly
from .libgober import InvariantResult, MonodromyList, krammer_polynomial

_Coeffs = tuple[Fraction, ...]


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {v!r}") from exc
    raise ParseError(f"bad rational {v!r}")


def _trim(coeffs: list[Fraction]) -> _Coeffs:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _poly_sub(a: _Coeffs, b: _Coeffs) -> _Coeffs:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _poly_eval(p: _Coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _is_zero_poly(p: _Coeffs) -> bool:
    return all(c == 0 for c in p)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _deflate(p: _Coeffs, x0: Fraction) -> tuple[_Coeffs, Fraction]:
    """Synthetic division by (x - x0): returns (quotient, remainder)."""
    acc = Fraction(0)
    out = [Fraction(0)] * (len(p) - 1)
    for i in range(len(p) - 1, 0, -1):
        acc = acc * x0 + p[i]
        out[i - 1] = acc
    rem = acc * x0 + p[0]
    return _trim(out), rem


def _rational_roots(p: _Coeffs) -> tuple[dict[Fraction, int], bool]:
    """All rational roots with multiplicity; the flag is False when a factor
    of positive degree remains after extraction (roots outside Q exist)."""
    if _is_zero_poly(p):
        raise ParseError("zero polynomial has no well-defined root set")
    roots: dict[Fraction, int] = {}
    # factor out x^v
    v = 0
    while p[v] == 0:
        v += 1
    if v:
        roots[Fraction(0)] = v
        p = p[v:]
    if len(p) == 1:
        return roots, True
    # primitive integer form
    from math import gcd, lcm

    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    candidates = {
        Fraction(s * num, d)
        for num in _divisors(ints[0])
        for d in _divisors(ints[-1])
        for s in (1, -1)
    }
    work = tuple(Fraction(c) for c in ints)
    for cand in sorted(candidates):
        mult = 0
        while len(work) > 1:
            quo, rem = _deflate(work, cand)
            if rem != 0:
                break
            work = quo
            mult += 1
        if mult:
            roots[cand] = mult
    return roots, len(work) == 1


def _vanishing_order(p: _Coeffs, x0: Fraction) -> int:
    order = 0
    while len(p) >= 1 and not _is_zero_poly(p):
        quo, rem = _deflate(p, x0) if len(p) > 1 else ((), p[0])
        if rem != 0:
            break
        order += 1
        if not quo:
            break
        p = quo
    return order


def _taylor_shift(p: _Coeffs, x0: Fraction) -> _Coeffs:
    """Coefficients of p(x + x0): the Taylor expansion of p at x0."""
    out: list[Fraction] = []
    work = p
    while len(work) > 1:
        work, rem = _deflate(work, x0)
        out.append(rem)
    out.append(work[0])
    return _trim(out)


@dataclass(frozen=True)
class CompletelyReducibleCurve:
    """Product of n >= 2 graphs y = y_i(x); coefficients ascending in x."""

    components: tuple[_Coeffs, ...]

    def __post_init__(self):
        comps = tuple(
            _trim([_to_fraction(c) for c in comp]) for comp in self.components
        )
        object.__setattr__(self, "components", comps)
        if len(comps) < 2:
            raise ParseError("a completely reducible curve needs >= 2 components")
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                if comps[i] == comps[j]:
                    raise ParseError(
                        f"components {i + 1} and {j + 1} are identical; "
                        "the curve would be non-reduced"
                    )

    @property
    def n(self) -> int:
        return len(self.components)

    @classmethod
    def from_json(cls, payload) -> "CompletelyReducibleCurve":
        if not isinstance(payload, list):
            raise ParseError("curve JSON must be a list of coefficient lists")
        comps = []
        for comp in payload:
            if not isinstance(comp, list) or not comp:
                raise ParseError("each component must be a nonempty coefficient list")
            comps.append(tuple(_to_fraction(c) for c in comp))
        return cls(tuple(comps))

    def to_json(self) -> list[list[str]]:
        return [[str(c) for c in comp] for comp in self.components]


@dataclass(frozen=True)
class SingularFiberInfo:
    """One singular fiber: its x-value, the collision partition (1-based
    component indices, parts of size >= 2 only), and the common vanishing
    order of the colliding differences when there is one."""

    x_value: Fraction
    colliding: tuple[tuple[int, ...], ...]
    local_degree: int | None

    def components_involved(self) -> int:
        return sum(len(p) for p in self.colliding)

    def to_json(self) -> dict:
        return {
            "x": str(self.x_value),
            "colliding": [list(p) for p in self.colliding],
            "local_degree": self.local_degree,
        }


def singular_fibers(c: CompletelyReducibleCurve) -> list[SingularFiberInfo]:
    """Fibers at every rational x where >= 2 components share a y-value,
    ascending in x.  Raises when some pairwise difference has non-rational
    roots, naming the first offending pair."""
    comps = c.components
    n = len(comps)
    xs: set[Fraction] = set()
    diffs: dict[tuple[int, int], _Coeffs] = {}
    for i in range(n):
        for j in range(i + 1, n):
            diff = _poly_sub(comps[i], comps[j])
            diffs[(i + 1, j + 1)] = diff
            if len(diff) == 1:
                continue  # nonzero constant: never collide
            roots, resolved = _rational_roots(diff)
            if not resolved:
                raise IrrationalCollisionUnresolved((i + 1, j + 1))
            xs.update(roots)
    fibers = []
    for x0 in sorted(xs):
        groups: dict[Fraction, list[int]] = {}
        for idx, comp in enumerate(comps, 1):
            groups.setdefault(_poly_eval(comp, x0), []).append(idx)
        parts = tuple(
            sorted(tuple(g) for g in groups.values() if len(g) >= 2)
        )
        if not parts:
            continue
        orders = {
            _vanishing_order(diffs[(a, b)], x0)
            for part in parts
            for ai, a in enumerate(part)
            for b in part[ai + 1 :]
        }
        fibers.append(
            SingularFiberInfo(
                x_value=x0,
                colliding=parts,
                local_degree=orders.pop() if len(orders) == 1 else None,
            )
        )
    return fibers


def one_fiber_monodromy(n: int, d: int) -> BraidWord:
    """d-th power of the full twist: ((sigma_1 ... sigma_{n-1})^n)^d."""
    if n < 2:
        raise IndexOutOfRange(f"need >= 2 strands, got {n}")
    if d < 1:
        raise IndexOutOfRange(f"twist power must be >= 1, got {d}")
    return BraidWord(n, tuple(range(1, n)) * (n * d))


def partial_fiber_monodromy(n: int, part: tuple[int, int], d: int) -> BraidWord:
    """d-th power of the full twist on the contiguous strands a..b, written in
    sigma_a .. sigma_{b-1} only; essential in B_n by construction."""
    a, b = part
    if not (1 <= a <= b <= n):
        raise IndexOutOfRange(f"part [{a},{b}] outside strand range 1..{n}")
    m = b - a + 1
    if m < 2:
        raise PartTooSmall(f"part [{a},{b}] has {m} strand(s); need >= 2")
    if m >= n:
        raise IndexOutOfRange(
            f"part [{a},{b}] covers all {n} strands; a partial twist needs m < n"
        )
    if d < 1:
        raise IndexOutOfRange(f"twist power must be >= 1, got {d}")
    return BraidWord(n, tuple(range(a, b)) * (m * d))


@dataclass(frozen=True)
class OneFiberFamily:
    """Components of the shape y_i = a_i (x - center)^d + value with the a_i
    pairwise distinct: every component meets every other exactly at x=center,
    to order d."""

    d: int
    center: Fraction
    value: Fraction
    coefficients: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "center": str(self.center),
            "value": str(self.value),
            "coefficients": [str(a) for a in self.coefficients],
        }


def _detect_one_fiber_family(
    c: CompletelyReducibleCurve, fibers: list[SingularFiberInfo]
) -> OneFiberFamily | None:
    if len(fibers) != 1:
        return None
    fiber = fibers[0]
    if fiber.colliding != (tuple(range(1, c.n + 1)),):
        return None
    center = fiber.x_value
    shifted = [_taylor_shift(comp, center) for comp in c.components]
    exps = {
        e for coeffs in shifted for e, v in enumerate(coeffs) if e > 0 and v != 0
    }
    if len(exps) != 1:
        return None
    d = exps.pop()
    values = {coeffs[0] for coeffs in shifted}
    if len(values) != 1:
        return None
    leading = tuple(
        coeffs[d] if len(coeffs) > d else Fraction(0) for coeffs in shifted
    )
    if len(set(leading)) != len(leading):
        return None
    return OneFiberFamily(
        d=d, center=center, value=values.pop(), coefficients=leading
    )


@dataclass(frozen=True)
class CurveReport:
    """What `analyze` found: fibers (or why they are unresolved), the detected
    one-fiber family if any, the monodromy actually used, and the invariant."""

    n: int
    fibers: tuple[SingularFiberInfo, ...] | None
    family: OneFiberFamily | None
    predicted_polynomial: LaurentPoly | None
    comparison_polynomial: LaurentPoly | None
    monodromy: MonodromyList | None
    invariant: InvariantResult | None
    notes: tuple[str, ...]

    def local_zero_fibers(self) -> tuple[SingularFiberInfo, ...]:
        """Fibers where fewer than n components collide: the local monodromy
        fixes the remaining strands, so its local Krammer polynomial is 0."""
        if self.fibers is None:
            return ()
        return tuple(f for f in self.fibers if f.components_involved() < self.n)

    def to_dict(self) -> dict:
        fibers = None
        if self.fibers is not None:
            fibers = [
                dict(f.to_json(), local_zero=f.components_involved() < self.n)
                for f in self.fibers
            ]
        return {
            "n": self.n,
            "fibers": fibers,
            "family": self.family.to_json() if self.family else None,
            "predicted": (
                self.predicted_polynomial.to_json_terms()
                if self.predicted_polynomial is not None
                else None
            ),
            "comparison": (
                self.comparison_polynomial.to_json_terms()
                if self.comparison_polynomial is not None
                else None
            ),
            "monodromy": self.monodromy.to_json() if self.monodromy else None,
            "invariant": self.invariant.to_json() if self.invariant else None,
            "notes": list(self.notes),
        }


def analyze(
    c: CompletelyReducibleCurve, monodromy: MonodromyList | None = None
) -> CurveReport:
    """Classify the curve and compute its Krammer polynomial when possible.

    Without a supplied monodromy, an unresolvable collision propagates as
    IrrationalCollisionUnresolved; with one, it is downgraded to a note and
    the invariant is computed from the supplied words.  A detected one-fiber
    family yields a full-twist monodromy automatically; for n=3 the closed
    form (t^(2d) q^(6d) - 1)^3 is also predicted, for n>3 the same shape is
    reported for comparison only.
    """
    n = c.n
    notes: list[str] = []
    fibers: tuple[SingularFiberInfo, ...] | None
    try:
        fibers = tuple(singular_fibers(c))
    except IrrationalCollisionUnresolved as exc:
        if monodromy is None:
            raise
        fibers = None
        notes.append(
            f"singular fibers unresolved ({exc}); "
            "invariant computed from the supplied monodromy"
        )
    family = None
    if fibers is not None:
        family = _detect_one_fiber_family(c, list(fibers))
    used = monodromy
    if used is None and family is not None:
        used = MonodromyList.single(one_fiber_monodromy(n, family.d))
        notes.append(
            f"one-fiber family detected (d={family.d}); "
            "monodromy is the d-th power of the full twist"
        )
    predicted = comparison = None
    if family is not None:
        closed_form = (
            (
                LaurentPoly.monomial(1, 2 * family.d, 6 * family.d)
                - LaurentPoly.one()
            )
            ** comb(n, 2)
        ).normalize()
        if n == 3:
            predicted = closed_form
        else:
            comparison = closed_form
            notes.append(
                "comparison value (t^(2d)q^(6d)-1)^C(n,2) is reported, "
                "not asserted, for n>3; trust the computed invariant"
            )
    invariant = None
    if used is not None:
        invariant = krammer_polynomial(used)
    else:
        notes.append("no monodromy available; invariant not computed")
    return CurveReport(
        n=n,
        fibers=fibers,
        family=family,
        predicted_polynomial=predicted,
        comparison_polynomial=comparison,
        monodromy=used,
        invariant=invariant,
        notes=tuple(notes),
    )
