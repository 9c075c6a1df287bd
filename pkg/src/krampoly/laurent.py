"""Exact arithmetic in A = Z[t^+-1, q^+-1].

Polynomials are stored sparsely as {(e_t, e_q): coeff} with arbitrary-precision
integer coefficients.  Values are immutable: every operation returns a new
LaurentPoly, so instances can be shared freely between threads and caches.

Units of A are the signed monomials +-t^a*q^b.  normalize() picks a canonical
associate: minimal exponents shifted to zero and the lexicographically largest
term (ordered by e_t, then e_q) given a positive coefficient.  gcd() is
computed by a primitive polynomial-remainder sequence after stripping monomial
units, with integer gcd at the base; it always returns a normalized result.

Large products take a Kronecker-substitution fast path: terms are packed into
fixed-width byte slots of one huge integer per sign, multiplied with gmpy2,
and unpacked.  The schoolbook dict path remains, and the two are equivalent
(the test suite drives both).
"""

from __future__ import annotations

import heapq
import math
import re
from functools import reduce

import numpy as _np

from .errors import NegativePowerOfNonUnit, NotDivisible, ParseError

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int

# Dispatch thresholds for the packed fast paths.  Module-level so tests can
# pin them low and force every path over the same inputs.
_MUL_PACK_MIN_OPS = 3000
_MUL_PACK_MAX_BYTES = 1 << 26
_DIV_TMAJOR_MIN_OPS = 3000
_QMUL_PACK_MIN_OPS = 500

_Term = tuple[int, int]


def _term_sort_key(item: tuple[_Term, int]) -> _Term:
    return item[0]


class LaurentPoly:
    """An element of Z[t^+-1, q^+-1]."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        d: dict[_Term, int] = {}
        if terms:
            for key, c in dict(terms).items():
                et, eq = key
                c = int(c)
                if c:
                    d[(int(et), int(eq))] = c
        object.__setattr__(self, "_terms", d)

    @classmethod
    def _raw(cls, d: dict[_Term, int]) -> "LaurentPoly":
        # Trusted constructor: d already pruned, ownership transferred.
        self = object.__new__(cls)
        object.__setattr__(self, "_terms", d)
        return self

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "LaurentPoly":
        return _ONE

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.monomial(c, 0, 0)

    @classmethod
    def monomial(cls, coeff: int, e_t: int = 0, e_q: int = 0) -> "LaurentPoly":
        coeff = int(coeff)
        return cls._raw({(e_t, e_q): coeff} if coeff else {})

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True iff the value is +-t^a*q^b."""
        if len(self._terms) != 1:
            return False
        return abs(next(iter(self._terms.values()))) == 1

    def term_count(self) -> int:
        return len(self._terms)

    def terms(self) -> dict[_Term, int]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[_Term, int]]:
        """Terms in descending lex order on (e_t, e_q)."""
        return sorted(self._terms.items(), key=_term_sort_key, reverse=True)

    def coeff(self, e_t: int, e_q: int) -> int:
        return self._terms.get((e_t, e_q), 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            if other == 0:
                return not self._terms
            return self._terms == {(0, 0): other}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- ring operations ----------------------------------------------------

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        big, small = self._terms, other._terms
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._raw(out)

    def __rsub__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentPoly._raw(_mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_unit():
                raise NegativePowerOfNonUnit(
                    f"cannot raise non-unit {self} to power {k}"
                )
            (et, eq), c = next(iter(self._terms.items()))
            base = LaurentPoly._raw({(-et, -eq): c})
            k = -k
        else:
            base = self
        result = _ONE
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- canonical form -----------------------------------------------------

    def normalize(self) -> "LaurentPoly":
        """Canonical associate: minimal exponents zero, lex-max term positive."""
        if not self._terms:
            return _ZERO
        mt = min(k[0] for k in self._terms)
        mq = min(k[1] for k in self._terms)
        if mt or mq:
            d = {(et - mt, eq - mq): c for (et, eq), c in self._terms.items()}
        else:
            d = dict(self._terms)
        if d[max(d)] < 0:
            d = {k: -c for k, c in d.items()}
        return LaurentPoly._raw(d)

    def monomial_split(self) -> tuple[int, int, "LaurentPoly"]:
        """(a, b, p) with self = t^a*q^b * p and p having minimal exponents 0."""
        if not self._terms:
            return 0, 0, _ZERO
        mt = min(k[0] for k in self._terms)
        mq = min(k[1] for k in self._terms)
        if not (mt or mq):
            return 0, 0, self
        d = {(et - mt, eq - mq): c for (et, eq), c in self._terms.items()}
        return mt, mq, LaurentPoly._raw(d)

    # -- text / JSON forms --------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"

    def to_json_terms(self) -> list[list]:
        """[[e_t, e_q, coeff-as-decimal-string], ...] in descending lex order."""
        return [[et, eq, str(c)] for (et, eq), c in self.sorted_terms()]

    @classmethod
    def from_json_terms(cls, triples) -> "LaurentPoly":
        d: dict[_Term, int] = {}
        for entry in triples:
            try:
                et, eq, c = entry
                key = (int(et), int(eq))
                c = int(c)
            except (TypeError, ValueError) as exc:
                raise ParseError(f"bad polynomial term {entry!r}") from exc
            if key in d:
                raise ParseError(f"duplicate exponent pair {key} in terms")
            if c:
                d[key] = c
        return cls._raw(d)


def _coerce(value) -> "LaurentPoly":
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.monomial(value)
    return NotImplemented


_ZERO = LaurentPoly._raw({})
_ONE = LaurentPoly._raw({(0, 0): 1})
T = LaurentPoly._raw({(1, 0): 1})
Q = LaurentPoly._raw({(0, 1): 1})


# -- multiplication ---------------------------------------------------------


def _mul_terms(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    na, nb = len(a), len(b)
    ops = na * nb
    if ops > _MUL_PACK_MIN_OPS:
        packed = _mul_packed(a, b)
        if packed is not None:
            return packed
    if na < nb:
        a, b = b, a
    out: dict[_Term, int] = {}
    get = out.get
    for (et1, eq1), c1 in b.items():
        for (et2, eq2), c2 in a.items():
            k = (et1 + et2, eq1 + eq2)
            v = get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def _spans(d: dict) -> tuple[int, int, int, int]:
    ets = [k[0] for k in d]
    eqs = [k[1] for k in d]
    return min(ets), max(ets), min(eqs), max(eqs)


def _pack_split(d: dict, t0: int, q0: int, w: int, nbytes: int, size: int):
    bufp = bytearray(size)
    bufn = bytearray(size)
    used_n = False
    for (et, eq), c in d.items():
        off = ((et - t0) * w + (eq - q0)) * nbytes
        if c > 0:
            bufp[off : off + nbytes] = c.to_bytes(nbytes, "little")
        else:
            used_n = True
            bufn[off : off + nbytes] = (-c).to_bytes(nbytes, "little")
    pos = int.from_bytes(bufp, "little")
    neg = int.from_bytes(bufn, "little") if used_n else 0
    return pos, neg


def _decode_into(out: dict, value: int, nbytes: int, n_slots: int, w: int,
                 t_base: int, q_base: int, sign: int) -> None:
    if not value:
        return
    buf = value.to_bytes(n_slots * nbytes, "little")
    arr = _np.frombuffer(buf, dtype=_np.uint8).reshape(n_slots, nbytes)
    for k in _np.flatnonzero(arr.any(axis=1)).tolist():
        c = int.from_bytes(buf[k * nbytes : (k + 1) * nbytes], "little")
        key = (t_base + k // w, q_base + k % w)
        v = out.get(key, 0) + sign * c
        if v:
            out[key] = v
        else:
            del out[key]


def _mul_packed(a: dict, b: dict) -> dict | None:
    """Kronecker-substitution product, or None when the dense box is a bad fit."""
    ta0, ta1, qa0, qa1 = _spans(a)
    tb0, tb1, qb0, qb1 = _spans(b)
    w = (qa1 - qa0) + (qb1 - qb0) + 1
    ht = (ta1 - ta0) + (tb1 - tb0) + 1
    n_slots = ht * w
    if n_slots > 8 * len(a) * len(b):
        return None
    maxa = max(abs(c) for c in a.values())
    maxb = max(abs(c) for c in b.values())
    bound = maxa * maxb * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    if n_slots * nbytes > _MUL_PACK_MAX_BYTES:
        return None
    size_a = (((ta1 - ta0) * w) + (qa1 - qa0)) * nbytes + nbytes
    size_b = (((tb1 - tb0) * w) + (qb1 - qb0)) * nbytes + nbytes
    pa, na = _pack_split(a, ta0, qa0, w, nbytes, size_a)
    pb, nb = _pack_split(b, tb0, qb0, w, nbytes, size_b)
    mpa, mna, mpb, mnb = _mpz(pa), _mpz(na), _mpz(pb), _mpz(nb)
    pos = int(mpa * mpb + mna * mnb)
    neg = int(mpa * mnb + mna * mpb)
    out: dict[_Term, int] = {}
    _decode_into(out, pos, nbytes, n_slots, w, ta0 + tb0, qa0 + qb0, 1)
    _decode_into(out, neg, nbytes, n_slots, w, ta0 + tb0, qa0 + qb0, -1)
    return out


def accumulate_product(acc: dict, a: LaurentPoly, b: LaurentPoly) -> None:
    """acc += a*b, acc a raw term dict.  Shared by the matrix kernels."""
    ta, tb = a._terms, b._terms
    if not ta or not tb:
        return
    if len(ta) * len(tb) > _MUL_PACK_MIN_OPS:
        prod = _mul_terms(ta, tb)
        get = acc.get
        for k, c in prod.items():
            v = get(k, 0) + c
            if v:
                acc[k] = v
            else:
                del acc[k]
        return
    get = acc.get
    for (et1, eq1), c1 in ta.items():
        for (et2, eq2), c2 in tb.items():
            k = (et1 + et2, eq1 + eq2)
            v = get(k, 0) + c1 * c2
            if v:
                acc[k] = v
            else:
                del acc[k]


# -- exact division ---------------------------------------------------------


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Quotient a/b when b divides a exactly; raises NotDivisible otherwise."""
    if b.is_zero():
        raise NotDivisible("division by zero")
    if a.is_zero():
        return _ZERO
    if b.is_unit():
        (et, eq), c = next(iter(b._terms.items()))
        return LaurentPoly._raw(
            {(ket - et, keq - eq): kc * c for (ket, keq), kc in a._terms.items()}
        )
    at, aq, ah = a.monomial_split()
    bt, bq, bh = b.monomial_split()
    if len(ah._terms) * len(bh._terms) > _DIV_TMAJOR_MIN_OPS:
        q = _divexact_tmajor(ah._terms, bh._terms)
    else:
        q = _divexact_greedy(ah._terms, bh._terms)
    dt, dq = at - bt, aq - bq
    if dt or dq:
        q = {(et + dt, eq + dq): c for (et, eq), c in q.items()}
    return LaurentPoly._raw(q)


def _divexact_greedy(a: dict, b: dict) -> dict:
    """Lex-leading-term division.  a, b have minimal exponents zero, b != 0."""
    lead_b = max(b)
    lcb = b[lead_b]
    b_items = list(b.items())
    r = dict(a)
    heap = [(-et, -eq) for (et, eq) in r]
    heapq.heapify(heap)
    quo: dict[_Term, int] = {}
    while r:
        while True:
            net, neq = heap[0]
            key = (-net, -neq)
            if key in r:
                break
            heapq.heappop(heap)
        dt = key[0] - lead_b[0]
        dq = key[1] - lead_b[1]
        if dt < 0 or dq < 0:
            raise NotDivisible(f"{lead_b} does not divide leading term {key}")
        c = r[key]
        if c % lcb:
            raise NotDivisible(f"coefficient {c} not divisible by {lcb}")
        c //= lcb
        quo[(dt, dq)] = c
        for (et, eq), bc in b_items:
            k2 = (et + dt, eq + dq)
            v = r.get(k2, 0) - c * bc
            if v:
                if k2 not in r:
                    heapq.heappush(heap, (-k2[0], -k2[1]))
                r[k2] = v
            else:
                r.pop(k2, None)
    return quo


def _divexact_tmajor(a: dict, b: dict) -> dict:
    """Long division in t with packed univariate convolutions in q."""
    rt: dict[int, dict[int, int]] = {}
    for (et, eq), c in a.items():
        rt.setdefault(et, {})[eq] = c
    bt: dict[int, dict[int, int]] = {}
    for (et, eq), c in b.items():
        bt.setdefault(et, {})[eq] = c
    b_top_deg = max(bt)
    b_top = bt[b_top_deg]
    b_slices = list(bt.items())
    quo: dict[_Term, int] = {}
    while rt:
        r_top_deg = max(rt)
        k = r_top_deg - b_top_deg
        if k < 0:
            raise NotDivisible("t-degree of remainder fell below divisor")
        c_slice = _q_divexact(rt[r_top_deg], b_top)
        for eq, c in c_slice.items():
            quo[(k, eq)] = c
        for et, bs in b_slices:
            target = rt.get(et + k)
            if target is None:
                target = {}
                rt[et + k] = target
            prod = _q_mul(c_slice, bs)
            get = target.get
            for eq, c in prod.items():
                v = get(eq, 0) - c
                if v:
                    target[eq] = v
                else:
                    del target[eq]
            if not target:
                del rt[et + k]
    return quo


def _q_divexact(r: dict, b: dict) -> dict:
    """Exact division of univariate q-dicts (nonnegative exponents)."""
    lead_b = max(b)
    lcb = b[lead_b]
    b_items = list(b.items())
    rem = dict(r)
    quo: dict[int, int] = {}
    while rem:
        m = max(rem)
        d = m - lead_b
        if d < 0:
            raise NotDivisible("q-degree of remainder fell below divisor")
        c = rem[m]
        if c % lcb:
            raise NotDivisible(f"coefficient {c} not divisible by {lcb}")
        c //= lcb
        quo[d] = c
        for e, bc in b_items:
            k2 = e + d
            v = rem.get(k2, 0) - c * bc
            if v:
                rem[k2] = v
            else:
                rem.pop(k2, None)
    return quo


def _q_mul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) * len(b) > _QMUL_PACK_MIN_OPS:
        a0, a1 = min(a), max(a)
        b0, b1 = min(b), max(b)
        n_slots = (a1 - a0) + (b1 - b0) + 1
        maxa = max(abs(c) for c in a.values())
        maxb = max(abs(c) for c in b.values())
        bound = maxa * maxb * min(len(a), len(b))
        nbytes = (bound.bit_length() + 2 + 7) // 8
        if n_slots * nbytes <= _MUL_PACK_MAX_BYTES:
            pa, na = _pack_split_1d(a, a0, nbytes, (a1 - a0) * nbytes + nbytes)
            pb, nb = _pack_split_1d(b, b0, nbytes, (b1 - b0) * nbytes + nbytes)
            mpa, mna, mpb, mnb = _mpz(pa), _mpz(na), _mpz(pb), _mpz(nb)
            pos = int(mpa * mpb + mna * mnb)
            neg = int(mpa * mnb + mna * mpb)
            out: dict[int, int] = {}
            _decode_into_1d(out, pos, nbytes, n_slots, a0 + b0, 1)
            _decode_into_1d(out, neg, nbytes, n_slots, a0 + b0, -1)
            return out
    out = {}
    get = out.get
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = e1 + e2
            v = get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def _pack_split_1d(d: dict, e0: int, nbytes: int, size: int):
    bufp = bytearray(size)
    bufn = bytearray(size)
    used_n = False
    for e, c in d.items():
        off = (e - e0) * nbytes
        if c > 0:
            bufp[off : off + nbytes] = c.to_bytes(nbytes, "little")
        else:
            used_n = True
            bufn[off : off + nbytes] = (-c).to_bytes(nbytes, "little")
    return int.from_bytes(bufp, "little"), (
        int.from_bytes(bufn, "little") if used_n else 0
    )


def _decode_into_1d(out: dict, value: int, nbytes: int, n_slots: int,
                    base: int, sign: int) -> None:
    if not value:
        return
    buf = value.to_bytes(n_slots * nbytes, "little")
    arr = _np.frombuffer(buf, dtype=_np.uint8).reshape(n_slots, nbytes)
    for k in _np.flatnonzero(arr.any(axis=1)).tolist():
        c = int.from_bytes(buf[k * nbytes : (k + 1) * nbytes], "little")
        v = out.get(base + k, 0) + sign * c
        if v:
            out[base + k] = v
        else:
            del out[base + k]


# -- gcd via primitive polynomial remainder sequences ------------------------
#
# After unit stripping both inputs live in Z[t, q], viewed as Z[q][t] in dense
# recursive form: a t-polynomial is a list of q-polynomials, a q-polynomial a
# list of ints (index = exponent).  Contents are pulled out at each level, the
# PRS runs on primitive parts, and integer gcd sits at the base.


def gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Normalized gcd; gcd(x, 0) = normalize(x), gcd(0, 0) = 0."""
    if a.is_zero():
        return b.normalize()
    if b.is_zero():
        return a.normalize()
    if a.is_unit() or b.is_unit():
        return _ONE
    fa = _to_dense(a.normalize())
    fb = _to_dense(b.normalize())
    return _from_dense(_t_gcd(fa, fb)).normalize()


def _to_dense(p: LaurentPoly) -> list[list[int]]:
    rows: dict[int, dict[int, int]] = {}
    for (et, eq), c in p._terms.items():
        rows.setdefault(et, {})[eq] = c
    out: list[list[int]] = []
    for et in range(max(rows) + 1):
        row = rows.get(et)
        if row:
            qs = [0] * (max(row) + 1)
            for eq, c in row.items():
                qs[eq] = c
            out.append(qs)
        else:
            out.append([])
    return out


def _from_dense(f: list[list[int]]) -> LaurentPoly:
    d: dict[_Term, int] = {}
    for et, row in enumerate(f):
        for eq, c in enumerate(row):
            if c:
                d[(et, eq)] = c
    return LaurentPoly._raw(d)


def _q_trim(f: list[int]) -> list[int]:
    while f and not f[-1]:
        f.pop()
    return f


def _q_mul_dense(f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, ci in enumerate(f):
        if ci:
            for j, cj in enumerate(g):
                if cj:
                    out[i + j] += ci * cj
    return _q_trim(out)


def _q_sub_dense(f: list[int], g: list[int]) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] -= c
    return _q_trim(out)


def _q_content(f: list[int]) -> int:
    return reduce(math.gcd, (abs(c) for c in f if c))


def _q_scale_div(f: list[int], n: int) -> list[int]:
    return [c // n for c in f]


def _q_prem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of dense integer polynomials, deg f >= deg g >= 1."""
    dg = len(g) - 1
    lc = g[-1]
    r = list(f)
    e = len(f) - len(g) + 1
    while r and len(r) - 1 >= dg:
        lt = r[-1]
        shift = len(r) - 1 - dg
        new = [c * lc for c in r[:-1]]
        for i, gc in enumerate(g[:-1]):
            new[shift + i] -= lt * gc
        r = _q_trim(new)
        e -= 1
    if e > 0:
        le = lc**e
        r = [c * le for c in r]
    return r


def _q_gcd(f: list[int], g: list[int]) -> list[int]:
    f = _q_trim(list(f))
    g = _q_trim(list(g))
    if not f:
        return [-c for c in g] if g and g[-1] < 0 else g
    if not g:
        return [-c for c in f] if f[-1] < 0 else f
    cf, cg = _q_content(f), _q_content(g)
    c = math.gcd(cf, cg)
    f = _q_scale_div(f, cf)
    g = _q_scale_div(g, cg)
    if len(f) < len(g):
        f, g = g, f
    while g and len(g) > 1:
        r = _q_prem(f, g)
        if r:
            r = _q_scale_div(r, _q_content(r))
        f, g = g, r
    if g:
        return [c]
    if f[-1] < 0:
        f = [-x for x in f]
    return [x * c for x in f]


def _t_content(f: list[list[int]]) -> list[int]:
    c: list[int] = []
    for row in f:
        if row:
            c = _q_gcd(c, row)
            if c == [1]:
                return c
    return c


def _t_scale_div(f: list[list[int]], c: list[int]) -> list[list[int]]:
    if c == [1]:
        return [list(row) for row in f]
    cd = {i: v for i, v in enumerate(c) if v}
    out = []
    for row in f:
        if row:
            q = _q_divexact({i: v for i, v in enumerate(row) if v}, cd)
            qs = [0] * (max(q) + 1)
            for e, v in q.items():
                qs[e] = v
            out.append(qs)
        else:
            out.append([])
    return out


def _t_trim(f: list[list[int]]) -> list[list[int]]:
    while f and not f[-1]:
        f.pop()
    return f


def _t_prem(f: list[list[int]], g: list[list[int]]) -> list[list[int]]:
    dg = len(g) - 1
    lc = g[-1]
    r = [list(row) for row in f]
    e = len(f) - len(g) + 1
    while r and len(r) - 1 >= dg:
        lt = r[-1]
        shift = len(r) - 1 - dg
        new = [_q_mul_dense(row, lc) for row in r[:-1]]
        for i, gc in enumerate(g[:-1]):
            new[shift + i] = _q_sub_dense(new[shift + i], _q_mul_dense(lt, gc))
        r = _t_trim(new)
        e -= 1
    if e > 0:
        le = lc
        for _ in range(e - 1):
            le = _q_mul_dense(le, lc)
        r = [_q_mul_dense(row, le) for row in r]
    return r


def _t_gcd(f: list[list[int]], g: list[list[int]]) -> list[list[int]]:
    f = _t_trim([list(r) for r in f])
    g = _t_trim([list(r) for r in g])
    cf, cg = _t_content(f), _t_content(g)
    c = _q_gcd(cf, cg)
    f = _t_scale_div(f, cf)
    g = _t_scale_div(g, cg)
    if len(f) < len(g):
        f, g = g, f
    while g and len(g) > 1:
        r = _t_prem(f, g)
        r = _t_trim(r)
        if r:
            r = _t_scale_div(r, _t_content(r))
        f, g = g, r
    if g:
        f = [[1]]
    return [_q_mul_dense(row, c) for row in f]


# -- text form ---------------------------------------------------------------


def _format_var(name: str, e: int) -> str | None:
    if e == 0:
        return None
    if e == 1:
        return name
    return f"{name}^{e}"


def format_poly(p: LaurentPoly) -> str:
    """Canonical text form: terms in descending lex order, `c*t^a*q^b` with
    unit parts omitted, e.g. `t^2*q^6 - 1`."""
    terms = p.sorted_terms()
    if not terms:
        return "0"
    chunks: list[str] = []
    for idx, ((et, eq), c) in enumerate(terms):
        parts = []
        tv = _format_var("t", et)
        qv = _format_var("q", eq)
        if abs(c) != 1 or (tv is None and qv is None):
            parts.append(str(abs(c)))
        if tv:
            parts.append(tv)
        if qv:
            parts.append(qv)
        body = "*".join(parts)
        if idx == 0:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(chunks)


_TOKEN_RE = re.compile(r"\s*([+-]|\*|[0-9]+|t|q|\^)")


def parse_poly(text: str) -> LaurentPoly:
    """Parse the text form emitted by format_poly (plus harmless variants)."""
    if not isinstance(text, str):
        raise ParseError(f"expected string, got {type(text).__name__}")
    pos = 0
    tokens: list[str] = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character at {pos}: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial text")
    terms: dict[_Term, int] = {}
    i = 0
    n = len(tokens)

    def parse_exponent(j: int) -> tuple[int, int]:
        # after '^': optional sign then digits
        sign = 1
        if j < n and tokens[j] == "-":
            sign = -1
            j += 1
        elif j < n and tokens[j] == "+":
            j += 1
        if j >= n or not tokens[j].isdigit():
            raise ParseError("missing exponent after '^'")
        return sign * int(tokens[j]), j + 1

    while i < n:
        sign = 1
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign at end of polynomial")
        coeff = None
        et = eq = 0
        expect_factor = True
        while True:
            if not expect_factor:
                break
            tok = tokens[i] if i < n else None
            if tok is not None and tok.isdigit():
                coeff = int(tok) if coeff is None else coeff * int(tok)
                i += 1
            elif tok in ("t", "q"):
                i += 1
                e = 1
                if i < n and tokens[i] == "^":
                    e, i = parse_exponent(i + 1)
                if tok == "t":
                    et += e
                else:
                    eq += e
            else:
                raise ParseError(f"expected factor, got {tok!r}")
            if i < n and tokens[i] == "*":
                i += 1
                expect_factor = True
            else:
                expect_factor = False
        c = sign * (1 if coeff is None else coeff)
        key = (et, eq)
        v = terms.get(key, 0) + c
        if v:
            terms[key] = v
        else:
            terms.pop(key, None)
        if i < n and tokens[i] not in "+-":
            raise ParseError(f"expected '+' or '-', got {tokens[i]!r}")
    return LaurentPoly._raw(terms)
