"""Exact coefficients: multivariate Laurent polynomials over Q, and exact
linear algebra over the fraction field of the Laurent ring.

Exponent vectors are packed into a single Python integer (balanced digits
in base 2**24) so that multiplying monomials is integer addition.  With a
single variable the packed key is simply the exponent.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

try:  # big-integer elimination runs noticeably faster on mpz
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover
    _big = int

_SHIFT = 24
_BASE = 1 << _SHIFT
_HALF = _BASE >> 1


class VariableMismatch(ValueError):
    """Raised when two operands live over different variable sets."""


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class LaurentRing:
    """The ring Q[v_1^{+-1}, ..., v_k^{+-1}] with named variables."""

    _cache: dict = {}

    def __new__(cls, names: Sequence[str] = ("q",)):
        names = tuple(names)
        hit = cls._cache.get(names)
        if hit is not None:
            return hit
        if not names or len(set(names)) != len(names):
            raise ValueError(f"bad variable names {names!r}")
        self = super().__new__(cls)
        self.names = names
        self.nvars = len(names)
        self.zero = LaurentPoly(self, {})
        self.one = LaurentPoly(self, {0: 1})
        cls._cache[names] = self
        return self

    def __reduce__(self):
        return (LaurentRing, (self.names,))

    def __repr__(self):
        return f"LaurentRing({self.names!r})"

    # key packing -------------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        if self.nvars == 1:
            return int(exps[0])
        key = 0
        for v in range(self.nvars - 1, -1, -1):
            e = exps[v]
            if not -_HALF < e < _HALF:
                raise OverflowError("exponent out of packing range")
            key = key * _BASE + e
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        if self.nvars == 1:
            return (key,)
        out = []
        for _ in range(self.nvars):
            d = key & (_BASE - 1)
            if d >= _HALF:
                d -= _BASE
            out.append(d)
            key = (key - d) >> _SHIFT
        return tuple(out)

    # constructors ------------------------------------------------------
    def gen(self, name: str) -> "LaurentPoly":
        exps = [0] * self.nvars
        exps[self.names.index(name)] = 1
        return LaurentPoly(self, {self.pack(exps): 1})

    def gens(self) -> tuple["LaurentPoly", ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exps: Sequence[int], coeff=1) -> "LaurentPoly":
        coeff = _norm_coeff(coeff)
        if coeff == 0:
            return self.zero
        return LaurentPoly(self, {self.pack(exps): coeff})

    def const(self, c) -> "LaurentPoly":
        c = _norm_coeff(Fraction(c) if not isinstance(c, int) else c)
        return LaurentPoly(self, {0: c}) if c else self.zero

    def coerce(self, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            if x.ring is not self:
                raise VariableMismatch(f"{x.ring.names} vs {self.names}")
            return x
        if isinstance(x, (int, Fraction)):
            return self.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def parse(self, text: str) -> "LaurentPoly":
        return parse_laurent(text, self)


class LaurentPoly:
    """Immutable Laurent polynomial; ``terms`` maps packed keys to nonzero
    int/Fraction coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: LaurentRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit_monomial(self) -> bool:
        if len(self.terms) != 1:
            return False
        (c,) = self.terms.values()
        return c == 1 or c == -1

    def constant_value(self):
        """The rational value if this is a constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        return None

    def _check(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.ring is not self.ring:
                raise VariableMismatch(f"{self.ring.names} vs {other.ring.names}")
            return other
        return self.ring.coerce(other)

    # arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k, 0) + c
            if s:
                t[k] = _norm_coeff(s)
            else:
                t.pop(k, None)
        return LaurentPoly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((kb, cb),) = b.items()
            if kb == 0 and cb == 1:
                return self if a is self.terms else other
            return LaurentPoly(self.ring, {ka + kb: _norm_coeff(ca * cb) for ka, ca in a.items()})
        t: dict = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        return LaurentPoly(self.ring, {k: _norm_coeff(c) for k, c in t.items() if c})

    __rmul__ = __mul__

    def mul_monomial(self, key: int, coeff=1) -> "LaurentPoly":
        """Multiply by ``coeff * monomial(key)`` where key is already packed."""
        if coeff == 1:
            return LaurentPoly(self.ring, {k + key: c for k, c in self.terms.items()})
        if coeff == 0:
            return self.ring.zero
        return LaurentPoly(self.ring, {k + key: _norm_coeff(c * coeff) for k, c in self.terms.items()})

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial (the only units of the ring)."""
        if len(self.terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit")
        ((k, c),) = self.terms.items()
        return LaurentPoly(self.ring, {-k: _norm_coeff(Fraction(1) / c)})

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.ring.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        other = self._check(other)
        q = exact_divide(self, other)
        if q is None:
            raise ArithmeticError(f"({self}) is not divisible by ({other})")
        return q

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    # inspection --------------------------------------------------------
    def exponents(self) -> list[tuple[tuple[int, ...], object]]:
        return [(self.ring.unpack(k), c) for k, c in self.terms.items()]

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.exponents(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def evaluate(self, values: Sequence, modulus: int | None = None):
        """Evaluate at a point.  With ``modulus`` the computation is done in
        Z/modulus and Fraction coefficients are inverted mod the modulus."""
        total = 0
        if modulus is None:
            for exps, c in self.exponents():
                term = Fraction(c)
                for v, e in zip(values, exps):
                    term *= Fraction(v) ** e
                total += term
            return _norm_coeff(total) if isinstance(total, Fraction) else total
        p = modulus
        for exps, c in self.exponents():
            if isinstance(c, Fraction):
                cm = c.numerator * pow(c.denominator, -1, p)
            else:
                cm = c
            for v, e in zip(values, exps):
                if e:
                    cm = cm * pow(v, e, p)
            total = (total + cm) % p
        return total

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"


# ---------------------------------------------------------------------------
# text format

def _fmt_num(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_laurent(a: LaurentPoly) -> str:
    if not a.terms:
        return "0"
    names = a.ring.names
    parts: list[str] = []
    for exps, c in a.sorted_terms():
        neg = c < 0
        mag = -c if neg else c
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if not factors:
            body = _fmt_num(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _fmt_num(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?|([+\-*()]))")


def parse_laurent(text: str, ring: LaurentRing | None = None) -> LaurentPoly:
    """Parse the printed form, e.g. ``q^2 - 2 + q^-2`` or ``3/2*q*t1^-1``.

    Only sums of products of numbers and powers of variables are accepted.
    """
    ring = ring or LaurentRing()
    s = text.strip()
    if s == "0":
        return ring.zero
    pos = 0
    total = ring.zero
    sign = 1
    expect_term = True
    term = None
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            if s[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse {text!r} at {pos}")
        pos = m.end()
        num, var, exp, op = m.groups()
        if op in ("+", "-"):
            if term is not None:
                total = total + term * sign
                term = None
            sign = 1 if op == "+" else -1
            expect_term = True
            continue
        if op == "*":
            if term is None:
                raise ValueError(f"dangling '*' in {text!r}")
            expect_term = True
            continue
        if op in ("(", ")"):
            raise ValueError("parentheses are not part of the format")
        if not expect_term:
            raise ValueError(f"missing operator in {text!r}")
        if num is not None:
            factor = ring.const(Fraction(num))
        else:
            if var not in ring.names:
                raise VariableMismatch(f"unknown variable {var!r} for {ring!r}")
            factor = ring.gen(var) ** int(exp or 1)
        term = factor if term is None else term * factor
        expect_term = False
    if term is not None:
        total = total + term * sign
    return total


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str):
    """Dispatch one ring operation: add, sub, mul, neg (ignores b) or eq."""
    if a.ring is not b.ring:
        raise VariableMismatch(f"{a.ring.names} vs {b.ring.names}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# division

def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly | None:
    """Return a/b if it is a Laurent polynomial, else None.

    Long division under the graded-lex order.  Monomial orders are
    multiplicative, so every term of an exact quotient lies between
    trail(a)/trail(b) and lead(a)/lead(b); falling below that is a proof
    that b does not divide a.
    """
    if not b.terms:
        raise ZeroDivisionError("division by zero polynomial")
    ring = a.ring
    if not a.terms:
        return ring.zero
    if len(b.terms) == 1:
        return a * b.inverse()

    def order(k):
        e = ring.unpack(k)
        return (sum(e), e)

    lead_b = max(b.terms, key=order)
    trail_b = min(b.terms, key=order)
    cb = Fraction(b.terms[lead_b])
    floor = order(min(a.terms, key=order) - trail_b)
    rem = dict(a.terms)
    quot: dict = {}
    while rem:
        lk = max(rem, key=order)
        shift = lk - lead_b
        if order(shift) < floor:
            return None
        c = _norm_coeff(rem[lk] / cb)
        quot[shift] = c
        for k, v in b.terms.items():
            kk = k + shift
            t = _norm_coeff(rem.get(kk, 0) - c * v)
            if t:
                rem[kk] = t
            else:
                rem.pop(kk, None)
    return LaurentPoly(ring, quot)


@dataclass(frozen=True)
class RatFunc:
    """A quotient num/den of Laurent polynomials (den nonzero)."""

    num: LaurentPoly
    den: LaurentPoly

    def simplify(self):
        """The Laurent polynomial num/den if the division is exact, else self."""
        q = exact_divide(self.num, self.den)
        return q if q is not None else self

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num * other.den == other.num * self.den
        if isinstance(other, (LaurentPoly, int, Fraction)):
            return self.num == self.den * other
        return NotImplemented

    def __hash__(self):  # pragma: no cover - equality is up to scaling
        return 0

    def __str__(self):
        return f"({self.num}) / ({self.den})"


# ---------------------------------------------------------------------------
# exact linear algebra

ExactMatrix = list  # list of rows, each a list of LaurentPoly


def _ring_of(rows) -> LaurentRing:
    for r in rows:
        for x in r:
            if isinstance(x, LaurentPoly):
                return x.ring
    return LaurentRing()


def _check_ring(rows, ring):
    for r in rows:
        for x in r:
            if isinstance(x, LaurentPoly) and x.ring is not ring:
                raise VariableMismatch(f"{x.ring.names} vs {ring.names}")


_PRIMES = (
    2305843009213693951,  # 2**61 - 1
    4611686018427387847,
    9223372036854775783,
    1152921504606846883,
)


def modular_echelon(rows: Sequence[Sequence[int]], p: int):
    """Gaussian elimination over Z/p on integer rows.  Returns (rank,
    pivot_rows, pivot_cols) with pivot_rows indexing the input rows in the
    order they were taken (first independent rows win)."""
    basis: list[tuple[int, list[int]]] = []  # (pivot col, normalized row)
    pivot_rows: list[int] = []
    pivot_cols: list[int] = []
    for idx, row in enumerate(rows):
        v = [x % p for x in row]
        for col, b in basis:
            f = v[col]
            if f:
                for j, bj in enumerate(b):
                    if bj:
                        v[j] = (v[j] - f * bj) % p
        for col, x in enumerate(v):
            if x:
                inv = pow(x, -1, p)
                v = [(y * inv) % p for y in v]
                basis.append((col, v))
                pivot_rows.append(idx)
                pivot_cols.append(col)
                break
    return len(basis), pivot_rows, pivot_cols


def evaluate_matrix(M, point: Sequence[int], p: int):
    return [[(x.evaluate(point, p) if isinstance(x, LaurentPoly) else x % p) for x in row] for row in M]


def modular_rank(M, seed: int = 0, prime: int | None = None):
    """Rank of M at a random point modulo a large prime: a certified lower
    bound on the rank over the fraction field.  Returns (rank, pivot_rows,
    pivot_cols)."""
    if not M:
        return 0, [], []
    ring = _ring_of(M)
    rng = random.Random(seed * 7919 + len(M))
    for attempt in range(8):
        p = prime or _PRIMES[(seed + attempt) % len(_PRIMES)]
        point = [rng.randrange(2, p - 1) for _ in range(ring.nvars)]
        try:
            ev = evaluate_matrix(M, point, p)
        except ValueError:  # a denominator vanished mod p
            continue
        return modular_echelon(ev, p)
    raise RuntimeError("no usable evaluation prime")


def evaluation_rank(M, points: Iterable[Sequence]) -> int:
    """max over rational points of the exact rank of M specialised there."""
    best = 0
    for pt in points:
        rows = [[Fraction(x.evaluate(pt)) if isinstance(x, LaurentPoly) else Fraction(x) for x in row] for row in M]
        best = max(best, _fraction_rank(rows))
    return best


def _fraction_rank(rows) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f / pr[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank


def _integer_rows(rows_polys, ring: LaurentRing):
    """Scale each row by a monomial and an integer so every entry becomes a
    polynomial with integer coefficients and nonnegative exponents.  Row
    scaling changes neither the rank nor the solutions of ``M x = t`` when
    the target is carried as an extra column.  Returns (rows, spans, norms)
    with entries as {exponent tuple: int}."""
    nv = ring.nvars
    out_rows, spans, norms = [], [], []
    for row in rows_polys:
        exps_all = [e for x in row for e, _ in x.exponents()]
        if exps_all:
            lo = [min(e[v] for e in exps_all) for v in range(nv)]
            hi = [max(e[v] for e in exps_all) for v in range(nv)]
        else:
            lo = hi = [0] * nv
        den = 1
        for x in row:
            for c in x.terms.values():
                if isinstance(c, Fraction):
                    den = lcm(den, c.denominator)
        out = []
        l1 = 0
        for x in row:
            d = {}
            for e, c in x.exponents():
                ce = int(c * den)
                d[tuple(ei - li for ei, li in zip(e, lo))] = ce
                l1 += abs(ce)
            out.append(d)
        out_rows.append(out)
        spans.append([h - l for h, l in zip(hi, lo)])
        norms.append(max(l1, 1))
    return out_rows, spans, norms


def _top_product(values, depth):
    out = 1
    for v in sorted(values, reverse=True)[:depth]:
        out *= v
    return out


class _Kronecker:
    """Integer images of integer polynomial rows under q_v -> X**w_v with
    X = 2**b large enough that every minor is recoverable."""

    def __init__(self, rows_polys, ring: LaurentRing):
        self.ring = ring
        self.rows, self.spans, self.norms = _integer_rows(rows_polys, ring)

    def setup(self, depth: int):
        """Choose X for minors of size <= depth."""
        nv = self.ring.nvars
        self.bits = _top_product(self.norms, depth).bit_length() + 2
        self.radix = [sum(sorted((s[v] for s in self.spans), reverse=True)[:depth]) + 1 for v in range(nv)]
        self.weights = []
        w = 1
        for d in self.radix:
            self.weights.append(w)
            w *= d

    def image(self):
        b = self.bits
        out = []
        for row in self.rows:
            r = []
            for d in row:
                v = 0
                for e, c in d.items():
                    v += _big(c) << (b * sum(ei * wi for ei, wi in zip(e, self.weights)))
                r.append(_big(v))
            out.append(r)
        return out

    def recover(self, value) -> LaurentPoly:
        """Inverse image of an integer value of a minor-like polynomial."""
        ring = self.ring
        b = self.bits
        mask = (1 << b) - 1
        half = 1 << (b - 1)
        v = int(value)
        terms = {}
        idx = 0
        while v:
            d = v & mask
            if d >= half:
                d -= 1 << b
            if d:
                exps = []
                rest = idx
                for r in self.radix:
                    exps.append(rest % r)
                    rest //= r
                if rest:
                    raise ArithmeticError("Kronecker recovery overflow")
                terms[ring.pack(exps)] = d
            v = (v - d) >> b
            idx += 1
        return LaurentPoly(ring, terms)


def _bareiss(A, ncols_main: int):
    """Fraction-free row echelon of integer matrix A (in place).  Pivots are
    searched only in the first ncols_main columns.  Returns (rank, pivot
    column list, pivot row order list)."""
    nrows = len(A)
    order = list(range(nrows))
    prev = _big(1)
    r = 0
    pcols = []
    ncols = len(A[0]) if A else 0
    for c in range(ncols_main):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if A[i][c]:
                if piv is None or abs(A[i][c]) < abs(A[piv][c]):
                    piv = i
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        order[r], order[piv] = order[piv], order[r]
        pr = A[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = A[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (pv * row[j] - f * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = (pv * row[j]) // prev
            row[c] = 0
        prev = pv
        pcols.append(c)
        r += 1
    return r, pcols, order


def _tensor_mod(rows, p: int):
    """Coefficient tensor (rows x cols x degree) mod p of univariate integer
    rows from ``_integer_rows``."""
    import numpy as np

    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    deg = 1 + max((e[0] for row in rows for d in row for e in d), default=0)
    C = np.zeros((nr, nc, deg), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, d in enumerate(row):
            for e, c in d.items():
                C[i, j, e[0]] = c % p
    return C


_GRID_PRIME_TOP = (1 << 31) - 1


def _grid_primes():
    """Primes below 2**31, descending, generated on demand."""
    p = _GRID_PRIME_TOP
    from gmpy2 import is_prime
    while True:
        if is_prime(p):
            yield p
        p -= 2


def certified_rank_univariate(M, ring: LaurentRing, seed: int = 0) -> int:
    """Exact rank of a univariate Laurent matrix by a deterministic
    evaluation certificate.

    After row scaling, an (r+1)-minor is an integer polynomial of degree at
    most D (sum of the r+1 largest row spans) with coefficients bounded by
    the product B of the r+1 largest row L1 norms.  If it is nonzero it
    stays nonzero modulo one of a set of primes whose product exceeds B, and
    then cannot vanish at D+1 distinct points.  So rank <= r once every
    evaluation on that grid has rank <= r; evaluations only ever give lower
    bounds, so the result is exact.
    """
    from . import _modp

    rows, spans, norms = _integer_rows(M, ring)
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    full = min(nr, nc)
    if full == 0:
        return 0
    spans1 = [s[0] for s in spans]
    rng = random.Random(seed)
    p0 = _GRID_PRIME_TOP
    C0 = _tensor_mod(rows, p0)
    r = int(_modp.rank_mod(_modp.eval_tensor(C0, rng.randrange(2, p0 - 1), p0), p0))
    tensors = {p0: C0}
    while r < full:
        bound = _top_product(norms, r + 1)
        npts = sum(sorted(spans1, reverse=True)[: r + 1]) + 1
        prod = 1
        raised = False
        for p in _grid_primes():
            if prod > bound:
                break
            C = tensors.get(p)
            if C is None:
                C = tensors[p] = _tensor_mod(rows, p)
            got = int(_modp.grid_max_rank(C, p, npts, 0, r))
            if got > r:
                r = got
                raised = True
                break
            prod *= p
        if not raised:
            break
    return r


_BAREISS_CELLS = 400


@dataclass
class RankSolveResult:
    rank: int
    consistent: bool | None = None
    solution: list | None = None  # entries are LaurentPoly or RatFunc


def exact_rank_solve(M, target: Sequence | None = None, seed: int = 0) -> RankSolveResult:
    """Rank of M over the fraction field of its Laurent ring; with a target
    column, whether ``M x = target`` is solvable and one solution.

    A random modular evaluation gives a certified lower bound and settles
    full-rank cases.  Deficient cases go to fraction-free elimination on a
    Kronecker image (small or multivariate matrices) or to the evaluation
    grid certificate (large univariate ones).  Solutions come from
    fraction-free elimination on a nonsingular pivot block.
    """
    M = [list(r) for r in M]
    ring = _ring_of(M) if M else LaurentRing()
    if target is not None:
        target = [ring.coerce(t) for t in target]
        if target:
            ring = target[0].ring
    _check_ring(M, ring)
    M = [[ring.coerce(x) for x in row] for row in M]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    if target is not None and len(target) != nrows:
        raise ValueError("target length does not match row count")
    r = _rank(M, ring, seed)
    if target is None:
        return RankSolveResult(r)
    if ncols == 0:
        ok = all(t.is_zero() for t in target)
        return RankSolveResult(0, ok, [] if ok else None)
    aug = [row + [t] for row, t in zip(M, target)]
    if _rank(aug, ring, seed) > r:
        return RankSolveResult(r, False, None)
    sol: list = [ring.zero] * ncols
    if r == 0:
        return RankSolveResult(0, True, sol)
    # a nonsingular r x r block of M; consistency makes its solution global
    _, prows, pcols = modular_rank(M, seed)
    while len(prows) < r:  # unlucky evaluation point: retry elsewhere
        seed += 1
        _, prows, pcols = modular_rank(M, seed)
    block = [[M[i][j] for j in pcols] + [target[i]] for i in prows]
    kr = _Kronecker(block, ring)
    kr.setup(r)
    A = kr.image()
    rr, bcols, _ = _bareiss(A, r)
    if rr != r:
        raise ArithmeticError("pivot block unexpectedly singular")
    D = A[r - 1][bcols[r - 1]]
    ys = [None] * r
    for i in range(r - 1, -1, -1):
        row = A[i]
        acc = D * row[r]
        for j in range(i + 1, r):
            acc -= row[bcols[j]] * ys[j]
        q, rem = divmod(acc, row[bcols[i]])
        if rem:
            raise ArithmeticError("non-exact back substitution")
        ys[i] = q
    den = kr.recover(D)
    for i, c in enumerate(bcols):
        sol[pcols[c]] = RatFunc(kr.recover(ys[i]), den).simplify()
    return RankSolveResult(r, True, sol)


def _rank(M, ring: LaurentRing, seed: int = 0) -> int:
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    full = min(nrows, ncols)
    if full == 0:
        return 0
    r0, _, _ = modular_rank(M, seed)
    if r0 == full:
        return r0
    if ring.nvars == 1 and nrows * ncols > _BAREISS_CELLS:
        return certified_rank_univariate(M, ring, seed)
    return bareiss_rank(M, ring)


def bareiss_rank(M, ring: LaurentRing | None = None) -> int:
    """Rank by fraction-free elimination on the Kronecker image."""
    if not M or not M[0]:
        return 0
    ring = ring or _ring_of(M)
    kr = _Kronecker(M, ring)
    kr.setup(min(len(M), len(M[0])))
    r, _, _ = _bareiss(kr.image(), len(M[0]))
    return r


def rank(M, seed: int = 0) -> int:
    return exact_rank_solve(M, None, seed).rank


def content_gcd(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


def rank_at_most(M, r: int, seed: int = 0) -> bool:
    """Exact test of rank(M) <= r (evaluations only ever bound from below,
    so a modular witness of larger rank is conclusive)."""
    if not M or not M[0] or r >= min(len(M), len(M[0])):
        return True
    ring = _ring_of(M)
    r0, _, _ = modular_rank(M, seed)
    if r0 > r:
        return False
    return _rank(M, ring, seed) <= r
