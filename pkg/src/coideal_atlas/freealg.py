"""Words, the bicharacter, skew brackets and the two coordinate calculi of
the free algebra k<x_1, ..., x_n>, plus the constructors u[k,m] and
Psi^S(k,m).

All quantification parameters are unit monomials of the Laurent ring, so a
bicharacter stores them as packed exponent keys and scalar factors reduce
to integer additions on keys.
"""
from __future__ import annotations

import random
import re
from typing import Callable, Sequence

from .ring import LaurentPoly, LaurentRing
from .rootdata import GenDesc, psi_text

Word = tuple  # tuple of letter indices, 1-based


def degree_of(w: Sequence[int], n: int) -> tuple[int, ...]:
    d = [0] * n
    for a in w:
        d[a - 1] += 1
    return tuple(d)


def word_text(w: Sequence[int], prefix: str = "x") -> str:
    return "".join(f"{prefix}{a}" for a in w) if w else "1"


# ---------------------------------------------------------------------------
# bicharacter

class Bicharacter:
    """p(x_i, x_j) = p_ij for letters 1..n, as packed monomial keys.

    The relations p_ii = Q, p_{i,i+1} p_{i+1,i} = Q^-1 and p_ij p_ji = 1 for
    |i-j| > 1 are checked at construction, with Q = q for the positive
    wing (``qkey`` lets the negative wing and relabelled tables validate
    against q^-1 or the same q).
    """

    def __init__(self, n: int, ring: LaurentRing, keys: Sequence[Sequence[int]], mode: str = "custom", qkey: int | None = None):
        self.n = n
        self.ring = ring
        self.mode = mode
        self._k = [[0] * (n + 1)] + [[0] + [int(keys[i][j]) for j in range(n)] for i in range(n)]
        Q = ring.pack([1] + [0] * (ring.nvars - 1)) if qkey is None else qkey
        self.qkey = Q
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                kij = self._k[i][j] + self._k[j][i]
                if i == j:
                    ok = self._k[i][i] == Q
                elif abs(i - j) == 1:
                    ok = kij == -Q
                else:
                    ok = kij == 0
                if not ok:
                    raise ValueError(f"bicharacter violates the A_n relations at ({i},{j})")

    @classmethod
    def one_parameter(cls, n: int) -> "Bicharacter":
        ring = LaurentRing(("q",))
        keys = [[0] * n for _ in range(n)]
        for i in range(n):
            keys[i][i] = 1
            if i + 1 < n:
                keys[i][i + 1] = -1
        return cls(n, ring, keys, "one-parameter")

    @classmethod
    def multiparameter(cls, n: int) -> "Bicharacter":
        names = ("q",) + tuple(f"t{i}" for i in range(1, n))
        ring = LaurentRing(names)
        nv = len(names)

        def key(qe, i=None, te=0):
            e = [0] * nv
            e[0] = qe
            if i is not None:
                e[i] = te
            return ring.pack(e)

        keys = [[0] * n for _ in range(n)]
        for i in range(n):
            keys[i][i] = key(1)
            if i + 1 < n:
                keys[i][i + 1] = key(0, i + 1, 1)
                keys[i + 1][i] = key(-1, i + 1, -1)
        return cls(n, ring, keys, "multiparameter")

    @classmethod
    def make(cls, n: int, multiparameter: bool = False) -> "Bicharacter":
        return cls.multiparameter(n) if multiparameter else cls.one_parameter(n)

    def key(self, i: int, j: int) -> int:
        return self._k[i][j]

    def p(self, i: int, j: int) -> LaurentPoly:
        return LaurentPoly(self.ring, {self._k[i][j]: 1})

    def key_of(self, u: Sequence[int], v: Sequence[int]) -> int:
        k = self._k
        return sum(k[a][b] for a in u for b in v)

    def mono(self, key: int) -> LaurentPoly:
        return LaurentPoly(self.ring, {key: 1})

    @property
    def q(self) -> LaurentPoly:
        return self.mono(self.qkey)

    def relabel(self, phi: Callable[[int], int]) -> "Bicharacter":
        """p'(i, j) = p(phi(i), phi(j))."""
        keys = [[self._k[phi(i)][phi(j)] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]
        return Bicharacter(self.n, self.ring, keys, self.mode + "/relabelled", self.qkey)

    def negative(self) -> "Bicharacter":
        """The negative-wing table p_-(i, j) = p_ji^-1."""
        keys = [[-self._k[j][i] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]
        return Bicharacter(self.n, self.ring, keys, self.mode + "/negative", -self.qkey)

    def __eq__(self, other):
        return isinstance(other, Bicharacter) and self.ring is other.ring and self._k == other._k

    def __hash__(self):
        return hash((self.n, self.ring.names, tuple(map(tuple, self._k))))


def p_of(bc: Bicharacter, u: Sequence[int], v: Sequence[int]) -> LaurentPoly:
    """prod over letters a of u and b of v of p(a, b)."""
    return bc.mono(bc.key_of(u, v))


# ---------------------------------------------------------------------------
# linear combinations

class LinComb:
    """Finitely supported map key -> nonzero LaurentPoly."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: LaurentRing, terms: dict | None = None):
        self.ring = ring
        self.terms = terms if terms is not None else {}

    def _new(self, terms):
        raise NotImplementedError

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s.terms:
                t[w] = s
            else:
                t.pop(w, None)
        return self._new(t)

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LinComb":
        c = self.ring.coerce(c)
        if not c.terms:
            return self._new({})
        return self._new({w: x * c for w, x in self.terms.items() if (x * c).terms})

    def scale_key(self, key: int) -> "LinComb":
        return self._new({w: x.mul_monomial(key) for w, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):  # pragma: no cover
        return hash(frozenset(self.terms))

    def coeff(self, w) -> LaurentPoly:
        return self.terms.get(w, self.ring.zero)

    def support(self) -> list:
        return sorted(self.terms)


def _acc(t: dict, w, c: LaurentPoly):
    s = t.get(w)
    s = c if s is None else s + c
    if s.terms:
        t[w] = s
    else:
        t.pop(w, None)


class FreeElement(LinComb):
    """Element of the free algebra: words (tuples of letters) -> coefficients."""

    __slots__ = ("bc",)

    def __init__(self, bc: Bicharacter, terms: dict | None = None):
        super().__init__(bc.ring, terms)
        self.bc = bc

    def _new(self, terms):
        return FreeElement(self.bc, terms)

    @classmethod
    def word(cls, bc: Bicharacter, w: Sequence[int], coeff=1) -> "FreeElement":
        for a in w:
            if not 1 <= a <= bc.n:
                raise ValueError(f"letter {a} outside [1,{bc.n}]")
        c = bc.ring.coerce(coeff)
        return cls(bc, {tuple(w): c} if c.terms else {})

    @classmethod
    def one(cls, bc: Bicharacter) -> "FreeElement":
        return cls(bc, {(): bc.ring.one})

    @classmethod
    def letter(cls, bc: Bicharacter, i: int) -> "FreeElement":
        return cls.word(bc, (i,))

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            t: dict = {}
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    _acc(t, u + v, a * b)
            return FreeElement(self.bc, t)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def degrees(self) -> set[tuple[int, ...]]:
        return {degree_of(w, self.bc.n) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> tuple[int, ...] | None:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return next(iter(ds)) if ds else None

    def any_word(self) -> tuple:
        return next(iter(self.terms))

    def components(self) -> dict:
        out: dict = {}
        for w, c in self.terms.items():
            out.setdefault(degree_of(w, self.bc.n), {})[w] = c
        return {d: FreeElement(self.bc, t) for d, t in out.items()}

    def map_letters(self, f: Callable[[int], int], bc: Bicharacter | None = None) -> "FreeElement":
        return FreeElement(bc or self.bc, {tuple(f(a) for a in w): c for w, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            parts.append(f"({c}) * {word_text(w)}")
        return " + ".join(parts)

    __repr__ = __str__


def skew_bracket(u: FreeElement, v: FreeElement) -> FreeElement:
    """[u, v] = uv - p(u, v) vu for homogeneous u, v."""
    if not u.is_homogeneous() or not v.is_homogeneous():
        raise ValueError("skew bracket needs homogeneous arguments")
    if not u.terms or not v.terms:
        return FreeElement(u.bc, {})
    key = u.bc.key_of(u.any_word(), v.any_word())
    return u * v - (v * u).scale_key(key)


def partial(i: int, u: FreeElement) -> FreeElement:
    """Left calculus: remove one occurrence of x_i with factor p(prefix, x_i)."""
    bc = u.bc
    k = bc._k
    t: dict = {}
    for w, c in u.terms.items():
        acc = 0
        for pos, a in enumerate(w):
            if a == i:
                _acc(t, w[:pos] + w[pos + 1 :], c.mul_monomial(acc))
            acc += k[a][i]
    return FreeElement(bc, t)


def partial_star(i: int, u: FreeElement) -> FreeElement:
    """Dual calculus: remove one occurrence of x_i with factor p(x_i, suffix)."""
    bc = u.bc
    k = bc._k
    t: dict = {}
    for w, c in u.terms.items():
        acc = 0
        for pos in range(len(w) - 1, -1, -1):
            a = w[pos]
            if a == i:
                _acc(t, w[:pos] + w[pos + 1 :], c.mul_monomial(acc))
            acc += k[i][a]
    return FreeElement(bc, t)


def braided_partial(i: int, u: FreeElement) -> FreeElement:
    """g_i d_i(u) g_i^-1: remove an occurrence with factor p(suffix, x_i)^-1."""
    bc = u.bc
    k = bc._k
    t: dict = {}
    for w, c in u.terms.items():
        acc = 0
        for pos in range(len(w) - 1, -1, -1):
            a = w[pos]
            if a == i:
                _acc(t, w[:pos] + w[pos + 1 :], c.mul_monomial(-acc))
            acc += k[a][i]
    return FreeElement(bc, t)


def d_w(w: Sequence[int], u: FreeElement) -> FreeElement:
    """u . D_w for w = z_1...z_d: apply d_{z_1} first, then d_{z_2}, ..."""
    for a in w:
        u = partial(a, u)
        if not u.terms:
            break
    return u


# ---------------------------------------------------------------------------
# bracket words

class BracketSyntaxError(ValueError):
    pass


_TOK = re.compile(r"\s*(\[|\]|,|x(\d+))")


def parse_bracket(text: str, bc: Bicharacter) -> FreeElement:
    """Parse ``term := "x"INT | "[" term "," term "]"``."""
    pos = 0

    def nxt():
        nonlocal pos
        m = _TOK.match(text, pos)
        if not m:
            raise BracketSyntaxError(f"unexpected input at {pos} in {text!r}")
        pos = m.end()
        return m

    def term():
        m = nxt()
        if m.group(2) is not None:
            return FreeElement.letter(bc, int(m.group(2)))
        if m.group(1) != "[":
            raise BracketSyntaxError(f"expected term at {m.start()} in {text!r}")
        a = term()
        if nxt().group(1) != ",":
            raise BracketSyntaxError(f"expected ',' in {text!r}")
        b = term()
        if nxt().group(1) != "]":
            raise BracketSyntaxError(f"expected ']' in {text!r}")
        return skew_bracket(a, b)

    out = term()
    if text[pos:].strip():
        raise BracketSyntaxError(f"trailing input in {text!r}")
    return out


def u_bracket(bc: Bicharacter, k: int, m: int) -> FreeElement:
    """u[k,m] = [x_k, [x_{k+1}, ... [x_{m-1}, x_m] ...]]."""
    if not 1 <= k <= m <= bc.n:
        raise ValueError(f"need 1 <= k <= m <= n, got {k}, {m}")
    out = FreeElement.letter(bc, m)
    for a in range(m - 1, k - 1, -1):
        out = skew_bracket(FreeElement.letter(bc, a), out)
    return out


def psi(bc: Bicharacter, g: GenDesc) -> FreeElement:
    """Psi^S(k,m) = [[...[u[1+s_r,m], u[1+s_{r-1},s_r]], ...], u[k,s_1]]."""
    if g.m > bc.n:
        raise ValueError("descriptor exceeds rank")
    pieces = g.pieces()
    out = u_bracket(bc, *pieces[-1])
    for a, b in reversed(pieces[:-1]):
        out = skew_bracket(out, u_bracket(bc, a, b))
    return out


def u_pw(g: GenDesc) -> tuple:
    """The piecewise continuous word u(1+s_r,m) ... u(k,s_1)."""
    out: list[int] = []
    for a, b in reversed(g.pieces()):
        out.extend(range(a, b + 1))
    return tuple(out)


def psi_word_text(g: GenDesc) -> str:
    return psi_text(g)


def decode(g: GenDesc, n: int) -> GenDesc:
    """(phi(m), phi(k), complement of phi(S)-1 in [phi(m), phi(k)-1]) with
    phi(i) = n - i + 1."""
    phi = lambda i: n - i + 1  # noqa: E731
    k2, m2 = phi(g.m), phi(g.k)
    shifted = {phi(s) - 1 for s in g.s}
    return GenDesc(k2, m2, set(range(k2, m2)) - shifted)


def decoded_psi(bc: Bicharacter, g: GenDesc) -> FreeElement:
    """Psi of decode(g) built in the letters y_i = x_{phi(i)} with the
    relabelled bicharacter, then written back in the x letters."""
    n = bc.n
    phi = lambda i: n - i + 1  # noqa: E731
    bcy = bc.relabel(phi)
    y = psi(bcy, decode(g, n))
    return y.map_letters(phi, bc)


# ---------------------------------------------------------------------------
# random homogeneous elements for property checks

def random_word(rng: random.Random, n: int, length: int) -> tuple:
    return tuple(rng.randint(1, n) for _ in range(length))


def random_homogeneous(bc: Bicharacter, rng: random.Random, degree: int, nterms: int = 3) -> FreeElement:
    """Random combination of permutations of one random word."""
    base = list(random_word(rng, bc.n, degree))
    t: dict = {}
    ring = bc.ring
    for _ in range(nterms):
        rng.shuffle(base)
        c = ring.monomial([rng.randint(-2, 2)] + [0] * (ring.nvars - 1), rng.choice([-2, -1, 1, 3]))
        _acc(t, tuple(base), c)
    return FreeElement(bc, t)
