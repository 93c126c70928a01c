"""The double U_q(sl_{n+1}) = U^- (x) k[H] (x) U^+ with H = G x F free abelian.

Elements are kept as sums of triples (negative word, group element, positive
word) where the words are free-algebra representatives.  Straightening moves
positive letters to the right across negative letters with
x_i x_j^- = p_ji x_j^- x_i + delta_ij (1 - g_i f_i), and group elements into
the middle with x h = chi(h) h x and h x^- = chi(h) x^- h.  Equality and zero
tests go through the normal form, which replaces both wings by their
shuffle images.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .freealg import Bicharacter, FreeElement, LinComb, _acc, psi, word_text
from .nichols import (
    CanonicalElement,
    Span,
    Subalgebra,
    derivative_closure,
    omega_word,
    proportional,
    ratio,
)
from .ring import LaurentPoly
from .rootdata import GenDesc, RTProfile, build_RT, cond_pair, entrances, enumerate_theta, pbw_generators


# ---------------------------------------------------------------------------
# group and characters

class GroupElement(tuple):
    """Exponents of g_1..g_n, f_1..f_n."""

    __slots__ = ()

    def __new__(cls, exps: Iterable[int]):
        return super().__new__(cls, (int(e) for e in exps))

    @property
    def n(self) -> int:
        return len(self) // 2

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls([0] * (2 * n))

    @classmethod
    def g(cls, n: int, i: int, e: int = 1) -> "GroupElement":
        v = [0] * (2 * n)
        v[i - 1] = e
        return cls(v)

    @classmethod
    def f(cls, n: int, i: int, e: int = 1) -> "GroupElement":
        v = [0] * (2 * n)
        v[n + i - 1] = e
        return cls(v)

    @classmethod
    def h(cls, n: int, i: int) -> "GroupElement":
        """h_i = g_i f_i."""
        return cls.g(n, i) * cls.f(n, i)

    @classmethod
    def hbar(cls, n: int, k: int, i: int) -> "GroupElement":
        """h_k h_{k+1} ... h_{i-1} (identity when i <= k)."""
        out = cls.identity(n)
        for a in range(k, i):
            out = out * cls.h(n, a)
        return out

    def __mul__(self, other):
        return GroupElement(a + b for a, b in zip(self, other))

    def inverse(self) -> "GroupElement":
        return GroupElement(-a for a in self)

    def is_identity(self) -> bool:
        return not any(self)

    def __str__(self):
        n = self.n
        parts = []
        for j in range(n):
            for name, e in (("g", self[j]), ("f", self[n + j])):
                if e == 1:
                    parts.append(f"{name}{j + 1}")
                elif e:
                    parts.append(f"{name}{j + 1}^{e}")
        return "*".join(parts) if parts else "1"


def chi_key(bc: Bicharacter, i: int, h: Sequence[int]) -> int:
    """Packed key of chi^i(h): chi^i(g_j) = p_ij, chi^i(f_j) = p_ji."""
    k = bc._k
    n = bc.n
    return sum(h[j] * k[i][j + 1] + h[n + j] * k[j + 1][i] for j in range(n) if h[j] or h[n + j])


class Character:
    """chi^i (sign +1) or chi^i_- = (chi^i)^-1 (sign -1) on H."""

    def __init__(self, bc: Bicharacter, i: int, sign: int = 1):
        if not 1 <= i <= bc.n:
            raise ValueError(f"letter {i} out of range")
        self.bc, self.i, self.sign = bc, i, sign

    def key(self, h: Sequence[int]) -> int:
        return self.sign * chi_key(self.bc, self.i, h)

    def __call__(self, h: Sequence[int]) -> LaurentPoly:
        return self.bc.mono(self.key(h))


def negative_bc(bc: Bicharacter) -> Bicharacter:
    """The negative-wing table, built once per bicharacter."""
    nb = bc.__dict__.get("_negative")
    if nb is None:
        nb = bc.negative()
        bc._negative = nb
    return nb


# ---------------------------------------------------------------------------
# signed words

PLUS, MINUS = "+", "-"


@dataclass(frozen=True)
class SignedWord:
    """Letters (i, sign), optionally interleaved with group elements."""

    items: tuple

    def __post_init__(self):
        for it in self.items:
            if isinstance(it, GroupElement):
                continue
            i, s = it
            if s not in (PLUS, MINUS) or i < 1:
                raise ValueError(f"bad signed letter {it!r}")

    @classmethod
    def parse(cls, text: str) -> "SignedWord":
        """``"x1 x2- x1"``: a trailing ``-`` marks a negative letter."""
        items = []
        for tok in text.split():
            neg = tok.endswith("-")
            tok = tok.rstrip("-")
            if not tok.startswith("x"):
                raise ValueError(f"bad token {tok!r}")
            items.append((int(tok[1:]), MINUS if neg else PLUS))
        return cls(tuple(items))


# ---------------------------------------------------------------------------
# triangular elements

def _weight_of_term(bc: Bicharacter, N, h, P):
    n, k = bc.n, bc._k
    c = [0] * (2 * n)
    g = list(h)
    for a in P:
        for j in range(n):
            c[j] += k[a][j + 1]
            c[n + j] += k[j + 1][a]
        g[a - 1] += 1
    for b in N:
        for j in range(n):
            c[j] -= k[b][j + 1]
            c[n + j] -= k[j + 1][b]
        g[n + b - 1] += 1
    return tuple(c), tuple(g)


class NormalForm(LinComb):
    """Coordinates (Omega^- word, group element, Omega word) -> coefficient."""

    __slots__ = ("bc",)

    def __init__(self, bc: Bicharacter, terms: dict | None = None):
        super().__init__(bc.ring, terms)
        self.bc = bc

    def _new(self, terms):
        return NormalForm(self.bc, terms)

    def blocks(self) -> dict:
        """group element -> {(neg coordinate, pos coordinate): coefficient}."""
        out: dict = {}
        for (a, h, b), c in self.terms.items():
            out.setdefault(h, {})[(a, b)] = c
        return out


class TriangularElement(LinComb):
    """Sum of c * N^- . h . P with N, P free words.

    ``weight`` is the pair (character vector, g-vector) used by the skew
    bracket; it is carried through products and brackets so that a bracket
    with an element that collapsed to 1 - h_i keeps its formal degree.
    """

    __slots__ = ("bc", "weight")

    def __init__(self, bc: Bicharacter, terms: dict | None = None, weight=None):
        super().__init__(bc.ring, terms)
        self.bc = bc
        self.weight = weight

    def _new(self, terms):
        return TriangularElement(self.bc, terms, self.weight)

    def __add__(self, other):
        out = super().__add__(other)
        out.weight = self.weight if self.weight == other.weight else None
        return out

    def __sub__(self, other):
        return self + (-other)

    # constructors
    @classmethod
    def one(cls, bc: Bicharacter) -> "TriangularElement":
        e = GroupElement.identity(bc.n)
        return cls(bc, {((), e, ()): bc.ring.one}, ((0,) * (2 * bc.n), tuple(e)))

    @classmethod
    def group(cls, bc: Bicharacter, h: GroupElement, coeff=1) -> "TriangularElement":
        return cls(bc, {((), GroupElement(h), ()): bc.ring.coerce(coeff)}, ((0,) * (2 * bc.n), tuple(h)))

    @classmethod
    def letter(cls, bc: Bicharacter, i: int, sign: str = PLUS) -> "TriangularElement":
        if not 1 <= i <= bc.n:
            raise ValueError(f"letter {i} out of range")
        e = GroupElement.identity(bc.n)
        key = ((), e, (i,)) if sign == PLUS else ((i,), e, ())
        return cls(bc, {key: bc.ring.one}, _weight_of_term(bc, *key))

    @classmethod
    def positive(cls, u: FreeElement) -> "TriangularElement":
        bc = u.bc
        e = GroupElement.identity(bc.n)
        return cls(bc, {((), e, w): c for w, c in u.terms.items()})._weighted()

    @classmethod
    def negative(cls, bc: Bicharacter, u: FreeElement) -> "TriangularElement":
        """Lift an element of the free algebra on the negative letters
        (built over ``negative_bc(bc)``)."""
        e = GroupElement.identity(bc.n)
        return cls(bc, {(w, e, ()): c for w, c in u.terms.items()})._weighted()

    def _weighted(self) -> "TriangularElement":
        ws = {_weight_of_term(self.bc, *t) for t in self.terms}
        self.weight = ws.pop() if len(ws) == 1 else None
        return self

    def infer_weight(self):
        if self.weight is not None:
            return self.weight
        ws = {_weight_of_term(self.bc, *t) for t in self.terms}
        if len(ws) != 1:
            raise ValueError("element is not homogeneous: no well-defined character and group degree")
        return ws.pop()

    def __mul__(self, other):
        if isinstance(other, TriangularElement):
            return tri_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def normal_form(self) -> NormalForm:
        bc = self.bc
        nb = negative_bc(bc)
        t: dict = {}
        for (N, h, P), c in self.terms.items():
            on = omega_word(nb, N)
            op = omega_word(bc, P)
            for a, x in on.items():
                xc = x * c
                for b, y in op.items():
                    _acc(t, (a, h, b), xc * y)
        return NormalForm(bc, t)

    def is_zero(self) -> bool:
        return not self.normal_form().terms

    def __eq__(self, other):
        if not isinstance(other, TriangularElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def degree(self) -> tuple[int, ...]:
        """Gamma-degree: positive letters count +1, negative letters -1."""
        ds = set()
        for N, _, P in self.terms:
            d = [0] * self.bc.n
            for a in P:
                d[a - 1] += 1
            for b in N:
                d[b - 1] -= 1
            ds.add(tuple(d))
        if len(ds) > 1:
            raise ValueError("element is not Gamma-homogeneous")
        return ds.pop() if ds else None

    def __str__(self):
        return format_triangular(self.terms)

    __repr__ = __str__


def format_triangular(terms: dict) -> str:
    """``(c) negword . h . posword`` per term; negative letters print as xi-."""
    if not terms:
        return "0"
    out = []
    for (N, h, P), c in sorted(terms.items(), key=lambda kv: (len(kv[0][0]) + len(kv[0][2]), kv[0])):
        parts = []
        if N:
            parts.append("".join(f"x{a}-" for a in N))
        if any(h):
            parts.append(str(GroupElement(h)))
        if P:
            parts.append(word_text(P))
        out.append(f"({c}) " + (" . ".join(parts) if parts else "1"))
    return " + ".join(out)


# ---------------------------------------------------------------------------
# straightening

def _cache(bc: Bicharacter, name: str) -> dict:
    c = bc.__dict__.get(name)
    if c is None:
        c = {}
        setattr(bc, name, c)
    return c


def cross_letter(bc: Bicharacter, i: int, N: tuple) -> dict:
    """x_i . N^- as {(N', h, P'): coeff} with P' in {(i,), ()}."""
    cache = _cache(bc, "_cross_cache")
    hit = cache.get((i, N))
    if hit is not None:
        return hit
    k = bc._k
    n = bc.n
    e = GroupElement.identity(n)
    hi = GroupElement.h(n, i)
    out: dict = {}
    _acc(out, (N, e, (i,)), bc.mono(sum(k[b][i] for b in N)))
    # prefix (1 - h_i) suffix = prefix suffix - chi^suffix(h_i) prefix suffix h_i
    suf = [0] * (len(N) + 1)
    for t in range(len(N) - 1, -1, -1):
        b = N[t]
        suf[t] = suf[t + 1] + k[b][i] + k[i][b]
    pre = 0  # key of p(x_i, prefix^-) = prod p_bi
    for t, b in enumerate(N):
        if b == i:
            rest = N[:t] + N[t + 1 :]
            _acc(out, (rest, e, ()), bc.mono(pre))
            _acc(out, (rest, hi, ()), -bc.mono(pre + suf[t + 1]))
        pre += k[b][i]
    cache[(i, N)] = out
    return out


def _chi_word_key(bc: Bicharacter, w: tuple, h: Sequence[int]) -> int:
    if not any(h):
        return 0
    return sum(chi_key(bc, a, h) for a in w)


def straighten_pair(bc: Bicharacter, P: tuple, N: tuple) -> dict:
    """P . N^- in normal order, for free words P (positive) and N (negative)."""
    if not P or not N:
        return {(N, GroupElement.identity(bc.n), P): bc.ring.one}
    cache = _cache(bc, "_straighten_cache")
    hit = cache.get((P, N))
    if hit is not None:
        return hit
    out: dict = {}
    x, P0 = P[-1], P[:-1]
    for (N1, h1, P1), c1 in cross_letter(bc, x, N).items():
        for (N2, h2, P2), c2 in straighten_pair(bc, P0, N1).items():
            key = _chi_word_key(bc, P2, h1)
            _acc(out, (N2, h2 * h1, P2 + P1), (c1 * c2).mul_monomial(key))
    cache[(P, N)] = out
    return out


def tri_product(a: TriangularElement, b: TriangularElement) -> TriangularElement:
    bc = a.bc
    out: dict = {}
    for (N, h, P), c in a.terms.items():
        for (N1, h1, P1), c1 in b.terms.items():
            cc = c * c1
            for (N2, h2, P2), c2 in straighten_pair(bc, P, N1).items():
                key = _chi_word_key(bc, N2, h) + _chi_word_key(bc, P2, h1)
                _acc(out, (N + N2, h * h2 * h1, P2 + P1), (cc * c2).mul_monomial(key))
    w = None
    if a.weight is not None and b.weight is not None:
        w = tuple(tuple(x + y for x, y in zip(p, q)) for p, q in zip(a.weight, b.weight))
    return TriangularElement(bc, out, w)


def straighten(bc: Bicharacter, word: SignedWord | Sequence) -> TriangularElement:
    """Normal-order a product of signed letters and group elements."""
    items = word.items if isinstance(word, SignedWord) else tuple(word)
    out = TriangularElement.one(bc)
    for it in items:
        if isinstance(it, GroupElement):
            f = TriangularElement.group(bc, it)
        else:
            i, s = it
            f = TriangularElement.letter(bc, i, s)
        out = tri_product(out, f)
    return out


def tri_bracket(u: TriangularElement, v: TriangularElement) -> TriangularElement:
    """[u, v] = uv - chi^u(g_v) vu, using the carried (or inferred) weights."""
    cu, gu = u.infer_weight()
    cv, gv = v.infer_weight()
    key = sum(a * b for a, b in zip(cu, gv))
    out = tri_product(u, v) - tri_product(v, u).scale_key(key)
    out.weight = (tuple(a + b for a, b in zip(cu, cv)), tuple(a + b for a, b in zip(gu, gv)))
    return out


# ---------------------------------------------------------------------------
# generators

def psi_plus(bc: Bicharacter, g: GenDesc) -> TriangularElement:
    return TriangularElement.positive(psi(bc, g))


def psi_minus(bc: Bicharacter, g: GenDesc) -> TriangularElement:
    """Psi^S(k,m) in the negative letters, bracketed with the negative table."""
    return TriangularElement.negative(bc, psi(negative_bc(bc), g))


def derivative_span(bc: Bicharacter, g: GenDesc, negative: bool = False) -> dict:
    """degree -> Span of the proper derivatives (left calculus) of Psi."""
    b = negative_bc(bc) if negative else bc
    closure = derivative_closure(psi(b, g))
    top = tuple(1 if g.k <= a <= g.m else 0 for a in range(1, bc.n + 1))
    return {d: Span(vs) for d, vs in closure.items() if d != top}


# ---------------------------------------------------------------------------
# membership in products of subspaces

def _deg(w: tuple, n: int) -> tuple:
    d = [0] * n
    for a in w:
        d[a - 1] += 1
    return tuple(d)


def in_tensor_span(nf: NormalForm, neg_space, pos_space) -> tuple[bool, object]:
    """Is nf in span{a^- . h . b : a in A, h in H, b in B}?

    ``neg_space(d)`` / ``pos_space(d)`` return a Span (or None for zero).
    Per group element the coefficient block lies in A (x) B exactly when
    every column lies in A and every row lies in B.
    """
    bc = nf.bc
    n = bc.n
    nb = negative_bc(bc)
    for h, block in nf.blocks().items():
        by_pos: dict = {}
        by_neg: dict = {}
        for (a, b), c in block.items():
            by_pos.setdefault(b, {})[a] = c
            by_neg.setdefault(a, {})[b] = c
        for label, groups, space, owner in (("negative", by_pos, neg_space, nb), ("positive", by_neg, pos_space, bc)):
            per_deg: dict = {}
            for vec in groups.values():
                # one opposite coordinate may still mix degrees on this side
                split: dict = {}
                for w, c in vec.items():
                    split.setdefault(_deg(w, n), {})[w] = c
                for d, t in split.items():
                    per_deg.setdefault(d, []).append(CanonicalElement(owner, t))
            for d, vecs in per_deg.items():
                sp = space(d)
                if sp is None:
                    return False, {"group": str(GroupElement(h)), "side": label, "degree": d}
                ok, bad = sp.contains_all(vecs)
                if not ok:
                    return False, {"group": str(GroupElement(h)), "side": label, "degree": d, "vector": str(vecs[bad])}
    return True, None


class _ScalarSpan:
    """The degree-zero component: constants, which contain everything there."""

    def contains_all(self, vecs):
        return True, None


def _closure_space(spans: dict):
    def space(d):
        if not any(d):
            return _ScalarSpan()
        return spans.get(d)

    return space


# ---------------------------------------------------------------------------
# verifiers

@dataclass
class DoubleVerdict:
    ok: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def check_rela3(bc: Bicharacter, i: int, j: int) -> bool:
    """x_i x_j^- - p_ji x_j^- x_i = delta_ij (1 - g_i f_i)."""
    lhs = straighten(bc, [(i, PLUS), (j, MINUS)]) - straighten(bc, [(j, MINUS), (i, PLUS)]).scale_key(bc.key(j, i))
    rhs = TriangularElement(bc, {})
    if i == j:
        rhs = TriangularElement.one(bc) - TriangularElement.group(bc, GroupElement.h(bc.n, i))
    return lhs == rhs


def verify_sh(bc: Bicharacter, g: GenDesc) -> DoubleVerdict:
    """[Psi^S(k,m), Psi_-^{complement}(k,m)] ~ 1 - h_k ... h_m."""
    X = tri_bracket(psi_plus(bc, g), psi_minus(bc, g.complement()))
    target = TriangularElement.one(bc) - TriangularElement.group(bc, GroupElement.hbar(bc.n, g.k, g.m + 1))
    a, b = X.normal_form(), target.normal_form()
    ok = bool(a.terms) and proportional(a, b)
    return DoubleVerdict(ok, {"g": g, "scalar": str(ratio(a, b)) if ok else None, "bracket": str(a)})


def derm_expected(bc: Bicharacter, g: GenDesc, i: int) -> TriangularElement:
    """The right-hand side of the case formulas for [Psi^S(k,m), x_i^-] up to
    a nonzero scalar (zero where the bracket vanishes)."""
    n = bc.n
    k, m = g.k, g.m
    S = set(g.s)
    zero = TriangularElement(bc, {})
    H = lambda a: TriangularElement.group(bc, GroupElement.h(n, a))  # noqa: E731
    P = lambda a, b: psi_plus(bc, g.sub(a, b))  # noqa: E731
    if k == m:
        return TriangularElement.one(bc) - H(k)
    if i == k:
        return P(k + 1, m) if k in S else H(k) * P(k + 1, m)
    if i == m:
        return H(m) * P(k, m - 1) if (m - 1) in S else P(k, m - 1)
    if (i - 1) in S and i not in S:
        return H(i) * P(i + 1, m) * P(k, i - 1)
    if (i - 1) not in S and i in S:
        return P(i + 1, m) * P(k, i - 1)
    return zero


def verify_derm(bc: Bicharacter, g: GenDesc, i: int) -> DoubleVerdict:
    if not g.k <= i <= g.m:
        raise ValueError("need k <= i <= m")
    X = tri_bracket(psi_plus(bc, g), TriangularElement.letter(bc, i, MINUS))
    expected = derm_expected(bc, g, i)
    a, b = X.normal_form(), expected.normal_form()
    formula_ok = proportional(a, b) and (bool(a.terms) == bool(b.terms))
    details = {"g": g, "i": i, "formula": formula_ok}
    ok = formula_ok
    if g.k < g.m:
        spans = derivative_span(bc, g)
        inside, _ = in_tensor_span(a, _closure_space({}), _closure_space(spans))
        entrance = i in entrances(g)
        details["in_prW"] = inside
        details["entrance"] = entrance
        ok = ok and (inside != entrance)
    return DoubleVerdict(ok, details)


def _sup(s):
    return max(s) if s else float("-inf")


def _inf(s):
    return min(s) if s else float("inf")


def cross_conditions(gp: GenDesc, gm: GenDesc) -> dict:
    S, T = gp, gm
    Sc, Tc = gp.complement(), gm.complement()
    zer = not (S.s_bullet() & T.s_bullet()) and not (S.s_circle() & T.s_circle())
    zerb = not (Sc.s_circle() & Tc.s_circle()) and not (Sc.s_bullet() & Tc.s_bullet())
    cond_a = _sup(S.s_bullet() & T.s_bullet()) < _inf(Sc.s_circle() & Tc.s_circle())
    cond_b = gp.k == gm.k and gp.m == gm.m and set(gm.s) == set(Sc.s)
    return {"zer": zer, "zerb": zerb, "a": cond_a, "b": cond_b}


def verify_cross(bc: Bicharacter, gp: GenDesc, gm: GenDesc) -> DoubleVerdict:
    X = tri_bracket(psi_plus(bc, gp), psi_minus(bc, gm))
    nf = X.normal_form()
    conds = cross_conditions(gp, gm)
    details = dict(conds)
    ok = True
    if conds["zer"] or conds["zerb"]:
        details["zero"] = not nf.terms
        ok = ok and not nf.terms
    if conds["a"] or conds["b"]:
        inside, where = in_tensor_span(
            nf,
            _closure_space(derivative_span(bc, gm, negative=True)),
            _closure_space(derivative_span(bc, gp)),
        )
        details["inclusion"] = inside
        if not inside:
            details["where"] = where
        ok = ok and inside
    return DoubleVerdict(ok, details)


# ---------------------------------------------------------------------------
# consistency experiment

@dataclass
class PairVerdict:
    theta: tuple
    theta_neg: tuple
    closure: bool
    combinatorial: bool
    failure: object = None

    @property
    def agree(self) -> bool:
        return self.closure == self.combinatorial


@dataclass
class ConsistencyReport:
    n: int
    bound: int
    pairs: list

    @property
    def accepted(self) -> int:
        return sum(1 for p in self.pairs if p.closure)

    @property
    def disagreements(self) -> list:
        return [p for p in self.pairs if not p.agree]

    @property
    def ok(self) -> bool:
        return not self.disagreements


class _Side:
    """PBW generators of U_theta on one wing and the subalgebra they span."""

    def __init__(self, bc: Bicharacter, profile: RTProfile, negative: bool):
        self.profile = profile
        self.descs = pbw_generators(profile)
        b = negative_bc(bc) if negative else bc
        self.free = [psi(b, g) for g in self.descs]
        self.alg = Subalgebra(self.free, b) if self.free else None
        self.n = bc.n

    def space(self, d):
        if not any(d):
            return _ScalarSpan()
        if self.alg is None:
            return None
        sp = self.alg.component(d)
        return sp if sp.vectors else None


def pair_closure(bc: Bicharacter, pos: _Side, neg: _Side, bound: int) -> tuple[bool, object]:
    """Every cross-bracket [a, b^-] of PBW generators with total degree at
    most ``bound`` lies in U^-_theta' . k[H] . U^+_theta."""
    for gp, up in zip(pos.descs, pos.free):
        for gm, um in zip(neg.descs, neg.free):
            if (gp.m - gp.k + 1) + (gm.m - gm.k + 1) > bound:
                continue
            X = tri_bracket(TriangularElement.positive(up), TriangularElement.negative(bc, um))
            ok, where = in_tensor_span(X.normal_form(), neg.space, pos.space)
            if not ok:
                return False, {"plus": gp, "minus": gm, "where": where}
    return True, None


def consistency_experiment(n: int, bound: int = 6, bc: Bicharacter | None = None, pairs: Iterable | None = None) -> ConsistencyReport:
    bc = bc or Bicharacter.one_parameter(n)
    profiles = [build_RT(t) for t in enumerate_theta(n)]
    pos = {p.theta.theta: _Side(bc, p, False) for p in profiles}
    neg = {p.theta.theta: _Side(bc, p, True) for p in profiles}
    todo = list(pairs) if pairs is not None else [(a.theta.theta, b.theta.theta) for a, b in itertools.product(profiles, repeat=2)]
    out = []
    for t, tn in todo:
        t, tn = tuple(t), tuple(tn)
        closure, where = pair_closure(bc, pos[t], neg[tn], bound)
        comb = cond_pair(pos[t].profile, neg[tn].profile).ok
        out.append(PairVerdict(t, tn, closure, comb, where))
    return ConsistencyReport(n, bound, out)
