"""The Nichols algebra U_q^+(sl_{n+1}) through its shuffle embedding.

``omega`` sends a free-algebra element to the coefficients of its iterated
braided derivatives; two elements are equal in the Nichols algebra exactly
when their images agree, so every equality, span and membership question
below is asked about omega-images.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import inf
from typing import Sequence

from .freealg import (
    Bicharacter,
    FreeElement,
    LinComb,
    _acc,
    degree_of,
    partial,
    psi,
    u_bracket,
    word_text,
)
from .ring import LaurentPoly, RatFunc, exact_rank_solve, modular_rank, rank_at_most, _rank
from .rootdata import GenDesc, RTProfile, pbw_generators, w_set


class CanonicalElement(LinComb):
    """Shuffle-algebra coefficients: tensor words -> Laurent coefficients."""

    __slots__ = ("bc",)

    def __init__(self, bc: Bicharacter, terms: dict | None = None):
        super().__init__(bc.ring, terms)
        self.bc = bc

    def _new(self, terms):
        return CanonicalElement(self.bc, terms)

    @classmethod
    def one(cls, bc: Bicharacter) -> "CanonicalElement":
        return cls(bc, {(): bc.ring.one})

    def degree(self):
        ds = {degree_of(w, self.bc.n) for w in self.terms}
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return next(iter(ds)) if ds else None

    def __mul__(self, other):
        if isinstance(other, CanonicalElement):
            return shuffle_product(self, other)
        return self.scale(other)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) * ({word_text(w)})" for w, c in sorted(self.terms.items()))

    __repr__ = __str__


def _cache(bc: Bicharacter, name: str) -> dict:
    c = bc.__dict__.get(name)
    if c is None:
        c = {}
        setattr(bc, name, c)
    return c


def omega_word(bc: Bicharacter, w: tuple) -> dict:
    """Omega of a single word, memoised per bicharacter.

    Omega(u) = sum_i Omega(d^b_i u) (x_i) with x_i appended at the right;
    d^b_i removes an occurrence of x_i with factor p(suffix, x_i)^-1.
    """
    cache = _cache(bc, "_omega_cache")
    hit = cache.get(w)
    if hit is not None:
        return hit
    if not w:
        out = {(): bc.ring.one}
    else:
        k = bc._k
        out: dict = {}
        for pos in range(len(w)):
            a = w[pos]
            key = -sum(k[b][a] for b in w[pos + 1 :])
            sub = omega_word(bc, w[:pos] + w[pos + 1 :])
            for t, c in sub.items():
                _acc(out, t + (a,), c.mul_monomial(key))
    cache[w] = out
    return out


def omega(u: FreeElement) -> CanonicalElement:
    bc = u.bc
    t: dict = {}
    for w, c in u.terms.items():
        for tw, x in omega_word(bc, w).items():
            _acc(t, tw, x * c)
    return CanonicalElement(bc, t)


def shuffle_words(bc: Bicharacter, u: tuple, v: tuple) -> dict:
    """Braided shuffle of two tensor words: a letter b of v moved in front of
    a letter a of u costs p(b, a)^-1."""
    cache = _cache(bc, "_shuffle_cache")
    hit = cache.get((u, v))
    if hit is not None:
        return hit
    one = bc.ring.one
    if not u:
        out = {v: one}
    elif not v:
        out = {u: one}
    else:
        out = {}
        b = v[-1]
        for t, c in shuffle_words(bc, u, v[:-1]).items():
            _acc(out, t + (b,), c)
        a = u[-1]
        k = bc._k
        key = -sum(k[c][a] for c in v)
        for t, c in shuffle_words(bc, u[:-1], v).items():
            _acc(out, t + (a,), c.mul_monomial(key))
    cache[(u, v)] = out
    return out


def shuffle_product(a: CanonicalElement, b: CanonicalElement) -> CanonicalElement:
    bc = a.bc
    t: dict = {}
    for u, x in a.terms.items():
        for v, y in b.terms.items():
            xy = x * y
            for w, c in shuffle_words(bc, u, v).items():
                _acc(t, w, c * xy)
    return CanonicalElement(bc, t)


def deconcat(c: CanonicalElement) -> list[tuple[CanonicalElement, tuple]]:
    """All splittings t = l . r of the tensor words, grouped by the right
    leg r: returns pairs (sum of l-coefficients, r)."""
    groups: dict = {}
    for w, x in c.terms.items():
        for i in range(len(w) + 1):
            _acc(groups.setdefault(w[i:], {}), w[:i], x)
    return [(CanonicalElement(c.bc, t), r) for r, t in sorted(groups.items(), key=lambda kv: (len(kv[0]), kv[0])) if t]


def equal_in_nichols(u: FreeElement, v: FreeElement) -> bool:
    return omega(u) == omega(v)


def proportional(a: LinComb, b: LinComb) -> bool:
    """a ~ b: equal supports and a_w b_w' = a_w' b_w for all word pairs.
    Two zero vectors count as proportional."""
    if set(a.terms) != set(b.terms):
        return False
    if not a.terms:
        return True
    w0 = next(iter(a.terms))
    a0, b0 = a.terms[w0], b.terms[w0]
    return all(a.terms[w] * b0 == a0 * b.terms[w] for w in a.terms)


def ratio(a: LinComb, b: LinComb):
    """The scalar lambda with a = lambda * b (Laurent or RatFunc), or None."""
    if not proportional(a, b) or not a.terms:
        return None
    w0 = next(iter(a.terms))
    return RatFunc(a.terms[w0], b.terms[w0]).simplify()


# ---------------------------------------------------------------------------
# spans of canonical vectors

def _rows(vectors: Sequence[LinComb], extra: Sequence[LinComb] = ()) -> list[list[LaurentPoly]]:
    coords = sorted({w for v in itertools.chain(vectors, extra) for w in v.terms})
    ring = (vectors or extra)[0].ring
    z = ring.zero
    return [[v.terms.get(w, z) for w in coords] for v in itertools.chain(vectors, extra)]


def span_rank(vectors: Sequence[LinComb]) -> int:
    vectors = [v for v in vectors if v.terms]
    if not vectors:
        return 0
    return _rank(_rows(vectors), vectors[0].ring)


class Span:
    """Span of homogeneous vectors of one degree.

    ``basis`` is a subset of the spanning vectors chosen by a modular
    evaluation; a nonzero minor mod p certifies it is independent, so
    positive membership against it is conclusive.  Negative verdicts are
    confirmed against the full spanning set.
    """

    def __init__(self, vectors: Sequence[LinComb]):
        self.vectors = [v for v in vectors if v.terms]
        if self.vectors:
            _, piv, _ = modular_rank(_rows(self.vectors))
            self.basis = [self.vectors[i] for i in piv]
        else:
            self.basis = []
        self._complete = None

    @property
    def dim(self) -> int:
        if not self.complete():
            # the modular basis missed something; recompute exactly
            self.basis = self._exact_basis()
            self._complete = True
        return len(self.basis)

    def complete(self) -> bool:
        """Exact check that the basis spans every spanning vector."""
        if self._complete is None:
            if len(self.basis) == len(self.vectors):
                self._complete = True
            else:
                self._complete = rank_at_most(_rows(self.vectors), len(self.basis))
        return self._complete

    def _exact_basis(self):
        basis: list = []
        r = 0
        for v in self.vectors:
            if span_rank(basis + [v]) > r:
                basis.append(v)
                r += 1
        return basis

    def contains_all(self, vs: Sequence[LinComb]) -> tuple[bool, int | None]:
        """(all contained?, index of a vector outside the span)."""
        vs = list(vs)
        nz = [i for i, v in enumerate(vs) if v.terms]
        if not nz:
            return True, None
        if not self.basis:
            return False, nz[0]
        rows = _rows(self.basis, [vs[i] for i in nz])
        if rank_at_most(rows, len(self.basis)):
            return True, None
        # something falls outside the basis; locate it and double check
        self.dim  # completes the basis exactly if necessary
        for i in nz:
            if not rank_at_most(_rows(self.basis, [vs[i]]), len(self.basis)):
                return False, i
        return True, None

    def contains(self, v: LinComb) -> bool:
        return self.contains_all([v])[0]


def spans_equal(a: Sequence[LinComb], b: Sequence[LinComb]) -> bool:
    a = [v for v in a if v.terms]
    b = [v for v in b if v.terms]
    if not a or not b:
        return not a and not b
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb and span_rank(a + b) == ra


# ---------------------------------------------------------------------------
# PBW basis

def word_order_key(w: Sequence[int]):
    """Sort key for the word order with x_1 > x_2 > ... > x_n, where a proper
    beginning is greater than the word itself (ascending = increasing)."""
    return tuple(-a for a in w) + (inf,)


def super_letters(n: int) -> list[tuple[int, int]]:
    """All (k, m), increasing in the word order of u(k, m)."""
    sl = [(k, m) for k in range(1, n + 1) for m in range(k, n + 1)]
    return sorted(sl, key=lambda km: word_order_key(range(km[0], km[1] + 1)))


@dataclass(frozen=True)
class PBWMonomial:
    """Product of super-letters written left to right in increasing word
    order: factors are ((k, m), exponent)."""

    factors: tuple

    def element(self, bc: Bicharacter) -> FreeElement:
        out = FreeElement.one(bc)
        for (k, m), e in self.factors:
            u = u_bracket(bc, k, m)
            for _ in range(e):
                out = out * u
        return out

    def canonical(self, bc: Bicharacter) -> CanonicalElement:
        cache = _cache(bc, "_pbw_cache")
        hit = cache.get(self)
        if hit is None:
            hit = CanonicalElement.one(bc)
            for (k, m), e in self.factors:
                u = omega(u_bracket(bc, k, m))
                for _ in range(e):
                    hit = shuffle_product(hit, u)
            cache[self] = hit
        return hit

    def last(self) -> tuple[int, int] | None:
        return self.factors[-1][0] if self.factors else None

    def without_last(self) -> "PBWMonomial":
        (km, e) = self.factors[-1]
        rest = self.factors[:-1] + (((km, e - 1),) if e > 1 else ())
        return PBWMonomial(rest)

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for (k, m), e in self.factors:
            s = f"u[{k},{m}]"
            parts.append(s if e == 1 else f"{s}^{e}")
        return "*".join(parts)


def pbw_monomials(d: Sequence[int]) -> list[PBWMonomial]:
    n = len(d)
    letters = super_letters(n)
    out: list[PBWMonomial] = []

    def rec(idx: int, rest: list[int], acc: list):
        if not any(rest):
            out.append(PBWMonomial(tuple(acc)))
            return
        if idx == len(letters):
            return
        k, m = letters[idx]
        emax = min(rest[k - 1 : m])
        for e in range(emax, -1, -1):
            nxt = rest[:]
            for j in range(k - 1, m):
                nxt[j] -= e
            rec(idx + 1, nxt, acc + ([((k, m), e)] if e else []))

    rec(0, list(d), [])
    return out


class DecompositionError(ArithmeticError):
    pass


def pbw_decompose(u: FreeElement) -> dict:
    """Coordinates of u in the PBW basis of its multidegree."""
    d = u.degree()
    if d is None:
        return {}
    mons = pbw_monomials(d)
    cols = [m.canonical(u.bc) for m in mons]
    target = omega(u)
    coords = sorted({w for v in cols for w in v.terms} | set(target.terms))
    z = u.ring.zero
    M = [[c.terms.get(w, z) for c in cols] for w in coords]
    res = exact_rank_solve(M, [target.terms.get(w, z) for w in coords])
    if not res.consistent:
        raise DecompositionError("element is not in the span of the PBW monomials")
    return {m: x for m, x in zip(mons, res.solution) if not _is_zero(x)}


def _is_zero(x) -> bool:
    if isinstance(x, RatFunc):
        return x.num.is_zero()
    return x.is_zero()


def word_space(n: int, d: Sequence[int]) -> list[tuple]:
    letters = [i + 1 for i, c in enumerate(d) for _ in range(c)]
    return sorted(set(itertools.permutations(letters)))


@dataclass
class FaithfulnessRow:
    degree: tuple
    pbw_count: int
    pbw_rank: int
    word_rank: int

    @property
    def ok(self) -> bool:
        return self.pbw_count == self.pbw_rank == self.word_rank


def faithfulness_row(bc: Bicharacter, d: Sequence[int]) -> FaithfulnessRow:
    """#PBW monomials, rank of their images and rank of omega on all words.

    The word images are checked against the PBW images: rank(all words) <=
    #PBW holds exactly when every word image lies in the PBW span."""
    d = tuple(d)
    mons = pbw_monomials(d)
    pv = [m.canonical(bc) for m in mons]
    wv = [omega(FreeElement.word(bc, w)) for w in word_space(bc.n, d)]
    pr = span_rank(pv)
    rows = _rows(pv, wv)
    # PBW elements are combinations of words, so rank(words) >= rank(PBW)
    wr = pr if rank_at_most(rows, pr) else span_rank(wv)
    return FaithfulnessRow(d, len(mons), pr, wr)


# ---------------------------------------------------------------------------
# generated subalgebras

def multidegrees_upto(n: int, total: int) -> list[tuple]:
    out = []
    for t in range(1, total + 1):
        for c in itertools.combinations_with_replacement(range(n), t):
            d = [0] * n
            for i in c:
                d[i] += 1
            out.append(tuple(d))
    return sorted(set(out), key=lambda d: (sum(d), d))


def _sub(d, e):
    r = tuple(a - b for a, b in zip(d, e))
    return r if min(r) >= 0 else None


class Subalgebra:
    """Subalgebra of the Nichols algebra generated by homogeneous elements,
    computed one multidegree at a time: A_d = sum_g g . A_{d - deg g}."""

    def __init__(self, generators: Sequence, bc: Bicharacter | None = None):
        gens = []
        for g in generators:
            if isinstance(g, CanonicalElement):
                comps = {}
                for w, c in g.terms.items():
                    comps.setdefault(degree_of(w, g.bc.n), {})[w] = c
                pairs = [(d, CanonicalElement(g.bc, t)) for d, t in comps.items()]
            else:
                pairs = [(d, omega(comp)) for d, comp in g.components().items()]
            gens.extend((d, v) for d, v in pairs if any(d))
        self.bc = bc or (generators[0].bc if generators else None)
        self.n = self.bc.n
        self.generators = gens
        self._spans: dict = {}

    def component(self, d: Sequence[int]) -> Span:
        d = tuple(d)
        hit = self._spans.get(d)
        if hit is not None:
            return hit
        if not any(d):
            sp = Span([CanonicalElement.one(self.bc)])
        else:
            vecs = []
            for deg, g in self.generators:
                rest = _sub(d, deg)
                if rest is None:
                    continue
                for b in self.component(rest).basis:
                    vecs.append(shuffle_product(g, b))
            sp = Span(vecs)
        self._spans[d] = sp
        return sp

    def basis(self, d: Sequence[int]) -> list[CanonicalElement]:
        return self.component(d).basis

    def contains(self, u: FreeElement | CanonicalElement) -> bool:
        c = omega(u) if isinstance(u, FreeElement) else u
        if not c.terms:
            return True
        return self.component(c.degree()).contains(c)


def subalgebra_basis(generators: Sequence[FreeElement], d: Sequence[int]) -> list[CanonicalElement]:
    return Subalgebra(generators).basis(d)


def member(u: FreeElement, generators: Sequence[FreeElement], bound: int = 6) -> bool:
    d = u.degree()
    if d is not None and sum(d) > bound:
        raise ValueError(f"degree {sum(d)} exceeds bound {bound}")
    return Subalgebra(generators, u.bc).contains(u)


@dataclass
class Verdict:
    ok: bool
    checked: int = 0
    counterexample: object = None
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def coideal_check(generators: Sequence[FreeElement], bound: int = 6) -> Verdict:
    """Every left leg of the deconcatenation of every basis element (up to
    total degree ``bound``) must lie in the subalgebra."""
    if not generators:
        return Verdict(True)
    A = Subalgebra(generators)
    checked = 0
    for d in multidegrees_upto(A.n, bound):
        basis = A.basis(d)
        if not basis:
            continue
        legs: dict = {}
        for bi, u in enumerate(basis):
            for left, right in deconcat(u):
                if not right or len(right) == sum(d):
                    continue
                legs.setdefault(left.degree(), []).append((left, bi, right))
        for dd, items in sorted(legs.items()):
            ok, bad = A.component(dd).contains_all([x[0] for x in items])
            checked += len(items)
            if not ok:
                left, bi, right = items[bad]
                return Verdict(False, checked, {"degree": d, "basis_index": bi, "right_leg": word_text(right), "left_leg": str(left)})
    return Verdict(True, checked)


def differential_closure_check(profile: RTProfile, bound: int = 6, bc: Bicharacter | None = None) -> Verdict:
    """Each d_i of each generator Psi^{T_k}(k, m) lies in the subalgebra the
    generators span."""
    bc = bc or Bicharacter.one_parameter(profile.n)
    gens_desc = pbw_generators(profile)
    if not gens_desc:
        return Verdict(True)
    gens = [psi(bc, g) for g in gens_desc]
    A = Subalgebra(gens, bc)
    checked = 0
    for g, el in zip(gens_desc, gens):
        if g.m - g.k + 1 > bound:
            continue
        for i in range(1, profile.n + 1):
            der = partial(i, el)
            checked += 1
            if not A.contains(der):
                return Verdict(False, checked, {"generator": g, "i": i})
    return Verdict(True, checked)


# ---------------------------------------------------------------------------
# derivative spans of PBW generators

def derivative_closure(u: FreeElement, star: bool = False) -> dict:
    """All iterated derivatives of u (left calculus, or the dual one), as
    omega-images grouped by multidegree; u itself included."""
    from .freealg import partial_star

    op = partial_star if star else partial
    seen: dict = {}
    frontier = [u]
    out: dict = {}
    while frontier:
        nxt = []
        for v in frontier:
            c = omega(v)
            if not c.terms:
                continue
            d = c.degree()
            bucket = out.setdefault(d, [])
            key = frozenset(c.terms.items())
            if key in seen:
                continue
            seen[key] = True
            bucket.append(c)
            for i in range(1, u.bc.n + 1):
                w = op(i, v)
                if w.terms:
                    nxt.append(w)
        frontier = nxt
    return out


def w_products(g: GenDesc) -> list[list[GenDesc]]:
    """Members of W^S(k,m) and products of pairwise separated members
    (intervals listed left to right), plus the empty product."""
    W = sorted(w_set(g), key=lambda h: (h.k, h.m))
    out: list[list[GenDesc]] = [[]]

    def rec(start: int, acc: list):
        for j in range(start, len(W)):
            h = W[j]
            if acc and not (acc[-1].m + 1 < h.k):
                continue
            nacc = acc + [h]
            out.append(nacc)
            rec(j + 1, nacc)

    rec(0, [])
    return out


def theorem26_span_check(bc: Bicharacter, g: GenDesc, star: bool = False) -> Verdict:
    """Per multidegree, the span of the derivative closure of Psi^S(k,m)
    equals the span of W^S(k,m) together with separated products."""
    P = psi(bc, g)
    closure = derivative_closure(P, star)
    prods: dict = {}
    for factors in w_products(g):
        el = FreeElement.one(bc)
        for h in factors:
            el = el * psi(bc, h)
        c = omega(el)
        if c.terms:
            prods.setdefault(c.degree(), []).append(c)
    for d in sorted(set(closure) | set(prods)):
        if not spans_equal(closure.get(d, []), prods.get(d, [])):
            return Verdict(False, counterexample={"degree": d, "closure_dim": span_rank(closure.get(d, [])), "w_dim": span_rank(prods.get(d, []))})
    return Verdict(True, checked=len(set(closure) | set(prods)))


# ---------------------------------------------------------------------------
# from an element of shape u[k,m] + sum A_i u[k,i] to Psi^S(k,m)

class ShapeError(ValueError):
    pass


def psi_from_element(c: FreeElement) -> tuple[GenDesc, FreeElement, Verdict]:
    """Read S = {i : A_i != 0} off the PBW decomposition of c and return
    Psi^S(k, m) together with the verdict of the membership check of Psi in
    the subalgebra generated by the iterated derivatives of c."""
    d = c.degree()
    if d is None:
        raise ShapeError("zero element")
    support = [i + 1 for i, x in enumerate(d) if x]
    k, m = support[0], support[-1]
    if any(x != 1 for x in d[k - 1 : m]) or len(support) != m - k + 1:
        raise ShapeError(f"degree {d} is not an interval [k:m]")
    coords = pbw_decompose(c)
    lead = PBWMonomial((((k, m), 1),))
    if lead not in coords:
        raise ShapeError("leading coefficient on u[k,m] vanishes")
    S = set()
    for mon in coords:
        last = mon.last()
        if last is None or last[0] != k:
            raise ShapeError(f"monomial {mon} does not end with a super-letter u[{k},i]")
        if last[1] < m:
            S.add(last[1])
    g = GenDesc(k, m, S)
    P = psi(c.bc, g)
    closure = derivative_closure(c)
    A = Subalgebra([v for vs in closure.values() for v in vs], c.bc)
    ok = A.contains(P)
    return g, P, Verdict(ok, 1, None if ok else {"psi": str(g)})


# ---------------------------------------------------------------------------
# identities checked in the Nichols algebra

def check_equal(u: FreeElement, v: FreeElement) -> bool:
    return omega(u) == omega(v)


def check_proportional(u: FreeElement, v: FreeElement) -> bool:
    return proportional(omega(u), omega(v))


def nichols_scalar(u: FreeElement) -> LaurentPoly | None:
    """The scalar value of a degree-zero element (None if not a scalar)."""
    c = omega(u)
    if not c.terms:
        return u.ring.zero
    if set(c.terms) != {()}:
        return None
    return c.terms[()]
