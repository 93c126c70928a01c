"""Parameter-free combinatorics of homogeneous right coideal subalgebras:
root sequences, the R_k / T_k sets, diagrams, classification predicates
and the pair-counting engine.

Subsets of [0, n] are int bitmasks (bit a <=> a in the set).
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for a in items:
        m |= 1 << a
    return m


def items_of(mask: int) -> list[int]:
    out = []
    a = 0
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return out


def interval_mask(lo: int, hi: int) -> int:
    """Bits lo..hi inclusive (empty when hi < lo)."""
    if hi < lo:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


# ---------------------------------------------------------------------------
# root sequences and R/T profiles

@dataclass(frozen=True)
class RootSequence:
    n: int
    theta: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.theta) != self.n:
            raise ValueError(f"theta {self.theta} does not have length n={self.n}")
        for k, t in enumerate(self.theta, start=1):
            if not 0 <= t <= self.n - k + 1:
                raise ValueError(f"theta_{k}={t} outside [0, {self.n - k + 1}]")

    @classmethod
    def of(cls, theta: Sequence[int]) -> "RootSequence":
        return cls(len(theta), tuple(int(t) for t in theta))

    def tilde(self, k: int) -> int:
        """k + theta_k - 1 (equals k-1 when theta_k = 0)."""
        return k + self.theta[k - 1] - 1


@dataclass(frozen=True)
class RTProfile:
    n: int
    theta: RootSequence
    R: tuple[int, ...]  # masks, R[k-1] is R_k
    T: tuple[int, ...]

    def R_set(self, k: int) -> list[int]:
        return items_of(self.R[k - 1])

    def T_set(self, k: int) -> list[int]:
        return items_of(self.T[k - 1])

    def in_T(self, k: int, m: int) -> bool:
        """m in T_k, with T_{n+1} empty."""
        if k > self.n:
            return False
        return bool(self.T[k - 1] >> m & 1)


def build_RT(theta: RootSequence | Sequence[int]) -> RTProfile:
    if not isinstance(theta, RootSequence):
        theta = RootSequence.of(theta)
    n = theta.n
    R = [0] * (n + 2)
    T = [0] * (n + 2)  # index n+1 stays empty
    for k in range(n, 0, -1):
        if theta.theta[k - 1] == 0:
            continue
        tt = theta.tilde(k)
        r = 1 << tt
        for m in range(k, tt):
            if T[m + 1] >> tt & 1:
                continue
            if all(bool(T[s + 1] >> m & 1) == bool(T[s + 1] >> tt & 1) for s in range(k, m)):
                r |= 1 << m
        t = r
        for s in items_of(r):
            if s != n:
                t |= T[s + 1]
        R[k], T[k] = r, t
    return RTProfile(n, theta, tuple(R[1 : n + 1]), tuple(T[1 : n + 1]))


def enumerate_theta(n: int) -> Iterator[RootSequence]:
    """All root sequences for rank n in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    ranges = [range(0, n - k + 2) for k in range(1, n + 1)]
    for th in itertools.product(*ranges):
        yield RootSequence(n, th)


@dataclass(frozen=True, order=True)
class RootInterval:
    k: int
    m: int

    def __post_init__(self):
        if self.k > self.m:
            raise ValueError("k must not exceed m")


def roots_of(profile: RTProfile) -> set[RootInterval]:
    return {RootInterval(k, m) for k in range(1, profile.n + 1) for m in profile.T_set(k)}


def simple_roots_of(profile: RTProfile) -> set[RootInterval]:
    return {RootInterval(k, m) for k in range(1, profile.n + 1) for m in profile.R_set(k)}


def theta_from_R(n: int, R: Sequence[int]) -> RootSequence:
    """Recover theta from the R masks: theta_k = max(R_k) - k + 1, or 0."""
    return RootSequence(n, tuple((r.bit_length() - 1) - k + 1 if r else 0 for k, r in enumerate(R, start=1)))


# ---------------------------------------------------------------------------
# generator descriptors

class GenDesc:
    """Descriptor (k, m, S) of the generator Psi^S(k, m).  Only S & [k, m-1]
    matters; equality and hashing use that part."""

    __slots__ = ("k", "m", "S")

    def __init__(self, k: int, m: int, S: Iterable[int] = ()):
        if not 1 <= k <= m:
            raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
        self.k = int(k)
        self.m = int(m)
        self.S = frozenset(int(s) for s in S)

    @property
    def s(self) -> tuple[int, ...]:
        """S & [k, m-1] in increasing order."""
        return tuple(sorted(x for x in self.S if self.k <= x < self.m))

    def key(self):
        return (self.k, self.m, self.s)

    def __eq__(self, other):
        return isinstance(other, GenDesc) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"GenDesc({self.k}, {self.m}, {set(self.s) or '{}'})"

    def normalized(self) -> "GenDesc":
        return GenDesc(self.k, self.m, self.s)

    def in_S(self, i: int) -> bool:
        return self.k <= i < self.m and i in self.S

    def s_circle(self) -> frozenset[int]:
        return frozenset(self.s) | {self.k - 1}

    def s_bullet(self) -> frozenset[int]:
        return frozenset(self.s) | {self.m}

    def complement(self) -> "GenDesc":
        """Same interval, S replaced by [k, m-1] minus S."""
        return GenDesc(self.k, self.m, set(range(self.k, self.m)) - set(self.s))

    def sub(self, a: int, b: int) -> "GenDesc":
        """Descriptor of Psi^S(a, b) with the same S."""
        return GenDesc(a, b, self.S)

    def pieces(self) -> list[tuple[int, int]]:
        """Intervals [k, s_1], [1+s_1, s_2], ..., [1+s_r, m]."""
        out = []
        a = self.k
        for s in self.s:
            out.append((a, s))
            a = s + 1
        out.append((a, self.m))
        return out


def u_text(a: int, b: int) -> str:
    """Right-nested bracket text of u[a, b]."""
    if a == b:
        return f"x{a}"
    return f"[x{a},{u_text(a + 1, b)}]"


def psi_text(g: GenDesc) -> str:
    pieces = g.pieces()
    out = u_text(*pieces[-1])
    for a, b in reversed(pieces[:-1]):
        out = f"[{out},{u_text(a, b)}]"
    return out


def diagram(g: GenDesc, n: int | None = None, unicode: bool = False) -> str:
    """Two-row picture: labels, then white/black points.  With n given the
    picture spans 0..n and positions outside [k-1, m] show as '.'."""
    white, black, blank = ("○", "●", "·") if unicode else ("o", "*", ".")
    lo, hi = (0, n) if n is not None else (g.k - 1, g.m)
    width = len(str(hi))
    labels, points = [], []
    for i in range(lo, hi + 1):
        if i < g.k - 1 or i > g.m:
            ch = blank
        elif i == g.k - 1:
            ch = white
        elif i == g.m or g.in_S(i):
            ch = black
        else:
            ch = white
        labels.append(str(i).rjust(width))
        points.append(ch.rjust(width))
    return " ".join(labels) + "\n" + " ".join(points)


def entrances(g: GenDesc) -> set[int]:
    S = set(g.s)
    return {s for s in g.s_bullet() if s == g.k or (s - 1) not in S}


def w_set(g: GenDesc) -> list[GenDesc]:
    """The family W^S(k,m): Psi^S(a,b) with k <= a <= b <= m, b in S or b = m,
    and a-1 not in S or a = k."""
    S = set(g.s)
    out = []
    for a in range(g.k, g.m + 1):
        if a != g.k and (a - 1) in S:
            continue
        for b in range(a, g.m + 1):
            if b in S or b == g.m:
                out.append(GenDesc(a, b, S))
    return out


def separated(g: GenDesc, h: GenDesc) -> bool:
    """Intervals [k,m], [k',m'] with a gap: m+1 < k' or m'+1 < k."""
    return g.m + 1 < h.k or h.m + 1 < g.k


# ---------------------------------------------------------------------------
# classification predicates

def is_hopf(theta: RootSequence | Sequence[int]) -> bool:
    th = theta.theta if isinstance(theta, RootSequence) else tuple(theta)
    return all(t <= 1 for t in th)


def max_hopf(profile: RTProfile) -> set[int]:
    return {j for j in range(1, profile.n + 1) if profile.in_T(j, j)}


def _j_of(profile: RTProfile, k: int) -> int | None:
    for j in range(k, profile.n + 1):
        if profile.in_T(j, j):
            return j
    return None


def is_adr_invariant(profile: RTProfile) -> bool:
    for k in range(1, profile.n + 1):
        j = _j_of(profile, k)
        want = 0 if j is None else interval_mask(j, profile.n)
        if profile.T[k - 1] != want:
            return False
    return True


def kpi_of(profile: RTProfile) -> frozenset[int]:
    return frozenset(max_hopf(profile))


def theta_of_kpi(n: int, pi: Iterable[int]) -> RootSequence:
    pi = frozenset(pi)
    for th in enumerate_theta(n):
        prof = build_RT(th)
        if is_adr_invariant(prof) and kpi_of(prof) == pi:
            return th
    raise LookupError(f"no ad-invariant root sequence for pi={sorted(pi)}")


# ---------------------------------------------------------------------------
# pbw and coideal generators

def pbw_generators(profile: RTProfile) -> list[GenDesc]:
    """Psi^{T_k}(k, m) for m in T_k, ordered k = n..1 then m increasing."""
    out = []
    for k in range(profile.n, 0, -1):
        for m in profile.T_set(k):
            out.append(GenDesc(k, m, profile.T_set(k)))
    return out


def simple_generators(profile: RTProfile) -> list[GenDesc]:
    out = []
    for k in range(profile.n, 0, -1):
        for m in profile.R_set(k):
            out.append(GenDesc(k, m, profile.T_set(k)))
    return out


def coideal_generators(profile: RTProfile) -> list[GenDesc]:
    """Generators of U_theta as a right coideal subalgebra: the simple-root
    generators that do not already occur in W^{T_k}(k, m) of another one."""
    simple = simple_generators(profile)
    out = []
    for g in simple:
        covered = False
        for h in simple:
            if h == g or not (h.k <= g.k and g.m <= h.m):
                continue
            if g in set(w_set(h)):
                covered = True
                break
        if not covered:
            out.append(g)
    return out


def u1_descriptors(profile: RTProfile) -> list[tuple[str, GenDesc]]:
    """Pairs (g_k...g_m, descriptor) for the generators g^{-1} Psi^{T_k}(k,m)."""
    out = []
    for k in range(1, profile.n + 1):
        for m in profile.T_set(k):
            word = "".join(f"g{i}" for i in range(k, m + 1))
            out.append((word, GenDesc(k, m, profile.T_set(k))))
    return out


# ---------------------------------------------------------------------------
# pair condition

_NEG = -10**9
_POS = 10**9


def _sup(mask: int) -> int:
    return mask.bit_length() - 1 if mask else _NEG


def _inf(mask: int) -> int:
    return (mask & -mask).bit_length() - 1 if mask else _POS


def cell_conditions(k: int, i: int, tk_mask: int, tk: int, ti_mask: int, ti: int) -> tuple[bool, bool]:
    """(condition 1, condition 2) at cell (k, i).  tk, ti are the tilde
    values k+theta_k-1 and i+theta'_i-1; masks are T_k and T'_i."""
    top = min(tk, ti)
    A = tk_mask & ti_mask & interval_mask(max(k, i), top)
    B = ~tk_mask & ~ti_mask & interval_mask(max(k - 1, i - 1), top - 1)
    c1 = _sup(A) < _inf(B)
    c2 = False
    if i == k and tk == ti:
        rng = interval_mask(k, tk - 1)
        c2 = not (tk_mask & ti_mask & rng) and not (~tk_mask & ~ti_mask & rng)
    return c1, c2


@dataclass
class PairReport:
    ok: bool
    cells: dict = field(default_factory=dict)  # (k, i) -> (c1, c2)

    def failing(self):
        return [ki for ki, (a, b) in sorted(self.cells.items()) if not (a or b)]


def cond_pair(pos: RTProfile, neg: RTProfile) -> PairReport:
    if pos.n != neg.n:
        raise ValueError("rank mismatch")
    n = pos.n
    cells = {}
    ok = True
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            c = cell_conditions(k, i, pos.T[k - 1], pos.theta.tilde(k), neg.T[i - 1], neg.theta.tilde(i))
            cells[(k, i)] = c
            ok = ok and (c[0] or c[1])
    return PairReport(ok, cells)


# ---------------------------------------------------------------------------
# counting

def count_borel(n: int) -> int:
    return len({build_RT(th).R for th in enumerate_theta(n)})


@dataclass
class FullCount:
    total: int
    via_condition1_only: int  # pairs where every cell passes condition 1

    @property
    def needing_condition2(self) -> int:
        return self.total - self.via_condition1_only


class _PairCounter:
    """Bitset engine.  For each position i the sequences theta' are grouped
    by their row signature (T'_i, tilde_i).  For a row signature (T_k,
    tilde_k) at position k the set of compatible theta' is the union of
    the compatible signature classes at position i, a single int bitset.
    The compatible set of theta is the AND over all (k, i); sequences that
    share a suffix theta_k..theta_n share T_k..T_n, so partial ANDs are
    reused along the suffix tree."""

    def __init__(self, n: int):
        self.n = n
        self.thetas = list(enumerate_theta(n))
        self.profiles = [build_RT(t) for t in self.thetas]
        sig = lambda p, k: (p.T[k - 1], p.theta.tilde(k))  # noqa: E731
        # class bitsets on the theta' side
        self.classes: list[dict] = []
        for i in range(1, n + 1):
            cls: dict = {}
            for idx, p in enumerate(self.profiles):
                s = sig(p, i)
                cls[s] = cls.get(s, 0) | (1 << idx)
            self.classes.append(cls)
        self.sigs_at = [sorted({sig(p, k) for p in self.profiles}) for k in range(1, n + 1)]

    def _tables(self, cond1_only: bool):
        n = self.n
        tab = {}
        for k in range(1, n + 1):
            for s in self.sigs_at[k - 1]:
                row = []
                for i in range(1, n + 1):
                    acc = 0
                    for t, bits in self.classes[i - 1].items():
                        c1, c2 = cell_conditions(k, i, s[0], s[1], t[0], t[1])
                        if c1 or (c2 and not cond1_only):
                            acc |= bits
                    row.append(acc)
                ands = row[0]
                for b in row[1:]:
                    ands &= b
                tab[(k, s)] = ands
        return tab

    def count(self, cond1_only: bool = False, indices: Sequence[int] | None = None, progress=None) -> int:
        tab = self._tables(cond1_only)
        n = self.n
        full = (1 << len(self.thetas)) - 1
        memo: dict = {}
        total = 0
        idxs = range(len(self.thetas)) if indices is None else indices
        for done, idx in enumerate(idxs):
            if progress is not None and done % 4096 == 0:
                progress(done, len(idxs))
            p = self.profiles[idx]
            acc = full
            key = ()
            for k in range(n, 0, -1):
                key = key + ((p.T[k - 1], p.theta.tilde(k)),)
                hit = memo.get(key)
                if hit is None:
                    hit = acc & tab[(k, key[-1])]
                    memo[key] = hit
                acc = hit
            total += acc.bit_count()
        if progress is not None:
            progress(len(idxs), len(idxs))
        return total


def _count_chunk(args):
    n, cond1_only, indices = args
    return _PairCounter(n).count(cond1_only, indices)


def count_full(n: int, threads: int | None = None, with_stats: bool = False, progress=None):
    """Number of ordered pairs (theta, theta') satisfying cond_pair.

    ``progress(done, total)`` is called with the number of theta processed
    (single-process mode) or of finished chunks (pool mode)."""
    threads = threads or int(os.environ.get("ATLAS_THREADS", "1"))
    if threads <= 1:
        pc = _PairCounter(n)
        total = pc.count(False, progress=progress)
        if not with_stats:
            return total
        return FullCount(total, pc.count(True, progress=progress))
    from concurrent.futures import ProcessPoolExecutor

    size = math.factorial(n + 1)
    chunks = [list(range(j, size, threads)) for j in range(threads)]
    results = []
    with ProcessPoolExecutor(max_workers=threads) as ex:
        for flag in ([False, True] if with_stats else [False]):
            acc = 0
            for j, part in enumerate(ex.map(_count_chunk, [(n, flag, c) for c in chunks])):
                acc += part
                if progress is not None:
                    progress(j + 1, len(chunks))
            results.append(acc)
    if not with_stats:
        return results[0]
    return FullCount(results[0], results[1])


def brute_force_full(n: int) -> int:
    profs = [build_RT(t) for t in enumerate_theta(n)]
    return sum(1 for a in profs for b in profs if cond_pair(a, b).ok)
