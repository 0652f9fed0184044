"""Residue patterns of denominator windows and their admissible families.

A window of R consecutive denominators (q_1, ..., q_R) of the full
sequence of order Q reduces to a residue string alpha_r = q_r mod p and
an index string n_r = (Q + q_r) // q_(r+1) for r <= R - 2 (each triple
satisfies q_(r+2) = n_r * q_(r+1) - q_r).  A window contributes a gap
H-tuple of the filtered sequence exactly when its first and last
denominators are kept, no two consecutive ones are dropped, and exactly
H + 1 of them are kept.

The admissible (alpha, n) combinations split into finitely many
families: the residue string fixes, for each index position, either a
single residue class mod p or nothing (when the position sits between
two kept neighbours and is pinned to gap value 1 by the window shape).
Enumeration is deterministic: ascending R, zero positions in
lexicographic order, then free residue choices in lexicographic order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from ._errors import InvariantViolation
from .farey import _check_prime

DeltaTuple = Tuple[int, ...]


@dataclass(frozen=True)
class ResiduePattern:
    """Residue string (alpha_1, ..., alpha_R) mod p of a window.

    Invariants: ends are non-zero, no two consecutive zeros, and values
    lie in 0..p-1.
    """

    p: int
    alphas: Tuple[int, ...]

    def __post_init__(self):
        _check_prime(self.p)
        object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        a = self.alphas
        if len(a) < 2:
            raise ValueError("a residue string needs at least two entries")
        if any(not 0 <= v < self.p for v in a):
            raise ValueError("residues must lie in 0..p-1")
        if a[0] == 0 or a[-1] == 0:
            raise ValueError("the end residues must be non-zero")
        if any(a[i] == 0 and a[i + 1] == 0 for i in range(len(a) - 1)):
            raise ValueError("consecutive zero residues are impossible")

    @property
    def r(self) -> int:
        return len(self.alphas)

    @property
    def nonzero_positions(self) -> Tuple[int, ...]:
        """1-based positions of the kept (non-zero) residues."""
        return tuple(i + 1 for i, v in enumerate(self.alphas) if v != 0)

    @property
    def h(self) -> int:
        return len(self.nonzero_positions) - 1


@dataclass(frozen=True)
class Pinned:
    """Index slot forced to a single value by the window shape."""

    value: int


@dataclass(frozen=True)
class FreeSlot:
    """Index slot ranging over a full residue class mod p (n >= 1)."""

    residue: int


@dataclass(frozen=True)
class IndexTemplate:
    """Per-position constraints on the index string of a family.

    One slot per index position 1..R-2; enumeration over concrete index
    strings is delegated to concrete(), with the truncation bound kept
    outside the template (callers decide how far to expand).
    """

    p: int
    slots: Tuple[object, ...]

    @property
    def n_free(self) -> int:
        return sum(1 for s in self.slots if isinstance(s, FreeSlot))

    def concrete(self, bound: int) -> Iterator[Tuple[int, ...]]:
        """All index strings with free slots expanded up to bound, ascending."""
        if bound < 1:
            raise ValueError("expansion bound must be >= 1")
        pools: List[Sequence[int]] = []
        for s in self.slots:
            if isinstance(s, Pinned):
                pools.append((s.value,))
            else:
                first = s.residue if s.residue >= 1 else self.p
                pools.append(range(first, bound + 1, self.p))
        return itertools.product(*pools)


@dataclass(frozen=True)
class MemberFamily:
    """A residue pattern together with its index-string template."""

    pattern: ResiduePattern
    template: IndexTemplate
    delta: DeltaTuple

    @property
    def r(self) -> int:
        return self.pattern.r


def zero_patterns(r: int, h: int) -> List[Tuple[int, ...]]:
    """Sorted zero-position sets: size r-h-1 subsets of 2..r-1, no neighbours."""
    if h < 1:
        raise ValueError("h must be >= 1")
    if not h + 1 <= r <= 2 * h + 1:
        raise ValueError(f"window length {r} incompatible with h={h}")
    z = r - h - 1
    out = []
    for combo in itertools.combinations(range(2, r), z):
        if all(combo[i + 1] - combo[i] >= 2 for i in range(len(combo) - 1)):
            out.append(combo)
    return out


def delta_of(pattern: ResiduePattern, ns: Sequence[int]) -> DeltaTuple:
    """Gap tuple produced by a residue pattern with concrete index string.

    Consecutive kept positions contribute gap 1; kept positions two apart
    (one dropped between) contribute the index value at the first of the
    two.
    """
    ns = tuple(int(n) for n in ns)
    if len(ns) != pattern.r - 2:
        raise ValueError(f"expected {pattern.r - 2} indices, got {len(ns)}")
    rs = pattern.nonzero_positions
    out = []
    for i in range(len(rs) - 1):
        gap = rs[i + 1] - rs[i]
        if gap == 1:
            out.append(1)
        elif gap == 2:
            out.append(ns[rs[i] - 1])
        else:  # pragma: no cover - excluded by the pattern invariants
            raise InvariantViolation("kept positions more than two apart")
    return tuple(out)


def _constraint(alphas: Sequence[int], p: int, r: int) -> Optional[int]:
    """Residue class forced on index position r (1-based), or None.

    The class depends on the zero/non-zero shape of the residue triple
    (alpha_r, alpha_(r+1), alpha_(r+2)); positions whose middle residue is
    zero carry no constraint (the neighbouring residues already satisfy
    alpha_(r+2) = -alpha_r there).
    """
    a0, a1, a2 = alphas[r - 1], alphas[r], alphas[r + 1]
    if a1 == 0:
        return None
    inv = pow(a1, -1, p)
    if a0 == 0 and a2 == 0:
        return 0
    if a0 == 0:
        return (a2 * inv) % p
    if a2 == 0:
        return (a0 * inv) % p
    return ((a2 + a0) * inv) % p


def index_constraint(pattern: ResiduePattern, r: int) -> Optional[int]:
    """Public wrapper of the per-position congruence; r is 1-based."""
    if not 1 <= r <= pattern.r - 2:
        raise ValueError(f"index position must lie in 1..{pattern.r - 2}")
    return _constraint(pattern.alphas, pattern.p, r)


def residue_string_consistent(alphas: Sequence[int], p: int) -> bool:
    """Check alpha_(r+2) == -alpha_r mod p across every zero residue.

    The recurrence q_(r+2) = n * q_(r+1) - q_r forces this whenever
    alpha_(r+1) = 0; residue strings violating it correspond to no
    window at all.
    """
    for r in range(1, len(alphas) - 1):
        if alphas[r] == 0 and (alphas[r + 1] + alphas[r - 1]) % p != 0:
            return False
    return True


def window_signature(qs: Sequence[int], q_max: int, p: int) -> tuple:
    """Reduce a run of consecutive denominators to (residues, indices)."""
    qs = [int(q) for q in qs]
    if len(qs) < 2:
        raise ValueError("need at least two denominators")
    alphas = tuple(q % p for q in qs)
    ns = tuple((q_max + qs[i]) // qs[i + 1] for i in range(len(qs) - 2))
    return alphas, ns


def index_conditions_hold(alphas: Sequence[int], ns: Sequence[int], p: int) -> bool:
    """Do concrete indices satisfy every congruence the residues force?"""
    alphas = list(alphas)
    if len(ns) != len(alphas) - 2:
        raise ValueError("index string length must be residue length - 2")
    if not residue_string_consistent(alphas, p):
        return False
    for r in range(1, len(alphas) - 1):
        want = _constraint(alphas, p, r)
        if want is not None and ns[r - 1] % p != want:
            return False
    return True


def _alpha_assignments(p: int, r: int, zeros: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Residue strings with the given zero set, lexicographic order.

    A position right after a zero is forced to minus the residue two
    back; the remaining non-zero positions range over 1..p-1 freely.
    """
    zset = set(zeros)
    free = [pos for pos in range(1, r + 1)
            if pos not in zset and (pos - 1) not in zset]
    for choice in itertools.product(range(1, p), repeat=len(free)):
        vals = {}
        it = iter(choice)
        for pos in range(1, r + 1):
            if pos in zset:
                vals[pos] = 0
            elif (pos - 1) in zset:
                vals[pos] = (-vals[pos - 2]) % p
            else:
                vals[pos] = next(it)
        yield tuple(vals[pos] for pos in range(1, r + 1))


def enumerate_families(p: int, h: int, delta) -> List[MemberFamily]:
    """All (residue pattern, index template) families yielding gap tuple delta.

    Deterministic order: window length R ascending from h+1 to 2h+1,
    zero-position sets lexicographic, then residue choices lexicographic.
    Families whose pinned gap-1 positions clash with delta are skipped;
    every returned family has exactly one slot per index position.
    """
    _check_prime(p)
    if h < 1:
        raise ValueError("h must be >= 1")
    delta = tuple(int(d) for d in delta)
    if len(delta) != h:
        raise ValueError(f"delta must have {h} entries")
    if any(d < 1 for d in delta):
        raise ValueError("gap values are >= 1")
    families = []
    for r in range(h + 1, 2 * h + 2):
        for zeros in zero_patterns(r, h):
            zset = set(zeros)
            rs = [pos for pos in range(1, r + 1) if pos not in zset]
            pinned = {}
            ok = True
            for i in range(h):
                gap = rs[i + 1] - rs[i]
                if gap == 1:
                    if delta[i] != 1:
                        ok = False
                        break
                else:
                    pinned[rs[i]] = delta[i]
            if not ok:
                continue
            for alphas in _alpha_assignments(p, r, zeros):
                slots = []
                feasible = True
                for pos in range(1, r - 1):
                    cls = _constraint(alphas, p, pos)
                    if pos in pinned:
                        if cls is not None and pinned[pos] % p != cls:
                            feasible = False
                            break
                        slots.append(Pinned(pinned[pos]))
                    else:
                        if cls is None:  # pragma: no cover - shape forbids it
                            raise InvariantViolation(
                                "unconstrained index at a non-pinned position")
                        slots.append(FreeSlot(cls))
                if not feasible:
                    continue
                pattern = ResiduePattern(p, alphas)
                template = IndexTemplate(p, tuple(slots))
                families.append(MemberFamily(pattern, template, delta))
    return families
