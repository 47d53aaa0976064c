"""Permutations over {1..n} and the Chebyshev (l-infinity) metric.

A permutation is stored as a tuple of 1-based images: ``f = (f(1), ..., f(n))``.
This one-line form is also the wire format used by the CLI and fixtures,
rendered as ``"[2,3,1]"``.  Cycle notation is accepted on input only and is
normalized to one-line form immediately.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def mod1(m: int, n: int) -> int:
    """Reduce m into the window [1, n] (wrap-around for cyclic shifts)."""
    return (m - 1) % n + 1


def identity(n: int) -> Perm:
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    return tuple(range(1, n + 1))


def validate_perm(images: Sequence[int]) -> Perm:
    """Check that `images` is a bijection on [n] and return it as a tuple."""
    n = len(images)
    if n < 1:
        raise ValueError("degree must be >= 1")
    if sorted(images) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of [1..{n}]: {list(images)}")
    return tuple(images)


def parse_perm(text: str) -> Perm:
    """Parse one-line text form, e.g. "[2,3,1]"."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"expected bracketed one-line form, got {text!r}")
    try:
        images = [int(tok) for tok in body[1:-1].split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"bad permutation literal {text!r}") from exc
    return validate_perm(images)


def format_perm(f: Perm) -> str:
    return "[" + ",".join(str(x) for x in f) + "]"


def parse_cycles(text: str, n: int) -> Perm:
    """Parse cycle notation like "(1,2,3)(4,5)" into one-line form.

    Fixed points may be omitted.  Cycles must be disjoint.
    """
    images = list(range(n + 1))  # 1-based; index 0 unused
    seen: set[int] = set()
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles and text.strip():
        raise ValueError(f"bad cycle notation {text!r}")
    for cyc in cycles:
        points = [int(tok) for tok in cyc.split(",") if tok.strip()]
        if any(p < 1 or p > n for p in points):
            raise ValueError(f"cycle entry out of [1,{n}] in {text!r}")
        if seen & set(points) or len(set(points)) != len(points):
            raise ValueError(f"cycles not disjoint in {text!r}")
        seen.update(points)
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    return validate_perm(images[1:])


def _check_same_degree(f: Perm, g: Perm) -> int:
    if len(f) != len(g):
        raise ValueError(f"degree mismatch: {len(f)} vs {len(g)}")
    return len(f)


def compose(f: Perm, g: Perm) -> Perm:
    """The product f∘g, i.e. i -> f(g(i))."""
    _check_same_degree(f, g)
    return tuple(f[x - 1] for x in g)


def inverse(f: Perm) -> Perm:
    inv = [0] * len(f)
    for i, x in enumerate(f, start=1):
        inv[x - 1] = i
    return tuple(inv)


def conjugate(h: Perm, g: Perm) -> Perm:
    """Relabel g by h: returns h∘g∘h⁻¹ (same cycle structure as g)."""
    _check_same_degree(h, g)
    return compose(compose(h, g), inverse(h))


def cycle_type(f: Perm) -> tuple[int, ...]:
    """Multiset of cycle lengths, sorted decreasingly."""
    n = len(f)
    seen = [False] * (n + 1)
    lengths = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = f[x - 1]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def linf_distance(f: Perm, g: Perm) -> int:
    """d(f,g) = max over positions of |f(i) - g(i)|."""
    _check_same_degree(f, g)
    return max(abs(a - b) for a, b in zip(f, g))


def distance_to_code(f: Perm, code: Iterable[Perm]) -> int:
    """d(f,C) = min over codewords of the l-infinity distance."""
    best: int | None = None
    for g in code:
        d = linf_distance(f, g)
        if best is None or d < best:
            best = d
            if best == 0:
                break
    if best is None:
        raise ValueError("empty code")
    return best


def is_r_exposed(f: Perm, code: Iterable[Perm], r: int) -> bool:
    """True iff d(f,C) > r, i.e. every codeword misses f by more than r."""
    return distance_to_code(f, code) > r


@dataclass(frozen=True)
class PartialPlacement:
    """An injective partial assignment position -> value on [n].

    Completion rule: unassigned positions, in increasing order, receive the
    unused values in increasing order.  The rule is deterministic so that
    witnesses built from placements are reproducible; exposure never depends
    on the completion, which the verifier re-checks anyway.
    """

    n: int
    assignments: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        positions = [p for p, _ in self.assignments]
        values = [v for _, v in self.assignments]
        if len(set(positions)) != len(positions):
            raise ValueError("duplicate positions in placement")
        if len(set(values)) != len(values):
            raise ValueError("duplicate values in placement")
        for p, v in self.assignments:
            if not (1 <= p <= self.n and 1 <= v <= self.n):
                raise ValueError(f"placement entry ({p},{v}) outside [1,{self.n}]")
        object.__setattr__(self, "assignments", tuple(sorted(self.assignments)))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "PartialPlacement":
        return cls(n=n, assignments=tuple(pairs))

    def as_dict(self) -> dict[int, int]:
        return dict(self.assignments)

    def complete(self) -> Perm:
        """Deterministic completion: free positions get free values in order."""
        assigned = self.as_dict()
        free_values = sorted(set(range(1, self.n + 1)) - set(assigned.values()))
        out = []
        it = iter(free_values)
        for pos in range(1, self.n + 1):
            out.append(assigned.get(pos) or next(it))
        return validate_perm(out)

    def complete_random(self, rng) -> Perm:
        """Complete with a shuffled assignment of the unused values."""
        assigned = self.as_dict()
        free_values = sorted(set(range(1, self.n + 1)) - set(assigned.values()))
        rng.shuffle(free_values)
        out = []
        it = iter(free_values)
        for pos in range(1, self.n + 1):
            out.append(assigned.get(pos) or next(it))
        return validate_perm(out)
