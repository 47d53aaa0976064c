"""A-set machinery for (relabeled) product codes.

The A-set of a mapping i -> j records, per codeword that exposes the mapping,
where that codeword sends the block's anchor symbol.  A block's value set
being fully covered by its A-sets is equivalent to the whole code exposing
the permutation; the brute-force distance scan is the oracle the equivalence
is tested against.
"""
from __future__ import annotations

from dataclasses import dataclass

from .groups import GroupCode, block_anchor, blocks
from .perms import Perm, inverse


@dataclass(frozen=True)
class WindowSets:
    """Bottom and top value windows for radius r on degree n."""

    n: int
    r: int

    def __post_init__(self) -> None:
        if not (0 <= self.r <= self.n - 1):
            raise ValueError(f"r={self.r} outside [0,{self.n - 1}]")

    @property
    def bottom(self) -> frozenset[int]:
        return frozenset(range(1, self.n - self.r))

    @property
    def top(self) -> frozenset[int]:
        return frozenset(range(self.r + 2, self.n + 1))

    @property
    def overlapping(self) -> bool:
        """True when the windows meet, i.e. r <= (n-3)/2; the restricted
        solver refuses to run in this regime."""
        return bool(self.bottom & self.top)


def window_sets(n: int, r: int) -> WindowSets:
    return WindowSets(n=n, r=r)


@dataclass(frozen=True)
class ASet:
    position: int
    target: int
    members: frozenset[int]


def aset(code: GroupCode, i: int, j: int, r: int) -> ASet:
    """A-set of the mapping i -> j at radius r, by direct scan of the code.

    Members are anchor preimages g^{-1}(anchor) over codewords g with
    |j - g(i)| > r, where the anchor is the relabeled first symbol of the
    block containing position i.
    """
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    anchor = block_anchor(code, i)
    members = {
        inverse(g)[anchor - 1] for g in code.elements if abs(j - g[i - 1]) > r
    }
    return ASet(position=i, target=j, members=frozenset(members))


def exposure_by_asets(f: Perm, code: GroupCode, r: int) -> bool:
    """True iff some block's value set is fully covered by that block's A-sets.

    Must agree with the direct distance scan `is_r_exposed`; product codes
    with more than two blocks use the same per-block criterion.
    """
    if len(f) != code.n:
        raise ValueError(f"degree mismatch: {len(f)} vs {code.n}")
    for locations, values in blocks(code):
        covered: set[int] = set()
        for i in locations:
            covered |= aset(code, i, f[i - 1], r).members
        if covered >= values:
            return True
    return False


def counting_bound(code: GroupCode, i: int, j: int, r: int) -> int:
    """Counting-lemma bound on |A-set(i -> j)| for a (relabeled) (p,q) code.

    Exact for the natural code with p <= r <= p+q; for relabeled codes the
    bound is only stated for (p+q)/2 - 1 < r < p+q and other radii are
    refused rather than extrapolated.
    """
    if not code.is_product_structured() or len(code.parts) != 2:
        raise ValueError("counting bound is defined for two-block codes")
    p, q = code.parts
    n = p + q
    if code.kind == "relabeled":
        if not (2 * r > n - 2 and r < n):
            raise ValueError(
                f"relabeled counting bound needs (p+q)/2-1 < r < p+q, got r={r}"
            )
    else:
        if not (p <= r <= n):
            raise ValueError(f"natural counting bound needs p <= r <= p+q, got r={r}")
    in_bottom = 1 <= j <= n - r - 1
    in_top = r + 2 <= j <= n
    if code.kind == "relabeled":
        if in_bottom:
            return n - r - j
        if in_top:
            return j - r - 1
        return 0
    # natural code: the bottom case only bites on the second block, the top
    # case only on the first
    if i > p and in_bottom:
        return n - r - j
    if i <= p and in_top:
        return j - r - 1
    return 0
