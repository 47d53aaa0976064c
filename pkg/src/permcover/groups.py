"""Constructors for the enumerated group codes: cyclic, dihedral, products
of block rotations, and their relabelings under conjugation.

All codes are fully materialized (every family here has at most 2n or
prod(parts) elements), and element lists are kept in lexicographic one-line
order so results are deterministic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .perms import Perm, conjugate, format_perm, identity, mod1, parse_perm, validate_perm


@dataclass(frozen=True)
class FactorProfile:
    """Block sizes (p1,...,pk) of a product-of-cycles group, non-increasing.

    Unsorted input is rejected rather than silently sorted: the closed-form
    radius formulas key on the minimum part, so explicitness avoids misuse.
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("profile needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def block_bounds(self) -> list[tuple[int, int]]:
        """[(start, end)] position ranges of each block, 1-based inclusive."""
        bounds = []
        start = 1
        for p in self.parts:
            bounds.append((start, start + p - 1))
            start += p
        return bounds


@dataclass(frozen=True)
class GroupCode:
    """An enumerated permutation group code.

    kind is one of "cyclic", "dihedral", "product", "relabeled".  For
    relabeled codes, `base_kind` names the natural code and `pi` the
    conjugator; `parts` is carried along for product-structured codes.
    """

    n: int
    kind: str
    elements: tuple[Perm, ...]
    parts: tuple[int, ...] | None = None
    pi: Perm | None = None
    base_kind: str | None = None

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, f: Perm) -> bool:
        return f in self.element_set

    @property
    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements)

    def is_product_structured(self) -> bool:
        """True for product codes and relabelings of product codes."""
        if self.kind == "product":
            return True
        return self.kind == "relabeled" and self.base_kind == "product"

    def descriptor(self) -> dict:
        """JSON-serializable description, the CLI wire format."""
        if self.kind == "relabeled":
            base = {"kind": self.base_kind, "n": self.n}
            if self.base_kind == "product":
                base = {"kind": "product", "parts": list(self.parts)}
            return {"kind": "relabeled", "base": base, "pi": format_perm(self.pi)}
        if self.kind == "product":
            return {"kind": "product", "parts": list(self.parts)}
        return {"kind": self.kind, "n": self.n}


def make_cyclic(n: int) -> GroupCode:
    """The natural transitive cyclic group: all n rotations of [1..n]."""
    if n < 1:
        raise ValueError(f"cyclic code needs n >= 1, got {n}")
    elems = [tuple(mod1(i + t, n) for i in range(1, n + 1)) for t in range(n)]
    return GroupCode(n=n, kind="cyclic", elements=tuple(sorted(elems)))


def dihedral_rotation(n: int, i: int) -> Perm:
    """Row B_i of the dihedral group: j -> (n - i + 1 + j) wrapped into [1,n]."""
    return tuple(mod1(n - i + 1 + j, n) for j in range(1, n + 1))


def dihedral_reflection(n: int, i: int) -> Perm:
    """Row A_i of the dihedral group: j -> (i - j) wrapped into [1,n]."""
    return tuple(mod1(i - j, n) for j in range(1, n + 1))


def make_dihedral(n: int) -> GroupCode:
    """The natural dihedral group: n rotations and n reflections of [1..n]."""
    if n < 3:
        raise ValueError(f"dihedral code needs n >= 3, got {n}")
    elems = {dihedral_rotation(n, i) for i in range(1, n + 1)}
    elems |= {dihedral_reflection(n, i) for i in range(1, n + 1)}
    if len(elems) != 2 * n:
        raise AssertionError(f"dihedral enumeration produced {len(elems)} elements")
    return GroupCode(n=n, kind="dihedral", elements=tuple(sorted(elems)))


def make_product(profile: FactorProfile | Sequence[int]) -> GroupCode:
    """Direct product of block rotations: block i is rotated independently."""
    if not isinstance(profile, FactorProfile):
        profile = FactorProfile(tuple(profile))
    n = profile.n
    elems = []
    for shifts in itertools.product(*(range(p) for p in profile.parts)):
        images = []
        for (start, end), t in zip(profile.block_bounds(), shifts):
            p = end - start + 1
            images.extend(start - 1 + mod1(i + t, p) for i in range(1, p + 1))
        elems.append(validate_perm(images))
    return GroupCode(
        n=n, kind="product", elements=tuple(sorted(elems)), parts=profile.parts
    )


def relabel(code: GroupCode, pi: Perm) -> GroupCode:
    """The conjugate code pi C pi^-1 (same group structure, relabeled symbols)."""
    if len(pi) != code.n:
        raise ValueError(f"conjugator degree {len(pi)} != code degree {code.n}")
    elems = tuple(sorted(conjugate(pi, g) for g in code.elements))
    if code.kind == "relabeled":
        from .perms import compose

        return GroupCode(
            n=code.n,
            kind="relabeled",
            elements=elems,
            parts=code.parts,
            pi=compose(pi, code.pi),
            base_kind=code.base_kind,
        )
    return GroupCode(
        n=code.n,
        kind="relabeled",
        elements=elems,
        parts=code.parts,
        pi=pi,
        base_kind=code.kind,
    )


def blocks(code: GroupCode) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Per-block (location-set, value-set) pairs of a (relabeled) product code.

    For these codes each block's location set equals its value set: every
    element maps the block's locations onto themselves.
    """
    if not code.is_product_structured():
        raise ValueError(f"blocks() requires a product-structured code, got kind={code.kind!r}")
    profile = FactorProfile(code.parts)
    pi = code.pi if code.kind == "relabeled" else identity(code.n)
    out = []
    for start, end in profile.block_bounds():
        locs = frozenset(pi[i - 1] for i in range(start, end + 1))
        out.append((locs, locs))
    return out


def block_anchor(code: GroupCode, position: int) -> int:
    """The anchor symbol of the block containing `position`: the image under
    the conjugator of the block's first natural position."""
    if not code.is_product_structured():
        raise ValueError(f"anchors require a product-structured code, got kind={code.kind!r}")
    profile = FactorProfile(code.parts)
    pi = code.pi if code.kind == "relabeled" else identity(code.n)
    for start, end in profile.block_bounds():
        block = {pi[i - 1] for i in range(start, end + 1)}
        if position in block:
            return pi[start - 1]
    raise ValueError(f"position {position} outside [1,{code.n}]")


def code_from_descriptor(desc: dict) -> GroupCode:
    """Build a code from its JSON descriptor (the CLI wire format)."""
    kind = desc.get("kind")
    if kind == "cyclic":
        return make_cyclic(int(desc["n"]))
    if kind == "dihedral":
        return make_dihedral(int(desc["n"]))
    if kind == "product":
        return make_product(tuple(int(p) for p in desc["parts"]))
    if kind == "relabeled":
        base = code_from_descriptor(desc["base"])
        pi = desc["pi"]
        if isinstance(pi, str):
            pi = parse_perm(pi)
        else:
            pi = validate_perm(pi)
        return relabel(base, pi)
    raise ValueError(f"unknown code kind {kind!r}")


def audit_group(code: GroupCode) -> None:
    """Check the group axioms on the enumerated element list.

    Exhaustive (quadratic) closure check; intended for codes up to ~10^4
    elements.  Raises AssertionError on the first violation.
    """
    from .perms import compose, inverse

    elems = code.element_set
    if identity(code.n) not in elems:
        raise AssertionError("identity missing")
    for g in code.elements:
        if inverse(g) not in elems:
            raise AssertionError(f"inverse of {g} missing")
        for h in code.elements:
            if compose(g, h) not in elems:
                raise AssertionError(f"product {g}*{h} escapes the code")
