"""Constructive witness permutations certifying covering-radius lower bounds.

Each builder places a handful of extreme values on a triangular-number
position schedule, completes the permutation deterministically, and verifies
by direct distance scan that every codeword is exposed.  A verification
failure is a hard error: the constructions are proven to expose, so a failure
indicates a transcription bug.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .formulas import dn_weak_lower, least_k_quadratic, lmax_pq, r_pq
from .groups import GroupCode, make_dihedral, make_product, relabel
from .perms import PartialPlacement, Perm, format_perm, mod1


class WitnessVerificationError(AssertionError):
    """A built witness failed its own exposure check."""


@dataclass(frozen=True)
class WitnessBundle:
    family: str
    params: dict
    code: GroupCode
    r0: int
    placement: PartialPlacement
    completed: Perm
    conjugator: Perm | None = None
    trace: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        verified, report = verify_witness(self)
        return {
            "family": self.family,
            "params": self.params,
            "code": self.code.descriptor(),
            "r0": self.r0,
            "conjugator": format_perm(self.conjugator) if self.conjugator else None,
            "placement": [list(pair) for pair in self.placement.assignments],
            "completed": format_perm(self.completed),
            "trace": {k: v for k, v in self.trace.items()},
            "verified": verified,
            "report": report,
        }


def verify_witness(bundle: WitnessBundle) -> tuple[bool, list[dict]]:
    """Check d(completed, g) > r0 for every codeword g.

    The report lists one exposing position per codeword, or the offending
    codeword on failure.
    """
    f = bundle.completed
    if len(f) != bundle.code.n:
        raise ValueError("witness degree does not match its code")
    report: list[dict] = []
    ok = True
    for g in bundle.code.elements:
        exposing = None
        for i in range(bundle.code.n):
            if abs(f[i] - g[i]) > bundle.r0:
                exposing = i + 1
                break
        if exposing is None:
            ok = False
            report.append({"codeword": format_perm(g), "exposing_position": None})
        else:
            report.append({"codeword": format_perm(g), "exposing_position": exposing})
    return ok, report


def _finish(bundle: WitnessBundle) -> WitnessBundle:
    ok, report = verify_witness(bundle)
    if not ok:
        failed = [e for e in report if e["exposing_position"] is None]
        raise WitnessVerificationError(
            f"{bundle.family} witness for {bundle.params} failed on "
            f"{len(failed)} codeword(s), e.g. {failed[0]['codeword']}"
        )
    return bundle


def witness_pq(p: int, q: int) -> WitnessBundle:
    """A permutation exposed at r(G_{p,q}) - 1 by the natural two-block code.

    For q >= 3 the second-block positions p + lambda(i) receive the small
    values i; lambda(1) = q and lambda(i) = k(i-1) - C(i,2) thereafter, with
    k the codimension p+q-r0.  For q <= 2 pinning 1 and p+q to opposite ends
    already exposes at p-1.
    """
    if p < q or q < 1:
        raise ValueError(f"need p >= q >= 1, got p={p}, q={q}")
    n = p + q
    code = make_product((p, q))
    if q <= 2:
        r0 = p - 1
        placement = PartialPlacement.from_pairs(n, [(1, n), (n, 1)])
        bundle = WitnessBundle(
            family="pq",
            params={"p": p, "q": q},
            code=code,
            r0=r0,
            placement=placement,
            completed=placement.complete(),
            trace={"case": "q<=2"},
        )
        return _finish(bundle)

    r0 = r_pq(p, q) - 1
    k = n - r0
    lam = {1: q}
    for i in range(2, k + 1):
        lam[i] = k * (i - 1) - comb(i, 2)
    cap = max(i for i in range(2, k + 1) if lam[i] < q)  # the paper's I
    pairs = [(p + lam[i], i) for i in range(1, cap + 1)]
    placement = PartialPlacement.from_pairs(n, pairs)
    bundle = WitnessBundle(
        family="pq",
        params={"p": p, "q": q},
        code=code,
        r0=r0,
        placement=placement,
        completed=placement.complete(),
        trace={"k": k, "I": cap, "lambda": [lam[i] for i in range(1, k + 1)]},
    )
    return _finish(bundle)


def _lmax_conjugator_small_q(p: int, q: int) -> PartialPlacement:
    # pi(p+1)=1, pi(p+2)=2, upper tail fixed; first block completed later
    pairs = [(p + 1, 1), (p + 2, 2)]
    pairs += [(p + i, p + i) for i in range(3, q + 1)]
    return PartialPlacement.from_pairs(p + q, pairs)


def witness_lmax(p: int, q: int) -> WitnessBundle:
    """A conjugator pi and a permutation exposed at L_max(G_{p,q}) - 1 by the
    relabeled code.

    Three regimes: q in {3,4,5} with two symbols pulled down into the second
    block; q = k(k+1) with a swapped pair and two triangular position
    families; and the remaining q with a simpler schedule driven by the
    smallest feasible triangular offset.
    """
    if p < q or q < 3:
        raise ValueError(f"need p >= q >= 3, got p={p}, q={q}")
    n = p + q
    r0 = lmax_pq(p, q) - 1
    k = least_k_quadratic(q)

    if q <= 5:
        pi_placement = _lmax_conjugator_small_q(p, q)
        if q == 3:
            constraints = [(1, p + 3), (2, p + 2)]
        elif q == 4:
            constraints = [(1, 1), (2, p + 4), (p + 3, 2)]
        else:
            constraints = [(1, 1), (2, p + 5), (p + 3, 2), (p + 5, p + 4)]
        case = f"q={q}"
    elif q == k * (k + 1):
        pi_pairs = [(p + 1, 2), (p + 2, 1)]
        pi_pairs += [(p + i, i) for i in range(3, k + 1)]
        pi_pairs += [(p + i, p + i) for i in range(k + 1, q + 1)]
        pi_placement = PartialPlacement.from_pairs(n, pi_pairs)
        if q == 6:
            constraints = [(1, 1), (2, p + 6), (p + 3, p + 5), (p + 4, 2)]
        else:
            constraints = [(1, 1), (2, n), (3, n + 1 - k)]
            for ell in range(0, k - 1):
                constraints.append((comb(ell + 1, 2) + p + 2 + k, k - ell))
            for ell in range(1, k - 1):
                constraints.append((n - k + 2 - comb(ell + 1, 2), n - k + 1 + ell))
        case = "q=k(k+1)"
    else:
        pi_pairs = [(p + i, i) for i in range(1, k + 1)]
        pi_pairs += [(p + i, p + i) for i in range(k + 1, q + 1)]
        pi_placement = PartialPlacement.from_pairs(n, pi_pairs)

        def pi_of(j: int) -> int:
            # image of a second-block position under the (partial) conjugator
            return j - p if j - p <= k else j

        start = min(
            ell for ell in range(1, k + 1) if k * k + k - 1 - comb(ell + 1, 2) < q
        )  # the paper's I
        constraints = []
        for ell in range(1, k + 1):
            constraints.append((pi_of(p + comb(ell + 1, 2)), n - k + ell))
        for ell in range(start, k + 1):
            constraints.append((pi_of(p + k * k + k - 1 - comb(ell + 1, 2)), k - ell + 1))
        case = f"q!=k(k+1), I={start}"

    pi = pi_placement.complete()
    code = relabel(make_product((p, q)), pi)
    placement = PartialPlacement.from_pairs(n, constraints)
    bundle = WitnessBundle(
        family="lmax",
        params={"p": p, "q": q},
        code=code,
        r0=r0,
        placement=placement,
        completed=placement.complete(),
        conjugator=pi,
        trace={"k": k, "case": case},
    )
    return _finish(bundle)


def _dn_lambda(n: int, k: int) -> tuple[dict[int, int], int]:
    """The dihedral location schedule and its largest in-range upper index."""
    d = lambda t: comb(t, 2)
    lam: dict[int, int] = {}
    for i in range(1, k):
        lam[i] = d(k) - d(k - i + 1) + 1
    for i in range(n - k + 2, n + 1):
        lam[i] = d(k) + d(i - n + k) - 2
    cap = max(i for i in range(n - k + 2, n + 1) if lam[i] <= n)
    return lam, cap


def witness_dn(n: int) -> WitnessBundle:
    """A permutation exposed at the weak dihedral lower bound minus one.

    Small values sit at triangular offsets from the bottom, large values at
    mirrored offsets; one location may collide after wrap-around and is
    repaired by shifting it one step (the lambda' rule).
    """
    if n < 10:
        raise ValueError(f"dihedral witness needs n >= 10, got {n}")
    r0 = dn_weak_lower(n) - 1
    k = n - r0 - 1
    lam, cap = _dn_lambda(n, k)
    used_indices = list(range(1, k)) + list(range(n - k + 2, cap + 1))
    used_values = {lam[i] for i in used_indices}

    d = lambda t: comb(t, 2)
    raw_next = d(k) + d(cap + 1 - n + k) - 2
    if mod1(raw_next, n) not in used_values:
        lam_prime = mod1(raw_next, n)
        repair = "wrap"
    else:
        lam_prime = mod1(raw_next + 1, n)
        repair = "wrap+1"

    pairs = [(lam[i], i) for i in used_indices] + [(lam_prime, cap + 1)]
    placement = PartialPlacement.from_pairs(n, pairs)
    bundle = WitnessBundle(
        family="dn",
        params={"n": n},
        code=make_dihedral(n),
        r0=r0,
        placement=placement,
        completed=placement.complete(),
        trace={
            "k": k,
            "I": cap,
            "lambda": {i: lam[i] for i in used_indices},
            "lambda_prime": lam_prime,
            "repair": repair,
        },
    )
    return _finish(bundle)


def witness_dn_refined(n: int) -> WitnessBundle:
    """A permutation exposed at n - m - 1 by the dihedral code, for the three
    congruence families n = m(m-1) - c with c in {0, 1, 2}.

    Only m > 5 is constructive; smaller m falls back to exact search.
    """
    m = None
    offset = None
    for cand in range(2, n):
        base = cand * (cand - 1)
        if base - 2 <= n <= base:
            m, offset = cand, base - n
            break
    if m is None:
        raise ValueError(f"n={n} is not of the form m(m-1)-c with c in {{0,1,2}}")
    if m <= 5:
        raise ValueError(
            f"refined dihedral witness needs m > 5 (n={n} gives m={m}); "
            "use exact search for small degrees"
        )

    d = lambda t: comb(t, 2)
    lam: dict[int, int] = {}
    if offset == 2:  # n = m(m-1) - 2
        lam[1] = n - 1
        for i in range(2, m):
            lam[i] = d(m) - d(m - i + 1) + 1
        lam[m] = d(m) - d(m - 1)
        for i in range(n - m + 2, n + 1):
            lam[i] = d(m) + d(i - n + m) - 2
        indices = list(range(1, m + 1)) + list(range(n - m + 2, n + 1))
    else:
        lam[1] = n - 1
        for i in range(2, m - 1):
            lam[i] = d(m) - d(m - i + 1)
        lam[m - 1] = d(m) - d(2) + 1
        lam[m] = d(m) - d(3) + 1
        lam[n - m + 1] = d(m) + d(3) - 2
        lam[n - m + 2] = d(m) + d(2) - 2
        if offset == 1:  # n = m(m-1) - 1
            for i in range(n - m + 3, n + 1):
                lam[i] = d(m) + d(i - n + m) - 1
        else:  # n = m(m-1)
            for i in range(n - m + 3, n - 1):
                lam[i] = d(m) + d(i - n + m) - 1
            lam[n - 1] = d(m) + d(m - 1)
            lam[n] = n
        indices = list(range(1, m + 1)) + list(range(n - m + 1, n + 1))

    placement = PartialPlacement.from_pairs(n, [(lam[i], i) for i in indices])
    bundle = WitnessBundle(
        family="dn-refined",
        params={"n": n, "m": m},
        code=make_dihedral(n),
        r0=n - m - 1,
        placement=placement,
        completed=placement.complete(),
        trace={"m": m, "case": f"m(m-1)-{offset}", "lambda": {i: lam[i] for i in indices}},
    )
    return _finish(bundle)
