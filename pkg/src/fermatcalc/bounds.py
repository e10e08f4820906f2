"""Codimension bounds and their exhaustive combinatorial verification.

The two bound formulas are

    linear:  C(n/2+d, d) - (n/2+1)^2
    second:  C(n/2+d, d) + C(n/2+d-1, d-1) - (3n^2/8 + 9n/4 + 2)

For n = 2 they evaluate to d-3 and 2d-7.  The scan enumerates every exponent
vector alpha of degree sigma dividing (x_0...x_{n+1})^(d-2), counts its
degree-d divisors, and verifies that the minima and their attainers are
exactly the predicted relabeling classes, together with the monotone
exchange inequality that drives the argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool
from typing import Iterator, Sequence

from fermatcalc.idealcalc import ColonIdeal, FermatContext, ideal_slice
from fermatcalc.multipoly import (
    Monomial,
    MonomialOrder,
    Polynomial,
    leading_term,
    monomial_divides,
)

__all__ = [
    "BoundReport",
    "DivisorScanReport",
    "count_divisors",
    "linear_cycle_bound",
    "second_minimum_bound",
    "scan_divisor_minima",
    "tangent_codim",
    "codim_report",
    "classify_lt_shape",
    "classify_lt_shape_of_ideal",
    "bounded_compositions",
]


def count_divisors(alpha: Sequence[int], k: int) -> int:
    """Number of monomials of degree k dividing x^alpha, by convolution of
    the truncated geometric series (1 + t + ... + t^alpha_i)."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    poly = [1]
    for cap in alpha:
        if cap < 0:
            raise ValueError("negative exponent")
        limit = min(len(poly) + cap, k + 1)
        out = [0] * limit
        for i, c in enumerate(poly):
            if c:
                for j in range(min(cap + 1, limit - i)):
                    out[i + j] += c
        poly = out
    return poly[k] if k < len(poly) else 0


def _check_bound_args(n: int, d: int):
    if n < 2 or n % 2:
        raise ValueError("n must be an even integer >= 2")
    if d < 3:
        raise ValueError("d must be at least 3")


def linear_cycle_bound(n: int, d: int) -> int:
    """Codimension of the locus of hypersurfaces containing a middle-dimension
    linear subvariety; equals d-3 for surfaces."""
    _check_bound_args(n, d)
    return math.comb(n // 2 + d, d) - (n // 2 + 1) ** 2


def second_minimum_bound(n: int, d: int) -> int:
    """The next-smallest tangent codimension, attained by classes of
    complete intersections of type (1,...,1,2); equals 2d-7 for surfaces."""
    _check_bound_args(n, d)
    correction = Fraction(3 * n * n, 8) + Fraction(9 * n, 4) + 2
    assert correction.denominator == 1
    return (
        math.comb(n // 2 + d, d)
        + math.comb(n // 2 + d - 1, d - 1)
        - int(correction)
    )


def bounded_compositions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` entries in 0..cap summing to `total`, in
    colexicographic order (last coordinate varies slowest)."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for last in range(max(0, total - cap * (parts - 1)), min(cap, total) + 1):
        for prefix in bounded_compositions(total - last, parts - 1, cap):
            yield prefix + (last,)


def _orbit_size(multiset: Sequence[int], length: int) -> int:
    counts: dict[int, int] = {}
    for v in multiset:
        counts[v] = counts.get(v, 0) + 1
    size = math.factorial(length)
    for c in counts.values():
        size //= math.factorial(c)
    return size


@dataclass(frozen=True)
class DivisorScanReport:
    """Outcome of the exhaustive divisor-count scan.

    The four assertions are:
      (i)   the minimal count equals the linear bound;
      (ii)  its attainers are exactly the relabelings of (0,..,0,d-2,..,d-2);
      (iii) over the remaining vectors the minimum equals the second bound,
            attained exactly on relabelings of (0,..,0,1,d-3,d-2,..,d-2)
            (None when d = 3, where no second-minimum statement exists);
      (iv)  the monotone exchange inequality, with strictness inside its
            window, holds for every checked move.

    `min_attainers` and `second_attainers` list the sorted exponent multisets
    that attain each minimum with their orbit counts, so a failed
    characterization names its counterexample classes.
    """

    n: int
    d: int
    sigma: int
    min_value: int
    min_count: int
    second_min: int | None
    second_count: int | None
    assertions: tuple[bool, bool, bool | None, bool]
    min_attainers: tuple[tuple[tuple[int, ...], int], ...]
    second_attainers: tuple[tuple[tuple[int, ...], int], ...]
    exchange_checks: int

    @property
    def all_hold(self) -> bool:
        return all(a is None or a for a in self.assertions)


def _exchange_holds(alpha: tuple[int, ...], d: int, base: int) -> tuple[bool, int]:
    """Check every unbalancing move alpha -> alpha' on one vector."""
    checks = 0
    for i in range(len(alpha)):
        for j in range(len(alpha)):
            if i == j or alpha[i] == 0 or alpha[i] > alpha[j]:
                continue
            moved = list(alpha)
            moved[i] -= 1
            moved[j] += 1
            value = count_divisors(moved, d)
            checks += 1
            if value > base:
                return False, checks
            if alpha[j] <= d <= sum(alpha) - alpha[i] and value >= base:
                return False, checks
    return True, checks


def _merge_attainers(target: dict, value: int, shape: tuple[int, ...]):
    pool = target.setdefault(value, {})
    pool[shape] = pool.get(shape, 0) + 1


def _scan_chunk(args) -> tuple:
    alphas, n, d = args
    linear_shape = tuple(sorted([0] * (n // 2 + 1) + [d - 2] * (n // 2 + 1)))
    # attainer multisets keyed by count value, for the full pool and for the
    # pool of vectors away from the linear shape class
    full: dict[int, dict[tuple[int, ...], int]] = {}
    rest: dict[int, dict[tuple[int, ...], int]] = {}
    exchange_ok = True
    exchange_checks = 0
    for alpha in alphas:
        s = count_divisors(alpha, d)
        shape = tuple(sorted(alpha))
        _merge_attainers(full, s, shape)
        if shape != linear_shape:
            _merge_attainers(rest, s, shape)
        ok, checks = _exchange_holds(alpha, d, s)
        exchange_checks += checks
        if not ok:
            exchange_ok = False
    return full, rest, exchange_ok, exchange_checks


def _merge_pools(parts: list[dict]) -> dict:
    merged: dict[int, dict[tuple[int, ...], int]] = {}
    for part in parts:
        for value, pool in part.items():
            target = merged.setdefault(value, {})
            for shape, count in pool.items():
                target[shape] = target.get(shape, 0) + count
    return merged


def scan_divisor_minima(n: int, d: int, jobs: int = 1) -> DivisorScanReport:
    """Exhaustively verify the divisor-count minima over all degree-sigma
    exponent vectors bounded by d-2.  Feasible at desk scale (n <= 6, d <= 7).
    """
    _check_bound_args(n, d)
    sigma = (d - 2) * (n // 2 + 1)
    alphas = list(bounded_compositions(sigma, n + 2, d - 2))
    if jobs > 1 and len(alphas) > 1:
        size = max(1, -(-len(alphas) // (4 * jobs)))
        payload = [(alphas[i : i + size], n, d) for i in range(0, len(alphas), size)]
        with Pool(processes=jobs) as pool:
            parts = pool.map(_scan_chunk, payload)
    else:
        parts = [_scan_chunk((alphas, n, d))]
    full = _merge_pools([p[0] for p in parts])
    rest = _merge_pools([p[1] for p in parts])
    exchange_ok = all(p[2] for p in parts)
    exchange_checks = sum(p[3] for p in parts)

    linear_shape = tuple(sorted([0] * (n // 2 + 1) + [d - 2] * (n // 2 + 1)))
    min_value = min(full)
    min_pool = full[min_value]
    min_count = sum(min_pool.values())
    a1 = min_value == linear_cycle_bound(n, d)
    a2 = (
        a1
        and set(min_pool) == {linear_shape}
        and min_count == _orbit_size(linear_shape, n + 2)
    )
    second_min = min(rest) if rest else None
    second_pool = rest.get(second_min, {}) if second_min is not None else {}
    second_count = sum(second_pool.values()) if second_pool else None
    if d >= 4:
        second_shape = tuple(sorted([0] * (n // 2) + [1, d - 3] + [d - 2] * (n // 2)))
        a3 = (
            second_min == second_minimum_bound(n, d)
            and set(second_pool) == {second_shape}
            and second_count == _orbit_size(second_shape, n + 2)
        )
    else:
        a3 = None
    as_tuple = lambda pool: tuple(sorted(pool.items()))
    return DivisorScanReport(
        n=n,
        d=d,
        sigma=sigma,
        min_value=min_value,
        min_count=min_count,
        second_min=second_min,
        second_count=second_count,
        assertions=(a1, a2, a3, exchange_ok),
        min_attainers=as_tuple(min_pool),
        second_attainers=as_tuple(second_pool),
        exchange_checks=exchange_checks,
    )


# ---------------------------------------------------------------------------
# Tangent codimension of a class and shape classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    value: int
    bound_linear: int
    bound_second: int
    classification: str  # attains-linear-minimum | attains-second-minimum | above
    j1_dim: int | None = None
    j1_basis: tuple[Polynomial, ...] | None = None


def codim_report(value: int, n: int, d: int) -> BoundReport:
    lin = linear_cycle_bound(n, d)
    second = second_minimum_bound(n, d)
    if value == lin:
        classification = "attains-linear-minimum"
    elif value == second:
        classification = "attains-second-minimum"
    else:
        classification = "above"
    return BoundReport(value, lin, second, classification)


def tangent_codim(
    p: Polynomial, ctx: FermatContext, order: MonomialOrder | None = None
) -> BoundReport:
    """Codimension of the Zariski tangent space of the local locus of a
    class: the quotient dimension in degree d of its colon ideal.

    When the linear minimum is attained and d >= 2 + 6/n, the degree-one
    slice must consist of n/2+1 independent linear forms; they are verified
    and attached to the report.
    """
    ci = ColonIdeal(p, ctx, order)
    report = codim_report(ci.rank(ctx.d), ctx.n, ctx.d)
    if report.classification == "attains-linear-minimum" and ctx.n * ctx.d >= 2 * ctx.n + 6:
        s1 = ci.slice(1)
        if s1.dim != ctx.n // 2 + 1:
            raise RuntimeError(
                "linear minimum attained but the degree-one slice has "
                f"dimension {s1.dim}; this contradicts the equality analysis"
            )
        report = BoundReport(
            report.value,
            report.bound_linear,
            report.bound_second,
            report.classification,
            j1_dim=s1.dim,
            j1_basis=s1.basis,
        )
    return report


# Leading-term ideal shape templates, up to variable relabeling.  Evens hold
# the degree-one generators in the reference labeling.


def _unit(nvars: int, i: int) -> Monomial:
    return tuple(1 if t == i else 0 for t in range(nvars))


def _power(nvars: int, i: int, e: int) -> Monomial:
    return tuple(e if t == i else 0 for t in range(nvars))


def _shape_templates(n: int, d: int) -> dict[str, frozenset[Monomial]]:
    nvars = n + 2
    evens = list(range(0, nvars, 2))
    odds = list(range(1, nvars, 2))
    linear = [_unit(nvars, i) for i in evens] + [_power(nvars, i, d - 1) for i in odds]
    quadric_a = (
        [_unit(nvars, i) for i in evens[:-1]]
        + [_power(nvars, n, 2)]
        + [_power(nvars, i, d - 1) for i in odds[:-1]]
        + [_power(nvars, n + 1, d - 2)]
    )
    mixed = tuple(
        1 if t == n else (d - 3 if t == n + 1 else 0) for t in range(nvars)
    )
    quadric_b = (
        [_unit(nvars, i) for i in evens[:-1]]
        + [_power(nvars, n, 2)]
        + [_power(nvars, i, d - 1) for i in odds]
        + [mixed]
    )
    return {
        "linear": frozenset(linear),
        "quadric-a": frozenset(quadric_a),
        "quadric-b": frozenset(quadric_b),
    }


def _shape_permutations(n: int) -> Iterator[tuple[int, ...]]:
    import itertools

    nvars = n + 2
    evens = list(range(0, nvars, 2))
    odds = list(range(1, nvars, 2))
    seen = set()
    for swap in (False, True):
        first, second = (evens, odds) if not swap else (odds, evens)
        for pe in itertools.permutations(first):
            for po in itertools.permutations(second):
                perm = [0] * nvars
                for src, dst in zip(evens, pe):
                    perm[src] = dst
                for src, dst in zip(odds, po):
                    perm[src] = dst
                t = tuple(perm)
                seen.add(t)
                yield t
    if n == 2:  # block search is cheap enough to complete for surfaces
        for perm in itertools.permutations(range(nvars)):
            if perm not in seen:
                yield perm


def _apply_perm(mono: Monomial, perm: tuple[int, ...]) -> Monomial:
    out = [0] * len(mono)
    for i, e in enumerate(mono):
        out[perm[i]] = e
    return tuple(out)


def _classify_lt_generators(gens: frozenset[Monomial], n: int, d: int) -> str:
    degree_profile = tuple(sorted(sum(m) for m in gens))
    for name, template in _shape_templates(n, d).items():
        if degree_profile != tuple(sorted(sum(m) for m in template)):
            continue
        for perm in _shape_permutations(n):
            if frozenset(_apply_perm(m, perm) for m in template) == gens:
                return name
    return "no match"


def classify_lt_shape(
    p: Polynomial, order: MonomialOrder, ctx: FermatContext
) -> str:
    """Match the leading-term ideal of a class's colon ideal (composed through
    degree d) against the template shapes, over variable relabelings."""
    ci = ColonIdeal(p, ctx, order)
    gens = frozenset(m for degree in ci.lt_generators(ctx.d) for m in degree)
    return _classify_lt_generators(gens, ctx.n, ctx.d)


def classify_lt_shape_of_ideal(
    generators: Sequence[Polynomial], order: MonomialOrder, ctx: FermatContext
) -> str:
    """Same as classify_lt_shape for an ideal given by homogeneous generators
    (used for complete-intersection ideals, which have no class polynomial)."""
    gens: list[Monomial] = []
    for k in range(ctx.d + 1):
        slice_k = ideal_slice(generators, k, order)
        for b in slice_k.basis:
            lt = leading_term(b, order)[0]
            if not any(monomial_divides(g, lt) for g in gens):
                gens.append(lt)
    return _classify_lt_generators(frozenset(gens), ctx.n, ctx.d)
