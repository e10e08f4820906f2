"""Shared fixtures and independent linear-algebra oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from fermatcalc.exactnum import CyclotomicNumber, euler_phi, root_of_unity, zeta
from fermatcalc.idealcalc import FermatContext
from fermatcalc.multipoly import Polynomial, monomials_of_degree


@pytest.fixture
def quintic_surface() -> FermatContext:
    return FermatContext(2, 5)


@pytest.fixture
def quartic_surface() -> FermatContext:
    return FermatContext(2, 4)


def coefficient_pool(m: int) -> list[CyclotomicNumber]:
    """A mixed pool of exact values for randomized constructions."""
    z = zeta(m)
    return [
        CyclotomicNumber.from_rational(2),
        CyclotomicNumber.from_rational(Fraction(-3, 2)),
        CyclotomicNumber.one(),
        z,
        z**3,
        z + 1,
        z * 2 - 1,
    ]


def random_reduced_class(ctx: FermatContext, rng: random.Random, terms: int = 10) -> Polynomial:
    """A random homogeneous class polynomial of socle degree with all
    exponents <= d-2 (hence nonzero reduction)."""
    monos = list(monomials_of_degree(ctx.nvars, ctx.sigma, cap=ctx.d - 2))
    pool = coefficient_pool(ctx.m)
    chosen = rng.sample(monos, min(terms, len(monos)))
    return Polynomial(ctx.nvars, [(m, rng.choice(pool)) for m in chosen])


def random_product_coefficients(ctx: FermatContext, rng: random.Random):
    pool = coefficient_pool(ctx.m)
    return tuple(rng.choice(pool) for _ in range(ctx.n // 2 + 1))


# ---------------------------------------------------------------------------
# Independent exact linear algebra over Q, used as a kernel oracle.
# ---------------------------------------------------------------------------


def frac_matrix_rank(rows: list[list[Fraction]]) -> int:
    """Textbook Gaussian elimination over Fraction, written independently of
    the package's echelon engine."""
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        rows[rank] = [v / pv for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def groebner_pairing_ranks(generators, ctx) -> list[int]:
    """Multiplication pairing ranks of an ideal quotient presented by
    homogeneous generators, via a degree-truncated Groebner basis and normal
    forms.  A route independent of the kernel-based colon machinery."""
    from fermatcalc.idealcalc import buchberger, standard_monomials
    from fermatcalc.multipoly import divide, leading_term, pair_leader_order

    order = pair_leader_order(ctx.nvars)
    gb = buchberger(generators, order, degree_cap=ctx.sigma + 1)
    lts = [leading_term(g, order)[0] for g in gb.basis]
    socle_basis = standard_monomials(lts, ctx.sigma, ctx.nvars)
    assert len(socle_basis) == 1
    socle = socle_basis[0]
    ranks = []
    for i in range(ctx.sigma + 1):
        left = standard_monomials(lts, i, ctx.nvars)
        right = standard_monomials(lts, ctx.sigma - i, ctx.nvars)
        matrix = []
        for u in left:
            row = []
            for v in right:
                product = Polynomial.monomial(ctx.nvars, u) * Polynomial.monomial(ctx.nvars, v)
                _, nf = divide(product, list(gb.basis), order)
                for exps in nf.terms:
                    assert exps == socle
                row.append(nf.coeff(socle))
            matrix.append(row)
        nullity = regular_representation_kernel_dim(matrix, ctx.m) if matrix else 0
        ranks.append(len(right) - nullity if matrix else 0)
    return ranks


def regular_representation_kernel_dim(
    matrix: list[list[CyclotomicNumber]], m: int
) -> int:
    """Nullity of a matrix over Q(zeta_m), computed by expanding every entry
    into its phi(m) x phi(m) rational multiplication block and running plain
    rational elimination.  Returns the nullity over Q(zeta_m)."""
    phi = euler_phi(m)
    basis = [root_of_unity(m, j) for j in range(phi)]
    blocks: list[list[Fraction]] = []
    nrows = len(matrix)
    ncols = len(matrix[0]) if matrix else 0
    for i in range(nrows):
        for r in range(phi):
            row: list[Fraction] = []
            for j in range(ncols):
                entry = matrix[i][j].promote(m)
                for c in range(phi):
                    row.append((entry * basis[c]).coords[r])
            blocks.append(row)
    rank = frac_matrix_rank(blocks) if blocks else 0
    assert rank % phi == 0
    return ncols - rank // phi
