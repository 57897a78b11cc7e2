"""Subtorus data: weights, induced metric, Gale duals, genericity, modification.

A setup is an integer N x d weight matrix B of full column rank together with
a real level alpha (d rationals) and a complex level beta (d exact complex
numbers).  Row j of B is the weight of the j-th coordinate of C^N under the
d-torus.  The dual pairing used throughout is <a, b> = a^T (B^T B)^{-1} b.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import flats
from .errors import (
    CircleInsideTorus,
    DimensionMismatch,
    InputError,
    NonGenericAlpha,
    NonGenericBeta,
    RankDeficient,
    SamplingExhausted,
)
from .exact import (
    CRat,
    RatMatrix,
    as_rat,
    inverse,
    nullspace,
    rank,
    saturate_rowspace,
    solve_exact,
)


@dataclass(frozen=True)
class TorusSetup:
    weights: tuple  # N rows, each a tuple of d ints
    alpha: tuple    # d Fractions
    beta: tuple     # d CRats

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def dim(self) -> int:
        return len(self.alpha)

    @property
    def ambient_dim(self) -> int:
        """Dimension of the Gale-dual affine arrangement."""
        return self.n - self.dim


def _as_crat(value) -> CRat:
    """Coerce a complex level entry: CRat, (re, im) pair, or a real."""
    if isinstance(value, CRat):
        return value
    if isinstance(value, (tuple, list)):
        if len(value) != 2:
            raise DimensionMismatch(
                "a complex level entry given as a pair needs exactly two parts")
        return CRat(as_rat(value[0]), as_rat(value[1]))
    return CRat(as_rat(value))


def new_setup(weights, alpha=None, beta=None) -> TorusSetup:
    rows = []
    width = None
    for row in weights:
        r = tuple(row)
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"weight entries must be integers, got {x!r}")
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise DimensionMismatch("weight rows have inconsistent lengths")
        rows.append(r)
    rows = tuple(rows)
    d = width if width is not None else (len(alpha) if alpha is not None else 0)

    if alpha is None:
        alpha_t = tuple(Fraction(0) for _ in range(d))
    else:
        alpha_t = tuple(as_rat(a) for a in alpha)
        if len(alpha_t) != d:
            raise DimensionMismatch(
                f"alpha has {len(alpha_t)} entries, weights have {d} columns")

    if beta is None:
        beta_t = tuple(CRat() for _ in range(d))
    else:
        beta_t = tuple(_as_crat(b) for b in beta)
        if len(beta_t) != d:
            raise DimensionMismatch(
                f"beta has {len(beta_t)} entries, weights have {d} columns")

    if d > 0 and rank(RatMatrix(rows)) != d:
        raise RankDeficient(f"weight matrix does not have full column rank {d}")
    return TorusSetup(rows, alpha_t, beta_t)


# ---------------------------------------------------------------------------
# Metric and Gale duality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Metric:
    gram: RatMatrix      # B^T B
    gram_inv: RatMatrix


@lru_cache(maxsize=None)
def metric_of(weights) -> Metric:
    if not weights or not weights[0]:
        empty = RatMatrix([])
        return Metric(empty, empty)
    b = RatMatrix(weights)
    g = b.transpose() @ b
    return Metric(g, inverse(g))


@dataclass(frozen=True)
class GaleData:
    """Kernel matrix C (rows) with C B = 0, plus arrangement offsets.

    Hyperplane j of the dual arrangement is {y : <normal_j, y> = offset_j},
    where normal_j is column j of C.  Offsets solve B^T offsets = alpha; the
    choice of solution only translates the arrangement.
    """

    cmatrix: tuple  # (N - d) integer rows of length N
    normals: tuple  # N columns, each a tuple of (N - d) ints
    offsets: tuple  # N rationals


@lru_cache(maxsize=None)
def _gale(weights, alpha) -> GaleData:
    n = len(weights)
    d = len(alpha)
    if d == 0:
        cmatrix = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        normals = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
        return GaleData(cmatrix, normals, tuple(Fraction(0) for _ in range(n)))
    bt = RatMatrix(list(zip(*weights)))  # d x N
    if n == d:
        cmatrix = ()
        normals = tuple(() for _ in range(n))
    else:
        ker_cols = nullspace(bt)  # N x (N - d)
        cmatrix = tuple(
            tuple(int(ker_cols.rows[i][k]) for i in range(n))
            for k in range(ker_cols.ncols)
        )
        normals = tuple(
            tuple(row[j] for row in cmatrix) for j in range(n)
        )
    offsets = solve_exact(bt, alpha)
    if offsets is None:  # full column rank makes this impossible
        raise RankDeficient("offset system unexpectedly inconsistent")
    return GaleData(cmatrix, normals, offsets)


def gale_of(setup: TorusSetup) -> GaleData:
    return _gale(setup.weights, setup.alpha)


def pairing(metric: Metric, a, b) -> Fraction:
    """Dual-space inner product a^T G^{-1} b of two real covectors."""
    gi = metric.gram_inv.rows
    total = Fraction(0)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        total += ai * sum(gi[i][j] * b[j] for j in range(len(b)) if b[j] != 0)
    return total


def perp_part(metric: Metric, weights, subset, vec):
    """Component of a real covector orthogonal to span{rows in subset}."""
    vec = tuple(as_rat(v) for v in vec)
    if not subset or not vec:
        return vec
    u = RatMatrix([weights[j] for j in subset])
    ug = u @ metric.gram_inv
    gram_sub = ug @ u.transpose()
    rhs = [sum(row[j] * vec[j] for j in range(len(vec))) for row in ug.rows]
    coeffs = solve_exact(gram_sub, rhs)
    proj = [Fraction(0)] * len(vec)
    for c, row in zip(coeffs, u.rows):
        if c != 0:
            for j, x in enumerate(row):
                proj[j] += c * x
    return tuple(v - p for v, p in zip(vec, proj))


def perp_part_complex(metric: Metric, weights, subset, cvec):
    re = perp_part(metric, weights, subset, tuple(z.re for z in cvec))
    im = perp_part(metric, weights, subset, tuple(z.im for z in cvec))
    return tuple(CRat(r, i) for r, i in zip(re, im))


def norm2_dual(metric: Metric, cvec) -> Fraction:
    """Squared length of a complex covector in the dual metric."""
    re = tuple(z.re for z in cvec)
    im = tuple(z.im for z in cvec)
    return pairing(metric, re, re) + pairing(metric, im, im)


def residual_beta(setup: TorusSetup, subset):
    """beta minus its projection onto the span of the subset rows."""
    return perp_part_complex(metric_of(setup.weights), setup.weights,
                             subset, setup.beta)


def residual_alpha(setup: TorusSetup, subset):
    return perp_part(metric_of(setup.weights), setup.weights,
                     subset, setup.alpha)


def critical_level(setup: TorusSetup, subset) -> Fraction:
    """Exact value |beta_perp|^2 attached to a flat."""
    return norm2_dual(metric_of(setup.weights), residual_beta(setup, subset))


# ---------------------------------------------------------------------------
# Restriction to a flat
# ---------------------------------------------------------------------------


def restrict_weights(weights, subset) -> tuple:
    """Weights of the sub-configuration on subset, written in a basis of the
    saturated lattice spanned by those rows (so the result is integral)."""
    rows = [weights[j] for j in subset]
    if not rows or all(not any(r) for r in rows):
        return tuple(() for _ in rows)
    basis = saturate_rowspace(RatMatrix(rows))  # r independent integer rows
    bt = RatMatrix(list(zip(*basis)))  # d x r
    out = []
    for row in rows:
        sol = solve_exact(bt, row)
        assert sol is not None
        assert all(s.denominator == 1 for s in sol), "saturation basis not integral"
        out.append(tuple(int(s) for s in sol))
    return tuple(out)


# ---------------------------------------------------------------------------
# Genericity
# ---------------------------------------------------------------------------


def beta_witness(setup: TorusSetup):
    """First failing condition for beta-genericity, or None.

    Conditions over flats J: (i) the residuals beta_J are pairwise distinct,
    (ii) <beta_J, u_i> != 0 for every row i outside J, (iii) the levels
    |beta_J|^2 are pairwise distinct.
    """
    metric = metric_of(setup.weights)
    all_flats = flats.enumerate_flats(setup.weights)
    residuals = {}
    levels = {}
    for f in all_flats:
        res = residual_beta(setup, f)
        residuals[f] = res
        levels[f] = norm2_dual(metric, res)
        for i in range(setup.n):
            if i in f:
                continue
            re_pair = pairing(metric, tuple(z.re for z in res), setup.weights[i])
            im_pair = pairing(metric, tuple(z.im for z in res), setup.weights[i])
            if re_pair == 0 and im_pair == 0:
                return ("pairing", f, i)
    flat_list = list(all_flats)
    for a in range(len(flat_list)):
        for b in range(a + 1, len(flat_list)):
            fa, fb = flat_list[a], flat_list[b]
            if residuals[fa] == residuals[fb]:
                return ("residual_collision", fa, fb)
            if levels[fa] == levels[fb]:
                return ("level_collision", fa, fb)
    return None


def is_generic_beta(setup: TorusSetup) -> bool:
    return beta_witness(setup) is None


def require_generic_beta(setup: TorusSetup) -> None:
    w = beta_witness(setup)
    if w is not None:
        raise NonGenericBeta(w)


def _affine_consistent(normal_rows, rhs) -> bool:
    """Whether {y : <n_i, y> = rhs_i} has a common solution."""
    if not normal_rows:
        return True
    width = len(normal_rows[0])
    if width == 0:
        return all(r == 0 for r in rhs)
    return solve_exact(RatMatrix(normal_rows), rhs) is not None


def alpha_witness(setup: TorusSetup):
    """First failing condition for alpha-genericity, or None.

    Conditions: <alpha_J, u_i> != 0 for every proper flat J and row i outside
    it, and the Gale-dual arrangement is simple (no dependent set of normals
    meets in a common point, including vanishing normals with zero offset).
    """
    metric = metric_of(setup.weights)
    for f in flats.proper_flats(setup.weights):
        res = residual_alpha(setup, f)
        for i in range(setup.n):
            if i in f:
                continue
            if pairing(metric, res, setup.weights[i]) == 0:
                return ("pairing", f, i)
    gale = gale_of(setup)
    m = setup.ambient_dim
    bad = _dependent_witness(gale.normals, gale.offsets, m + 1)
    if bad is not None:
        return ("not_simple", bad)
    return None


def _dependent_witness(normals, offsets, max_size):
    """Smallest dependent subset of hyperplanes with a common point, if any.

    A non-simple coincidence of any size contains a dependent consistent
    circuit of size at most ambient_dim + 1, so the bounded search is enough.
    """
    from itertools import combinations
    n = len(normals)
    for size in range(1, min(n, max_size) + 1):
        for subset in combinations(range(n), size):
            sub = [list(normals[i]) for i in subset]
            width = len(sub[0]) if sub else 0
            if width and rank(RatMatrix(sub)) == size:
                continue
            rhs = [offsets[i] for i in subset]
            if _affine_consistent(sub, rhs):
                return subset
    return None


def is_generic_alpha(setup: TorusSetup) -> bool:
    return alpha_witness(setup) is None


def require_generic_alpha(setup: TorusSetup) -> None:
    w = alpha_witness(setup)
    if w is not None:
        raise NonGenericAlpha(w)


# ---------------------------------------------------------------------------
# Parameter sampling
# ---------------------------------------------------------------------------

_SAMPLE_ROUNDS = 8
_TRIES_PER_ROUND = 64


def sample_generic(weights, seed: int, alpha=None, beta=None) -> TorusSetup:
    """Deterministically sample generic levels for the given weights.

    Draws integer vectors from boxes [-s, s] with s doubling from 3; either
    level can instead be pinned by passing it explicitly.
    """
    base = new_setup(weights)
    d = base.dim
    rng = random.Random(seed)

    def draw(size):
        return tuple(rng.randint(-size, size) for _ in range(d))

    alpha_t = None if alpha is None else tuple(as_rat(a) for a in alpha)
    beta_t = None
    if beta is not None:
        beta_t = tuple(
            b if isinstance(b, CRat) else CRat(as_rat(b[0]), as_rat(b[1]))
            for b in beta
        )

    if alpha_t is None:
        size = 3
        for round_no in range(_SAMPLE_ROUNDS):
            for _ in range(_TRIES_PER_ROUND):
                cand = new_setup(weights, draw(size))
                if is_generic_alpha(cand):
                    alpha_t = cand.alpha
                    break
            if alpha_t is not None:
                break
            size *= 2
        if alpha_t is None:
            raise SamplingExhausted("no generic alpha found")
    else:
        require_generic_alpha(new_setup(weights, alpha_t))

    if beta_t is None:
        size = 3
        for round_no in range(_SAMPLE_ROUNDS):
            for _ in range(_TRIES_PER_ROUND):
                cand_beta = tuple(
                    CRat(Fraction(rng.randint(-size, size)),
                         Fraction(rng.randint(-size, size)))
                    for _ in range(d)
                )
                cand = new_setup(weights, alpha_t, cand_beta)
                if is_generic_beta(cand):
                    beta_t = cand_beta
                    break
            if beta_t is not None:
                break
            size *= 2
        if beta_t is None:
            raise SamplingExhausted("no generic beta found")
    else:
        require_generic_beta(new_setup(weights, alpha_t, beta_t))

    return new_setup(weights, alpha_t, beta_t)


def derived_seed(tag: str, *parts) -> int:
    """Stable small seed derived from a tag and hashable arguments."""
    text = tag + "|" + "|".join(repr(p) for p in parts)
    return zlib.crc32(text.encode("utf-8"))


# ---------------------------------------------------------------------------
# Modification along a new circle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModificationPair:
    base: TorusSetup
    circle: tuple
    enlarged: TorusSetup   # same coordinates, torus grown by the circle
    extended: TorusSetup   # one extra coordinate carrying the inverse circle


def enlarged_weights(weights, circle) -> tuple:
    return tuple(row + (c,) for row, c in zip(weights, circle))


def extended_weights(weights, circle) -> tuple:
    d = len(weights[0]) if weights else 0
    new_rows = enlarged_weights(weights, circle)
    return new_rows + ((0,) * d + (-1,),)


def require_new_circle(weights, circle) -> tuple:
    """Validate a circle column against the weights; return it as a tuple.

    The circle must act non-trivially on the quotient: if it already lies in
    the rational column span of the weights the construction degenerates.
    """
    weights = tuple(tuple(r) for r in weights)
    circle = tuple(circle)
    for x in circle:
        if not isinstance(x, int) or isinstance(x, bool):
            raise InputError("circle weights must be integers")
    if len(circle) != len(weights):
        raise DimensionMismatch(
            f"circle has {len(circle)} entries, weights have {len(weights)} rows")
    d = len(weights[0]) if weights else 0
    wide = enlarged_weights(weights, circle)
    if weights and rank(RatMatrix(wide)) != d + 1:
        raise CircleInsideTorus(
            "circle weight column lies in the span of the existing weights")
    return circle


def modify(setup: TorusSetup, circle, seed: int = 0) -> ModificationPair:
    """Grow the torus by an integer circle weight column.

    Fresh generic levels for the two derived setups are sampled from seeds
    derived deterministically from (weights, circle, seed).
    """
    circle = require_new_circle(setup.weights, circle)
    wide = enlarged_weights(setup.weights, circle)
    hat = sample_generic(wide, derived_seed("enlarged", setup.weights, circle, seed))
    tilde = sample_generic(extended_weights(setup.weights, circle),
                           derived_seed("extended", setup.weights, circle, seed))
    return ModificationPair(setup, circle, hat, tilde)
