"""Bounded-face census of the Gale-dual affine hyperplane arrangement.

The census walks supports (independent subsets of normals), counts bounded
open cells of the arrangement induced on each support's intersection, and
tallies them by dimension.  All feasibility and boundedness questions are
settled with integer Fourier-Motzkin elimination -- no floating point, so the
counts are exact and reproducible.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd

from .errors import DegenerateNormal, NotSimple
from .exact import PoincarePoly, RatMatrix, nullspace, rank, solve_exact
from .torus import TorusSetup, _dependent_witness, gale_of


# ---------------------------------------------------------------------------
# Integer linear constraints: (coeffs, const, strict) means
# coeffs . y + const > 0 when strict, >= 0 otherwise.
# ---------------------------------------------------------------------------


def _normalize(coeffs, const, strict):
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    g = gcd(g, abs(const))
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        const //= g
    return (tuple(coeffs), const, strict)


def _const_violated(const, strict) -> bool:
    return const < 0 or (const == 0 and strict)


def fm_feasible(constraints, nvars) -> bool:
    """Exact feasibility of a strict/weak inequality system by elimination."""
    live = set()
    for coeffs, const, strict in constraints:
        if any(coeffs):
            live.add(_normalize(coeffs, const, strict))
        elif _const_violated(const, strict):
            return False
    remaining = list(range(nvars))
    while live:
        assert remaining, "constraint survived all eliminations"
        best_var, best_cost = None, None
        for v in remaining:
            pos = sum(1 for c in live if c[0][v] > 0)
            neg = sum(1 for c in live if c[0][v] < 0)
            cost = pos * neg
            if cost == 0 and (pos or neg):
                best_var, best_cost = v, 0
                break
            if (pos or neg) and (best_cost is None or cost < best_cost):
                best_var, best_cost = v, cost
        if best_var is None:  # no live constraint mentions a remaining var
            break
        v = best_var
        lows, ups, keep = [], [], set()
        for c in live:
            cv = c[0][v]
            if cv > 0:
                lows.append(c)
            elif cv < 0:
                ups.append(c)
            else:
                keep.add(c)
        for ac, a0, astrict in lows:
            av = ac[v]
            for bc, b0, bstrict in ups:
                bv = -bc[v]
                coeffs = tuple(bv * x + av * y for x, y in zip(ac, bc))
                const = bv * a0 + av * b0
                strict = astrict or bstrict
                if any(coeffs):
                    keep.add(_normalize(coeffs, const, strict))
                elif _const_violated(const, strict):
                    return False
        live = keep
        remaining.remove(v)
    return True


def cone_is_pointed(rows, k) -> bool:
    """Whether {v : r . v >= 0 for every row} contains only the origin.

    With full-rank rows this reduces to finding strictly positive multipliers
    summing the rows to zero (scaled so every multiplier is at least one).
    """
    rows = [tuple(r) for r in rows]
    if not rows or rank(RatMatrix(rows)) < k:
        return k == 0
    m = len(rows)
    cons = []
    for c in range(k):
        coeffs = tuple(rows[j][c] for j in range(m))
        cons.append((coeffs, 0, False))
        cons.append((tuple(-x for x in coeffs), 0, False))
    for j in range(m):
        unit = tuple(int(i == j) for i in range(m))
        cons.append((unit, -1, False))
    return fm_feasible(cons, m)


# ---------------------------------------------------------------------------
# Census
# ---------------------------------------------------------------------------


def _int_hyperplane(coeffs_q, const_q):
    """Clear denominators of a rational hyperplane a . y = b."""
    lcm = 1
    for x in list(coeffs_q) + [const_q]:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return tuple(int(x * lcm) for x in coeffs_q), int(const_q * lcm)


def bounded_regions(hyperplanes, k) -> int:
    """Bounded open cells cut out of R^k by integer hyperplanes a . y = b.

    Sign vectors are grown one hyperplane at a time, discarding infeasible
    prefixes, and each surviving cell is tested for a pointed recession cone.
    """
    if k == 0:
        return 1
    cells = [()]
    for a, b in hyperplanes:
        grown = []
        for cell in cells:
            for sgn in (1, -1):
                con = (tuple(sgn * x for x in a), -sgn * b, True)
                cand = cell + (con,)
                if fm_feasible(cand, k):
                    grown.append(cand)
        cells = grown
    count = 0
    for cell in cells:
        if cone_is_pointed([c[0] for c in cell], k):
            count += 1
    return count


def face_census(setup: TorusSetup) -> tuple:
    """Bounded face counts (d_0, ..., d_m) of the dual arrangement.

    Requires a simple arrangement; coincidences raise NotSimple and a
    hyperplane degenerating to the whole space raises DegenerateNormal.
    """
    gale = gale_of(setup)
    m = setup.ambient_dim
    n = setup.n
    normals = gale.normals
    offsets = gale.offsets
    if m == 0:
        if any(off == 0 for off in offsets):
            raise DegenerateNormal(
                "empty normal with zero offset: hyperplane fills the space")
        return (1,)
    for j in range(n):
        if not any(normals[j]) and offsets[j] == 0:
            raise DegenerateNormal(
                f"normal {j + 1} vanishes with zero offset")
    witness = _dependent_witness(normals, offsets, m + 1)
    if witness is not None:
        raise NotSimple(
            f"hyperplanes {tuple(i + 1 for i in witness)} meet non-simply")

    counts = [0] * (m + 1)
    for size in range(m + 1):
        k = m - size
        for support in combinations(range(n), size):
            if size:
                mat = RatMatrix([normals[i] for i in support])
                if rank(mat) < size:
                    continue
                point = solve_exact(mat, [offsets[i] for i in support])
                dirs = nullspace(mat)
                basis = [dirs.col(c) for c in range(dirs.ncols)]
            else:
                point = tuple(0 for _ in range(m))
                basis = [tuple(int(i == j) for i in range(m)) for j in range(m)]
            induced = []
            for j in range(n):
                if j in support:
                    continue
                a = tuple(
                    sum(normals[j][i] * col[i] for i in range(m))
                    for col in basis
                )
                b = offsets[j] - sum(normals[j][i] * point[i] for i in range(m))
                if not any(a):
                    if b == 0:
                        raise NotSimple(
                            f"hyperplane {j + 1} contains the span of "
                            f"{tuple(i + 1 for i in support)}")
                    continue
                induced.append(_int_hyperplane(a, b))
            counts[k] += bounded_regions(induced, k)
    return tuple(counts)


def census_poincare(counts) -> PoincarePoly:
    """Poincare polynomial from bounded face counts: sum d_k (q - 1)^k."""
    q_minus_1 = PoincarePoly((-1, 1))
    total = PoincarePoly.zero()
    for k, c in enumerate(counts):
        total = total + PoincarePoly((c,)) * q_minus_1 ** k
    return total


def modification_census(setup: TorusSetup, circle, seed: int = 0):
    """Face censuses of a setup and its two circle modifications.

    Returns (base_counts, enlarged_counts, extended_counts, ok) where ok
    records whether every extended count equals the base count plus the
    enlarged count at the same and the previous dimension.  The base
    census uses the levels carried by ``setup``; the modified setups get
    sampled generic levels derived from ``seed``.
    """
    from .torus import modify

    pair = modify(setup, circle, seed=seed)
    base_counts = face_census(setup)
    enlarged_counts = face_census(pair.enlarged)
    extended_counts = face_census(pair.extended)

    def at(counts, k):
        return counts[k] if 0 <= k < len(counts) else 0

    top = max(len(extended_counts), len(base_counts), len(enlarged_counts) + 1)
    ok = all(
        at(extended_counts, k) == at(base_counts, k) + at(enlarged_counts, k)
        + at(enlarged_counts, k - 1)
        for k in range(top)
    )
    return base_counts, enlarged_counts, extended_counts, ok
