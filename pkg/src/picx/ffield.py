"""Brute-force cohomology and cluster separation over a prime field.

Plane curves of degree d are coefficient vectors over the monomials
``x^i y^j`` (``i + j <= d``) in the affine chart ``z = 1``. Points are random
affine points in general position; a multiplicity ``m`` at ``(a, b)`` is the
vanishing of every Taylor coefficient of order ``< m`` there. All ranks are
computed by elimination mod p.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .hh import predicted_h0
from .lattice import DivisorClass, class_to_json, format_class, pad_to

DEFAULT_PRIME = 32003
DEFAULT_TRIALS = 3
DEFAULT_SAMPLES = 500
CONFIG_STREAM = 2**31 - 1  # rng stream of the base configuration; samples use 0, 1, ...

Point = tuple[int, int]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _check_field(p: int, d: int) -> None:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p <= d:
        raise ValueError(f"need p > d for derivative conditions (p={p}, d={d})")
    if p >= 2**31:
        raise ValueError("prime must be below 2^31 so products fit in 64 bits")


@dataclass(frozen=True)
class PointConfiguration:
    p: int
    points: tuple[Point, ...]
    seed: int

    def homogeneous(self) -> list[tuple[int, int, int]]:
        return [(a, b, 1) for a, b in self.points]


def _collinear(u: Point, v: Point, w: Point, p: int) -> bool:
    det = (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])
    return det % p == 0


def sample_configuration(r: int, p: int, rng: np.random.Generator, seed: int = 0) -> PointConfiguration:
    """r distinct affine points with no three on a line (resampled until so)."""
    while True:
        pts = [tuple(int(c) for c in rng.integers(0, p, size=2)) for _ in range(r)]
        if len(set(pts)) < r:
            continue
        if r >= 3 and any(_collinear(u, v, w, p) for u, v, w in combinations(pts, 3)):
            continue
        return PointConfiguration(p, tuple(pts), seed)


def monomials(d: int) -> list[tuple[int, int]]:
    return [(i, j) for t in range(d + 1) for j in range(t + 1) for i in (t - j,)]


def _powers(x: int, n: int, p: int) -> list[int]:
    out = [1] * (n + 1)
    for e in range(1, n + 1):
        out[e] = out[e - 1] * x % p
    return out


def multiplicity_rows(d: int, point: Point, mult: int, p: int) -> np.ndarray:
    """Rows expressing vanishing to order ``mult`` at ``point``."""
    mons = monomials(d)
    if mult <= 0:
        return np.zeros((0, len(mons)), dtype=np.int64)
    pa, pb = _powers(point[0] % p, d, p), _powers(point[1] % p, d, p)
    rows = []
    for order in range(mult):
        for beta in range(order + 1):
            alpha = order - beta
            row = [0] * len(mons)
            for col, (i, j) in enumerate(mons):
                if i >= alpha and j >= beta:
                    row[col] = comb(i, alpha) * comb(j, beta) % p * pa[i - alpha] % p * pb[j - beta] % p
            rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(mons))


@dataclass
class InterpolationSystem:
    d: int
    mult: tuple[int, ...]
    config: PointConfiguration
    matrix: np.ndarray = field(repr=False)

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]

    def rank(self) -> int:
        if self.matrix.shape[0] == 0:
            return 0
        return kernels.rank_mod_p(self.matrix, self.config.p)

    def kernel_dim(self) -> int:
        return self.cols - self.rank()


def build_system(d: int, mult: Sequence[int], config: PointConfiguration) -> InterpolationSystem:
    if len(mult) > len(config.points):
        raise ValueError("more multiplicities than points")
    cols = (d + 1) * (d + 2) // 2
    blocks = [multiplicity_rows(d, pt, m, config.p) for pt, m in zip(config.points, mult) if m > 0]
    matrix = np.vstack(blocks) if blocks else np.zeros((0, cols), dtype=np.int64)
    return InterpolationSystem(d, tuple(mult), config, matrix)


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return np.random.default_rng([seed, trial])


def actual_h0(
    d: int,
    mult: Sequence[int],
    p: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    threads: int = 1,
) -> int:
    """Dimension of degree-d plane curves with the given multiplicities at
    random points, minimised over ``trials`` configurations."""
    mult = tuple(int(m) for m in mult)
    if any(m < 0 for m in mult):
        raise ValueError("multiplicities must be non-negative")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check_field(p, max(d, 0))
    if d < 0:
        return 0

    def one(t: int) -> int:
        config = sample_configuration(len(mult), p, _trial_rng(seed, t), seed)
        return build_system(d, mult, config).kernel_dim()

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            dims = list(pool.map(one, range(trials)))
    else:
        dims = [one(t) for t in range(trials)]
    return min(dims)


def plane_model(h: DivisorClass) -> tuple[int, tuple[int, ...]]:
    """Degree and fat-point multiplicities computing h0(H).

    A negative entry means E_i is a fixed component and does not change h0,
    so it is replaced by 0.
    """
    return h.d, tuple(max(m, 0) for m in h.m)


def verify_hh_prediction(
    h: DivisorClass,
    p: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    threads: int = 1,
) -> dict:
    d, mult = plane_model(h)
    actual = actual_h0(d, mult, p, trials, seed, threads)
    predicted = predicted_h0(h).h0
    return {
        "class": class_to_json(h),
        "predicted": predicted,
        "actual": actual,
        "agree": predicted == actual,
        "p": p,
        "trials": trials,
        "seed": seed,
    }


# -- linear algebra helpers ------------------------------------------------

def nullspace_mod_p(matrix: np.ndarray, p: int, cols: Optional[int] = None) -> np.ndarray:
    """Basis of the right kernel (rows of the returned array)."""
    a = np.array(matrix, dtype=np.int64) % p
    if a.ndim != 2 or a.shape[0] == 0:
        n = cols if a.ndim != 2 else a.shape[1]
        return np.eye(n, dtype=np.int64)
    rows, n = a.shape
    pivots = []
    rk = 0
    for col in range(n):
        if rk == rows:
            break
        nz = np.nonzero(a[rk:, col])[0]
        if nz.size == 0:
            continue
        piv = rk + int(nz[0])
        if piv != rk:
            a[[rk, piv]] = a[[piv, rk]]
        a[rk] = a[rk] * pow(int(a[rk, col]), p - 2, p) % p
        others = np.nonzero(a[:, col])[0]
        for r in others:
            if r != rk:
                a[r] = (a[r] - a[r, col] * a[rk]) % p
        pivots.append(col)
        rk += 1
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = (-a[i, fc]) % p
    return basis


def det_mod_p(matrix: np.ndarray, p: int) -> int:
    a = np.array(matrix, dtype=np.int64) % p
    n = a.shape[0]
    det = 1
    for col in range(n):
        nz = np.nonzero(a[col:, col])[0]
        if nz.size == 0:
            return 0
        piv = col + int(nz[0])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            det = -det
        pv = int(a[col, col])
        det = det * pv % p
        inv = pow(pv, p - 2, p)
        below = a[col + 1 :, col] * inv % p
        a[col + 1 :] = (a[col + 1 :] - np.outer(below, a[col]) % p) % p
    return det % p


# -- cluster conditions ------------------------------------------------------

def _poly_mul_trunc(u: np.ndarray, v: np.ndarray, k: int, p: int) -> np.ndarray:
    return np.convolve(u, v)[:k] % p


def jet_rows(d: int, point: Point, v: Point, w: Point, coeffs: Sequence[int], k: int, p: int) -> np.ndarray:
    """k conditions: f(gamma(t)) = O(t^k) along
    ``gamma(t) = point + t*v + g(t)*w`` with ``g(t) = sum coeffs[j] t^(j+2)``."""
    g = np.zeros(k, dtype=np.int64)
    for j, c in enumerate(coeffs):
        if j + 2 < k:
            g[j + 2] = c % p
    x = g * w[0] % p
    y = g * w[1] % p
    x[0] = (x[0] + point[0]) % p
    y[0] = (y[0] + point[1]) % p
    if k > 1:
        x[1] = (x[1] + v[0]) % p
        y[1] = (y[1] + v[1]) % p
    xp = [np.eye(1, k, 0, dtype=np.int64)[0]]
    yp = [np.eye(1, k, 0, dtype=np.int64)[0]]
    for _ in range(d):
        xp.append(_poly_mul_trunc(xp[-1], x, k, p))
        yp.append(_poly_mul_trunc(yp[-1], y, k, p))
    mons = monomials(d)
    out = np.zeros((k, len(mons)), dtype=np.int64)
    for col, (i, j) in enumerate(mons):
        out[:, col] = _poly_mul_trunc(xp[i], yp[j], k, p)
    return out


def point_rows(d: int, pts: Sequence[Point], p: int) -> np.ndarray:
    return np.vstack([multiplicity_rows(d, pt, 1, p) for pt in pts])


# -- points of a plane curve through intersection with a random member ------

def _coeff_grid(vec: np.ndarray, d: int) -> np.ndarray:
    grid = np.zeros((d + 1, d + 1), dtype=np.int64)  # grid[j, i]: coefficient of x^i y^j
    for c, (i, j) in zip(vec, monomials(d)):
        grid[j, i] = c
    return grid


def _eval_in_x(grid: np.ndarray, x0: int, p: int) -> np.ndarray:
    """Coefficients in y (ascending) after substituting x = x0."""
    n = grid.shape[1]
    pw = np.array(_powers(x0 % p, n - 1, p), dtype=np.int64)
    return (grid % p * pw % p).sum(axis=1) % p


def _horner_all(coeffs: Sequence[int], xs: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(xs)
    for c in reversed(list(coeffs)):
        acc = (acc * xs + int(c)) % p
    return acc


def _sylvester(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    # f, g ascending coefficients with formal degrees len-1
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    s = np.zeros((size, size), dtype=np.int64)
    fd, gd = f[::-1], g[::-1]
    for i in range(n):
        s[i, i : i + m + 1] = fd
    for i in range(m):
        s[n + i, i : i + n + 1] = gd
    return s


def _interpolate(xs: Sequence[int], ys: Sequence[int], p: int) -> list[int]:
    """Lagrange interpolation mod p; ascending coefficients."""
    n = len(xs)
    coeffs = [0] * n
    for i in range(n):
        num = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            num = [(a - xs[j] * b) % p for a, b in zip([0] + num, num + [0])]
            denom = denom * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(denom, p - 2, p) % p
        for t in range(n):
            coeffs[t] = (coeffs[t] + scale * num[t]) % p
    return coeffs


def common_affine_points(f: np.ndarray, df: int, g: np.ndarray, dg: int, p: int) -> Optional[list[Point]]:
    """All F_p-points of ``f = g = 0`` in the affine chart.

    Uses the resultant in y, found by evaluation and interpolation, to locate
    the possible x values. Returns ``None`` when f and g share a component.
    """
    fg, gg = _coeff_grid(f, df), _coeff_grid(g, dg)
    deg_res = df * dg
    xs = list(range(deg_res + 1))
    vals = [int(det_mod_p(_sylvester(_eval_in_x(fg, x, p), _eval_in_x(gg, x, p)), p)) for x in xs]
    if not any(vals):
        return None
    res = _interpolate(xs, vals, p)
    field_xs = np.arange(p, dtype=np.int64)
    roots = np.nonzero(_horner_all(res, field_xs, p) == 0)[0]
    found: list[Point] = []
    for x0 in roots:
        fy = _eval_in_x(fg, int(x0), p)
        gy = _eval_in_x(gg, int(x0), p)
        if not fy.any() and not gy.any():
            return None
        ys = field_xs[_horner_all(fy, field_xs, p) == 0]
        if ys.size:
            ys = ys[_horner_all(gy, ys, p) == 0]
        found.extend((int(x0), int(y0)) for y0 in ys)
    return found


def _poly_eval(vec: np.ndarray, d: int, pt: Point, p: int) -> int:
    row = multiplicity_rows(d, pt, 1, p)[0]
    return int(row @ (vec % p) % p)


# -- sampling --------------------------------------------------------------

@dataclass(frozen=True)
class ClusterSample:
    index: int
    species: str
    separated: Optional[bool]  # None: the draw produced no cluster
    detail: dict

    def to_json(self) -> dict:
        return {"index": self.index, "species": self.species, "separated": self.separated, "detail": self.detail}


def _random_point(rng: np.random.Generator, p: int, avoid: set) -> Point:
    while True:
        pt = (int(rng.integers(0, p)), int(rng.integers(0, p)))
        if pt not in avoid:
            return pt


def _random_frame(rng: np.random.Generator, p: int) -> tuple[Point, Point]:
    while True:
        v = (int(rng.integers(0, p)), int(rng.integers(0, p)))
        w = (int(rng.integers(0, p)), int(rng.integers(0, p)))
        if (v[0] * w[1] - v[1] * w[0]) % p:
            return v, w


def sample_cluster_separation(
    h: DivisorClass,
    k: int,
    p: int = DEFAULT_PRIME,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    curves: Sequence[DivisorClass] = (),
    stop_at_failure: bool = True,
) -> dict:
    """Sample k-clusters and test whether they impose k conditions on |H|.

    Species, drawn in turn: ``points`` (k random points), ``curvilinear``
    (a k-jet along a random smooth germ) and, for each class in ``curves``,
    ``on-curve`` clusters made of points of that curve where a random member
    of |H| meets it away from the assigned points. The last species is how
    base loci supported on a single curve can be hit at all, since uniform
    points avoid them with probability about 1 - 1/p.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    d, mult = plane_model(h)
    _check_field(p, max(d, 0))
    if samples < 0:
        raise ValueError("samples must be non-negative")
    rank_r = max([h.r] + [c.r for c in curves])
    curve_list = [pad_to(c, rank_r) for c in curves]
    mult = mult + (0,) * (rank_r - h.r)
    config = sample_configuration(rank_r, p, _trial_rng(seed, CONFIG_STREAM), seed)
    system = build_system(d, mult, config)
    base_rank = system.rank()
    h0 = system.cols - base_rank
    assigned = set(config.points)

    species = ["points", "curvilinear"] + [f"on-curve:{format_class(c)}" for c in curve_list]
    curve_polys = []
    for c in curve_list:
        cd, cm = plane_model(c)
        csys = build_system(cd, cm, config)
        basis = nullspace_mod_p(csys.matrix, p, csys.cols)
        if basis.shape[0] != 1:
            raise ValueError(f"curve {c} does not have a unique plane model (h0={basis.shape[0]})")
        curve_polys.append((cd, basis[0]))
    h_basis = nullspace_mod_p(system.matrix, p, system.cols) if curve_list else None

    results: list[ClusterSample] = []
    counts = {s: 0 for s in species}
    failure: Optional[ClusterSample] = None
    for idx in range(samples):
        kind = species[idx % len(species)]
        rng = _trial_rng(seed, idx)
        rows, detail = None, {}
        if kind == "points":
            pts: list[Point] = []
            while len(pts) < k:
                pt = _random_point(rng, p, assigned | set(pts))
                pts.append(pt)
            rows = point_rows(d, pts, p)
            detail = {"points": [list(q) for q in pts]}
        elif kind == "curvilinear":
            pt = _random_point(rng, p, assigned)
            v, w = _random_frame(rng, p)
            coeffs = [int(c) for c in rng.integers(0, p, size=max(k - 2, 0))]
            rows = jet_rows(d, pt, v, w, coeffs, k, p)
            detail = {"point": list(pt), "tangent": list(v), "normal": list(w), "coefficients": coeffs}
        else:
            cd, fvec = curve_polys[species.index(kind) - 2]
            if h_basis is None or h_basis.shape[0] == 0:
                results.append(ClusterSample(idx, kind, None, {"reason": "|H| is empty"}))
                continue
            gvec = (rng.integers(0, p, size=h_basis.shape[0]) @ h_basis) % p
            meet = common_affine_points(fvec, cd, gvec, d, p)
            if meet is None:
                results.append(ClusterSample(idx, kind, None, {"reason": "common component"}))
                continue
            residual = sorted(q for q in set(meet) if q not in assigned)
            if len(residual) < k:
                results.append(ClusterSample(idx, kind, None, {"reason": "too few residual points"}))
                continue
            chosen = sorted(residual[int(i)] for i in rng.choice(len(residual), size=k, replace=False))
            assert all(_poly_eval(fvec, cd, q, p) == 0 for q in chosen)
            rows = point_rows(d, chosen, p)
            detail = {"points": [list(q) for q in chosen]}
        counts[kind] += 1
        stacked = np.vstack([system.matrix, rows]) if system.matrix.shape[0] else rows
        gained = kernels.rank_mod_p(stacked, p) - base_rank
        sample = ClusterSample(idx, kind, gained == k, detail)
        results.append(sample)
        if gained != k and failure is None:
            failure = sample
            if stop_at_failure:
                break

    return {
        "class": class_to_json(h),
        "k": k,
        "p": p,
        "samples": samples,
        "seed": seed,
        "curves": [class_to_json(c) for c in curve_list],
        "h0": h0,
        "points": [list(q) for q in config.points],
        "drawn": len(results),
        "clusters": counts,
        "verdict": "no failure observed" if failure is None else "failure",
        "witness": None if failure is None else failure.to_json(),
    }
