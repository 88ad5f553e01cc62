"""Least-squares engine.

Weighted linear Gauss-Markov solve with variance factor and covariances,
triangle adjustment in the workbook's normalized units, direction-set
adjustment (parametric and condition formulations), leveling networks with
distance weights, generic Newton and Gauss-Newton, and the Bursa-Wolf
seven-parameter datum fit.

Convention: the observation system is A X = L + V, so V = A X - L and
A' P V = 0 at the solution.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

DCGR_PER_RAD = 2000.0 / math.pi   # the workbook's normalized angle unit (0.1 gr)


class SingularNormalMatrixError(np.linalg.LinAlgError):
    def __init__(self, msg, null_space=None):
        super().__init__(msg)
        self.null_space = null_space


class SingularHessianError(RuntimeError):
    def __init__(self, msg, x=None, gradient=None, hessian=None):
        super().__init__(msg)
        self.x = x
        self.gradient = gradient
        self.hessian = hessian


class IndefiniteHessianWarning(UserWarning):
    pass


class IllConditionedWarning(UserWarning):
    pass


class DisconnectedNetworkError(ValueError):
    pass


class NonConvergenceError(RuntimeError):
    pass


def _weight_matrix(P, n):
    P = np.asarray(P, dtype=float)
    if P.ndim == 1:
        if len(P) != n:
            raise ValueError(f"diagonal weight length {len(P)} != {n}")
        if np.any(P <= 0):
            raise ValueError("weights must be positive")
        return np.diag(P)
    if P.shape != (n, n):
        raise ValueError(f"weight matrix shape {P.shape} != ({n},{n})")
    if not np.allclose(P, P.T, rtol=1e-10, atol=0):
        raise ValueError("weight matrix must be symmetric")
    eig = np.linalg.eigvalsh(P)
    if eig[0] <= 0:
        raise ValueError("weight matrix must be positive definite")
    return P


@dataclass(frozen=True)
class LinearModel:
    """Weighted observation system A X = L + V with weights P (full or diagonal)."""
    A: np.ndarray
    L: np.ndarray
    P: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        L = np.asarray(self.L, dtype=float)
        n, u = A.shape
        if n <= u:
            raise ValueError(f"need redundancy: n = {n} observations for u = {u} unknowns")
        if L.shape != (n,):
            raise ValueError(f"observation vector shape {L.shape} != ({n},)")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "P", _weight_matrix(self.P, n))


@dataclass(frozen=True)
class AdjustmentResult:
    X: np.ndarray          # estimates (u,)
    V: np.ndarray          # residuals A X - L (n,)
    N: np.ndarray          # normal matrix A' P A
    s2: float              # variance factor V' P V / (n - u)
    cov: np.ndarray        # covariance of X: s2 N^-1
    dof: int

    @property
    def sigmas(self) -> np.ndarray:
        return np.sqrt(np.diag(self.cov))


def solve_wls(model: LinearModel) -> AdjustmentResult:
    """Weighted least squares through the normal equations.

    Solved by Cholesky on N = A' P A; a rank check (pivot threshold
    1e-12 of the largest) reports the near-null direction on failure, and a
    condition number above 1e12 only warns.
    """
    A, L, P = model.A, model.L, model.P
    n, u = A.shape
    N = A.T @ P @ A
    # column equilibration decouples unit choices (metres next to radians in
    # a datum fit) from the genuine rank and conditioning of the system
    d = np.sqrt(np.diag(N))
    if np.any(d <= 0):
        raise SingularNormalMatrixError(
            "zero design column", null_space=np.eye(u)[int(np.argmin(d))])
    D_inv = 1.0 / d
    Ns = N * np.outer(D_inv, D_inv)
    eigvals, eigvecs = np.linalg.eigh(Ns)
    # pivot threshold 1e-12 on the scaled design translates to 1e-24 on its
    # normal eigenvalues
    if eigvals[0] <= 1e-24 * eigvals[-1]:
        raise SingularNormalMatrixError(
            f"design matrix rank-deficient (scaled normal eigenvalue ratio "
            f"{eigvals[0] / eigvals[-1]:.2e}); null-space hint attached",
            null_space=eigvecs[:, 0] * D_inv / np.linalg.norm(eigvecs[:, 0] * D_inv))
    if eigvals[-1] / eigvals[0] > 1e12:
        warnings.warn(f"normal matrix condition {eigvals[-1] / eigvals[0]:.2e} above 1e12",
                      IllConditionedWarning, stacklevel=2)
    c = np.linalg.cholesky(Ns)
    ts = (A.T @ P @ L) * D_inv
    Xs = np.linalg.solve(c.T, np.linalg.solve(c, ts))
    X = Xs * D_inv
    V = A @ X - L
    dof = n - u
    s2 = float(V @ P @ V) / dof
    Ninv_s = np.linalg.solve(c.T, np.linalg.solve(c, np.eye(u)))
    Ninv = Ninv_s * np.outer(D_inv, D_inv)
    return AdjustmentResult(X=X, V=V, N=N, s2=s2, cov=s2 * Ninv, dof=dof)


# -- triangle adjustment ------------------------------------------------------------

@dataclass(frozen=True)
class TriangleAdjustment:
    sides: np.ndarray        # adjusted a, b, c (same length unit as input)
    angles: np.ndarray       # adjusted A, B, C (rad), from the adjusted sides
    result: AdjustmentResult   # in normalized units (0.1 length-unit, dcgr)
    cov_sides: np.ndarray    # covariance of the adjusted sides (length-unit^2)
    cov_angles: np.ndarray   # covariance of the adjusted angles (rad^2)
    iterations: int


def _angle_opposite(x, y, z):
    return math.acos((y * y + z * z - x * x) / (2.0 * y * z))


def triangle_angle_row(x0, y0, z0, ang_obs):
    """Linearized row of Arccos((y^2+z^2-x^2)/(2yz)) = angle in normalized
    units (unknown side increments in tenths of the length unit, the
    equation in dcgr), with the observed angle in the trigonometric factors
    as the workbook linearizes it. Returns (d/dx, d/dy, d/dz, rhs)."""
    s = math.sin(ang_obs)
    dx = (1.0 / s) * x0 / (y0 * z0) * DCGR_PER_RAD * 0.1
    dy = -(1.0 / s) * (x0 * x0 + y0 * y0 - z0 * z0) / (2 * y0 * y0 * z0) * DCGR_PER_RAD * 0.1
    dz = -(1.0 / s) * (x0 * x0 + z0 * z0 - y0 * y0) / (2 * y0 * z0 * z0) * DCGR_PER_RAD * 0.1
    k = ((y0 * y0 + z0 * z0 - x0 * x0 - 2 * y0 * z0 * math.cos(ang_obs))
         / (2 * y0 * z0 * s))
    return dx, dy, dz, k * DCGR_PER_RAD


def triangle_system(sides0, obs_sides, obs_angles):
    """Side-angle observation system around approximate sides sides0.

    One identity row per observed side (None marks an unobserved one), then
    the three cosine-law angle rows. The workbook's Probleme-5 matrices are
    exactly this system for sides (a, b) observed.
    """
    a0, b0, c0 = sides0
    ra = triangle_angle_row(a0, b0, c0, obs_angles[0])
    rb = triangle_angle_row(b0, c0, a0, obs_angles[1])
    rc = triangle_angle_row(c0, a0, b0, obs_angles[2])
    rows, rhs = [], []
    for j, s_obs in enumerate(obs_sides):
        if s_obs is None:
            continue
        row = [0.0, 0.0, 0.0]
        row[j] = 1.0
        rows.append(row)
        rhs.append((s_obs - sides0[j]) * 10.0)
    rows += [[ra[0], ra[1], ra[2]],
             [rb[2], rb[0], rb[1]],
             [rc[1], rc[2], rc[0]]]
    rhs += [ra[3], rb[3], rc[3]]
    return np.array(rows), np.array(rhs)


def adjust_triangle(obs_angles: Sequence[float], sigma_angles: Sequence[float],
                    obs_sides: Sequence, sigma_sides: Sequence,
                    tol: float = 1e-10, max_iter: int = 20) -> TriangleAdjustment:
    """Compensate a plane triangle from observed angles and sides.

    Unknowns are the three sides; angle observations enter through the
    cosine-law equations; an unobserved side is passed as None. Works in
    the workbook's normalized units (tenths of the length unit, dcgr for
    angles); weights are the inverse squared sigmas in those units.
    """
    obs_angles = np.asarray(obs_angles, dtype=float)
    w_sides = [1.0 / (10.0 * s) ** 2 for s, o in zip(sigma_sides, obs_sides)
               if o is not None]
    w_angles = [1.0 / (s * DCGR_PER_RAD) ** 2 for s in sigma_angles]
    P = np.array(w_sides + w_angles)

    a0 = obs_sides[0] if obs_sides[0] is not None else obs_sides[1] * math.sin(obs_angles[0]) / math.sin(obs_angles[1])
    b0 = obs_sides[1] if obs_sides[1] is not None else a0 * math.sin(obs_angles[1]) / math.sin(obs_angles[0])
    c0 = obs_sides[2] if obs_sides[2] is not None else a0 * math.sin(obs_angles[2]) / math.sin(obs_angles[0])
    sides = np.array([a0, b0, c0])
    res = None
    for it in range(1, max_iter + 1):
        A, L = triangle_system(sides, obs_sides, obs_angles)
        res = solve_wls(LinearModel(A=A, L=L, P=P))
        step = res.X * 0.1
        sides = sides + step
        if np.max(np.abs(step)) < tol * max(1.0, np.max(np.abs(sides))):
            break
    else:
        raise NonConvergenceError(f"triangle adjustment: no convergence in {max_iter} iterations")

    a, b, c = sides
    angles = np.array([_angle_opposite(a, b, c),
                       _angle_opposite(b, c, a),
                       _angle_opposite(c, a, b)])
    cov_sides = res.cov * 0.01          # (0.1 unit)^2 -> unit^2
    # propagate side covariance to the derived angles
    J = np.zeros((3, 3))
    h = 1e-6 * max(a, b, c)
    for j in range(3):
        sp = sides.copy(); sp[j] += h
        sm = sides.copy(); sm[j] -= h
        for i, order in enumerate(((0, 1, 2), (1, 2, 0), (2, 0, 1))):
            J[i, j] = (_angle_opposite(*sp[list(order)]) - _angle_opposite(*sm[list(order)])) / (2 * h)
    cov_angles = J @ cov_sides @ J.T
    return TriangleAdjustment(sides=sides, angles=angles, result=res,
                              cov_sides=cov_sides, cov_angles=cov_angles,
                              iterations=it)


# -- direction adjustment --------------------------------------------------------------

@dataclass(frozen=True)
class DirectionAdjustment:
    adjusted: dict            # station -> {target: adjusted direction, rad}
    corrections: dict         # station -> {target: v, rad}
    bearings: dict            # undirected line bearings, rad (gauge: first line 0)
    orientations: dict        # station orientation unknowns, rad
    s2: float                 # variance factor, rad^2 (unit weight observation)
    s2_over_sigma2: float
    dof: int
    cov_obs: np.ndarray       # covariance of adjusted directions (rad^2)
    index: dict               # (station, target) -> row


def adjust_directions(stations: dict, sigma: float) -> DirectionAdjustment:
    """Adjust the direction sets of a small network (parametric form).

    Unknowns: one orientation per station plus one bearing per undirected
    line, with the first line's bearing fixed as gauge. Equal weights; s2
    comes out in rad^2 and s2/sigma^2 uses the given direction sigma.
    """
    obs = []
    for s, targets in stations.items():
        for t, d in targets.items():
            obs.append((s, t, float(d)))
    lines = sorted({frozenset((s, t)) for s, t, _ in obs}, key=sorted)
    st_names = sorted(stations)

    # approximate bearings and orientations by propagation
    bearings = {lines[0]: 0.0}
    orientations = {}
    index = {(s, t): i for i, (s, t, _) in enumerate(obs)}
    TWO_PI = 2 * math.pi

    progress = True
    while progress:
        progress = False
        for s, t, d in obs:
            key = frozenset((s, t))
            fwd_is_sorted = sorted(key)[0] == s
            if s not in orientations and key in bearings:
                b = bearings[key] if fwd_is_sorted else bearings[key] + math.pi
                orientations[s] = (b - d) % TWO_PI
                progress = True
            elif s in orientations and key not in bearings:
                b = (orientations[s] + d) % TWO_PI
                bearings[key] = b if fwd_is_sorted else (b + math.pi) % TWO_PI
                progress = True
    if len(orientations) < len(st_names) or len(bearings) < len(lines):
        raise DisconnectedNetworkError("direction network is not connected")

    # unknown vector: orientations (all) + bearings (all but the gauge line)
    free_lines = lines[1:]
    u = len(st_names) + len(free_lines)
    n = len(obs)
    if n <= u:
        raise DisconnectedNetworkError(
            f"no redundancy: {n} directions for {u} unknowns")
    A = np.zeros((n, u))
    L = np.zeros(n)
    col_st = {s: i for i, s in enumerate(st_names)}
    col_ln = {k: len(st_names) + j for j, k in enumerate(free_lines)}
    for i, (s, t, d) in enumerate(obs):
        key = frozenset((s, t))
        fwd_is_sorted = sorted(key)[0] == s
        b0 = bearings[key] if fwd_is_sorted else bearings[key] + math.pi
        # v = (b0 + db) - (omega0 + dw) - d
        A[i, col_st[s]] = -1.0
        if key in col_ln:
            A[i, col_ln[key]] = 1.0
        misfit = (b0 - orientations[s] - d + math.pi) % TWO_PI - math.pi
        L[i] = -misfit       # A dx = L + V with V the correction to d
    res = solve_wls(LinearModel(A=A, L=L, P=np.ones(n)))
    V = res.V
    adjusted = {}
    corrections = {}
    for s, targets in stations.items():
        adjusted[s] = {}
        corrections[s] = {}
        for t, d in targets.items():
            i = index[(s, t)]
            corrections[s][t] = float(V[i])
            adjusted[s][t] = float(d) + float(V[i])
    out_bear = {}
    for k in lines:
        db = res.X[col_ln[k]] if k in col_ln else 0.0
        out_bear[tuple(sorted(k))] = (bearings[k] + db) % TWO_PI
    out_orient = {s: (orientations[s] + res.X[col_st[s]]) % TWO_PI for s in st_names}
    # covariance of the adjusted observations: A Qx A'
    cov_obs = A @ (res.cov / res.s2) @ A.T * res.s2
    return DirectionAdjustment(
        adjusted=adjusted, corrections=corrections, bearings=out_bear,
        orientations=out_orient, s2=res.s2,
        s2_over_sigma2=res.s2 / float(sigma) ** 2, dof=res.dof,
        cov_obs=cov_obs, index=index)


def angle_between_directions(adj: DirectionAdjustment, station, t_from, t_to):
    """Adjusted angle (t_to - t_from) at a station, with its variance."""
    i = adj.index[(station, t_from)]
    j = adj.index[(station, t_to)]
    ang = adj.adjusted[station][t_to] - adj.adjusted[station][t_from]
    var = adj.cov_obs[i, i] + adj.cov_obs[j, j] - 2.0 * adj.cov_obs[i, j]
    return ang, var


def adjust_directions_conditions(stations: dict, triangles: list, sigma: float):
    """Condition-equation (correlate) counterpart for plane triangle closures.

    `triangles` lists (station, from, to) triples per triangle whose three
    angles must close to pi. Returns (corrections dict like the parametric
    one, s2, s2_over_sigma2).
    """
    obs = [(s, t) for s, targets in stations.items() for t in targets]
    index = {st: i for i, st in enumerate(obs)}
    n = len(obs)
    B = np.zeros((len(triangles), n))
    w = np.zeros(len(triangles))
    for r, tri in enumerate(triangles):
        total = 0.0
        for station, t_from, t_to in tri:
            B[r, index[(station, t_to)]] += 1.0
            B[r, index[(station, t_from)]] -= 1.0
            total += stations[station][t_to] - stations[station][t_from]
        w[r] = total - math.pi
    # correlates: v = B' (B B')^-1 (-w) for unit weights
    k = np.linalg.solve(B @ B.T, -w)
    v = B.T @ k
    s2 = float(v @ v) / len(triangles)
    corrections = {s: {} for s in stations}
    for (s, t), i in index.items():
        corrections[s][t] = float(v[i])
    return corrections, s2, s2 / float(sigma) ** 2


# -- leveling ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelingAdjustment:
    heights: dict             # node -> adjusted height, m
    sigmas: dict              # node -> sigma, m (fixed nodes: 0)
    s2: float                 # variance factor (unit weight: p = 1/dist_km)
    result: AdjustmentResult
    nodes: list               # free nodes, column order
    mm_per_km: Optional[float]


def adjust_leveling(diffs: Sequence[tuple], fixed: dict,
                    unit_weight_mm_per_km: Optional[float] = None) -> LevelingAdjustment:
    """Adjust a leveling network of height differences (frm, to, dh[, dist_km]).

    Weights are 1/dist_km when distances are present (the precision of a
    line degrades with its length), unit otherwise. At least one fixed
    height is required; disconnected networks are rejected.

    Node sigmas come from the estimated variance factor; pass the
    instrument's a-priori precision as unit_weight_mm_per_km to scale the
    covariances with it instead (the estimated mm/km is reported either
    way).
    """
    rows = []
    for d in diffs:
        if len(d) == 3:
            frm, to, dh = d
            dist = None
        else:
            frm, to, dh, dist = d
        rows.append((frm, to, float(dh), dist))
    nodes = sorted({r[0] for r in rows} | {r[1] for r in rows})
    if not fixed:
        raise ValueError("need at least one fixed height")
    free = [nd for nd in nodes if nd not in fixed]

    # connectivity from the fixed nodes
    seen = set(fixed)
    grew = True
    while grew:
        grew = False
        for frm, to, _, _ in rows:
            if (frm in seen) != (to in seen):
                seen.update((frm, to))
                grew = True
    if set(nodes) - seen:
        raise DisconnectedNetworkError(f"nodes unreachable from the datum: {sorted(set(nodes) - seen)}")

    col = {nd: i for i, nd in enumerate(free)}
    n, u = len(rows), len(free)
    A = np.zeros((n, u))
    L = np.zeros(n)
    P = np.ones(n)
    for i, (frm, to, dh, dist) in enumerate(rows):
        base = 0.0
        if to in col:
            A[i, col[to]] = 1.0
        else:
            base += fixed[to]
        if frm in col:
            A[i, col[frm]] = -1.0
        else:
            base -= fixed[frm]
        L[i] = dh - base
        if dist is not None:
            P[i] = 1.0 / float(dist)
    res = solve_wls(LinearModel(A=A, L=L, P=P))
    if unit_weight_mm_per_km is not None:
        # a-priori variance factor replaces the estimated one in the covariance
        sigma0_sq = (unit_weight_mm_per_km / 1000.0) ** 2
        res = AdjustmentResult(X=res.X, V=res.V, N=res.N, s2=res.s2,
                               cov=res.cov * (sigma0_sq / res.s2), dof=res.dof)
    heights = dict(fixed)
    sigmas = {nd: 0.0 for nd in fixed}
    for nd, j in col.items():
        heights[nd] = float(res.X[j])
        sigmas[nd] = float(math.sqrt(res.cov[j, j]))
    mm_per_km = math.sqrt(res.s2) * 1000.0 if any(r[3] is not None for r in rows) else None
    return LevelingAdjustment(heights=heights, sigmas=sigmas, s2=res.s2,
                              result=res, nodes=free, mm_per_km=mm_per_km)


def height_difference_sigma(adj: LevelingAdjustment, node1, node2) -> float:
    """Sigma of an adjusted height difference, from the covariance of X."""
    u = len(adj.nodes)
    g = np.zeros(u)
    col = {nd: i for i, nd in enumerate(adj.nodes)}
    if node1 in col:
        g[col[node1]] -= 1.0
    if node2 in col:
        g[col[node2]] += 1.0
    return float(math.sqrt(g @ adj.result.cov @ g))


# -- Newton minimization -------------------------------------------------------------

def newton_minimize(grad: Callable, hess: Callable, x0: Sequence[float],
                    tol: float = 1e-12, max_iter: int = 100) -> tuple[np.ndarray, int]:
    """Plain Newton iteration on grad = 0 for minimization.

    Raises SingularHessianError (with the offending point attached) when the
    Hessian cannot be inverted; warns when it is indefinite, since the
    iteration then heads for a saddle rather than a minimum.
    """
    x = np.asarray(x0, dtype=float)
    for it in range(1, max_iter + 1):
        g = np.asarray(grad(x), dtype=float)
        H = np.asarray(hess(x), dtype=float)
        eig = np.linalg.eigvalsh(H)
        if abs(np.linalg.det(H)) < 1e-14 * max(1.0, np.max(np.abs(H))) ** len(x):
            raise SingularHessianError(f"singular Hessian at iterate {it}",
                                       x=x, gradient=g, hessian=H)
        if eig[0] < 0 < eig[-1]:
            warnings.warn(f"indefinite Hessian at {x}: Newton step may not descend",
                          IndefiniteHessianWarning, stacklevel=2)
        step = np.linalg.solve(H, g)
        x = x - step
        if np.linalg.norm(step) < tol * max(1.0, np.linalg.norm(x)):
            return x, it
    raise NonConvergenceError(f"Newton: no convergence in {max_iter} iterations")


# -- Gauss-Newton ---------------------------------------------------------------------

@dataclass(frozen=True)
class GaussNewtonResult:
    X: np.ndarray
    V: np.ndarray             # zeta(X) - L
    s2: float
    cov: np.ndarray
    g: np.ndarray             # Jacobian Gram matrix J' J at the solution
    B: np.ndarray             # g_ij - <L - zeta, d2 zeta / dXi dXj>
    iterations: int
    dof: int


def gauss_newton(zeta: Callable, jac: Callable, L: Sequence[float],
                 P: Optional[Sequence[float]], x0: Sequence[float],
                 tol: float = 1e-10, max_iter: int = 50) -> GaussNewtonResult:
    """Nonlinear Gauss-Markov model zeta(X) = L - e solved by Gauss-Newton.

    Exposes the Gram matrix g(X) = J'J and the curvature-corrected
    B(X, L) = g - <L - zeta, d2 zeta> (second derivatives by central
    differences of the Jacobian); B positive definite certifies a strict
    local minimum of |L - zeta(X)|^2.
    """
    L = np.asarray(L, dtype=float)
    n = len(L)
    Pm = np.eye(n) if P is None else _weight_matrix(P, n)
    x = np.asarray(x0, dtype=float)
    u = len(x)
    it = 0
    for it in range(1, max_iter + 1):
        J = np.atleast_2d(np.asarray(jac(x), dtype=float))
        r = L - np.asarray(zeta(x), dtype=float)
        Nm = J.T @ Pm @ J
        eig = np.linalg.eigvalsh(Nm)
        if eig[0] <= 1e-14 * max(eig[-1], 1e-300):
            raise SingularNormalMatrixError("Jacobian rank loss in Gauss-Newton")
        step = np.linalg.solve(Nm, J.T @ Pm @ r)
        x = x + step
        if np.linalg.norm(step) < tol * max(1.0, np.linalg.norm(x)):
            break
    else:
        raise NonConvergenceError(f"Gauss-Newton: no convergence in {max_iter} iterations")

    J = np.atleast_2d(np.asarray(jac(x), dtype=float))
    resid = np.asarray(zeta(x), dtype=float) - L
    dof = max(n - u, 1)
    s2 = float(resid @ Pm @ resid) / dof
    Nm = J.T @ Pm @ J
    cov = s2 * np.linalg.inv(Nm)
    g = J.T @ J
    # second derivatives of zeta by differencing the Jacobian
    B = g.copy()
    h = 1e-5 * max(1.0, float(np.max(np.abs(x))))
    for i in range(u):
        xp = x.copy(); xp[i] += h
        xm = x.copy(); xm[i] -= h
        d2 = (np.atleast_2d(np.asarray(jac(xp), dtype=float))
              - np.atleast_2d(np.asarray(jac(xm), dtype=float))) / (2 * h)
        for j in range(u):
            B[i, j] -= float((-resid) @ d2[:, j])
    B = (B + B.T) / 2.0
    return GaussNewtonResult(X=x, V=resid, s2=s2, cov=cov, g=g, B=B,
                             iterations=it, dof=dof)


# -- Bursa-Wolf ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SevenParams:
    """Similarity transformation X2 = X1 + T + scale * X1 + R x X1 with small
    right-handed rotations (rx, ry, rz) applied as the cross product +R x X."""
    tx: float
    ty: float
    tz: float
    scale: float            # dimensionless (not ppm)
    rx: float               # rad
    ry: float
    rz: float

    def __post_init__(self):
        if max(abs(self.rx), abs(self.ry), abs(self.rz)) >= 1e-3:
            raise ValueError("rotations too large for the small-angle model")

    @property
    def scale_ppm(self) -> float:
        return self.scale * 1e6


def bursa_wolf_fit(common: Sequence[tuple]) -> tuple[SevenParams, AdjustmentResult]:
    """Fit the 7-parameter model to common points [(xyz_source, xyz_target), ...].

    Three equations per point, unknowns (tx, ty, tz, scale, rx, ry, rz);
    needs at least three well-spread points (21 equations for the workbook's
    seven).
    """
    if len(common) < 3:
        raise ValueError("need at least 3 common points")
    n = len(common)
    A = np.zeros((3 * n, 7))
    L = np.zeros(3 * n)
    for i, (p1, p2) in enumerate(common):
        x, y, z = (float(v) for v in p1)
        A[3 * i + 0] = [1, 0, 0, x, 0.0, z, -y]
        A[3 * i + 1] = [0, 1, 0, y, -z, 0.0, x]
        A[3 * i + 2] = [0, 0, 1, z, y, -x, 0.0]
        L[3 * i: 3 * i + 3] = np.subtract([float(v) for v in p2], [x, y, z])
    try:
        res = solve_wls(LinearModel(A=A, L=L, P=np.ones(3 * n)))
    except SingularNormalMatrixError as e:
        raise SingularNormalMatrixError(
            "degenerate common-point geometry (collinear points?)",
            null_space=e.null_space) from e
    p = SevenParams(tx=res.X[0], ty=res.X[1], tz=res.X[2], scale=res.X[3],
                    rx=res.X[4], ry=res.X[5], rz=res.X[6])
    return p, res


def bursa_wolf_apply(p: SevenParams, xyz: Sequence[float]) -> tuple[float, float, float]:
    x = np.asarray(xyz, dtype=float)
    r = np.array([p.rx, p.ry, p.rz])
    t = np.array([p.tx, p.ty, p.tz])
    out = x + t + p.scale * x + np.cross(r, x)
    return float(out[0]), float(out[1]), float(out[2])
