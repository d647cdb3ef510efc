"""Maximization of Bell-operator expectations over measurement settings.

Two optimizers, both multi-start and deterministic in the configured seed:

* :func:`seesaw_max_abs_d` - coordinate ascent on |<D_i>| for one index i.
  Each expectation is affine in every individual setting vector, so the
  coefficients of that affine form are recovered exactly by probing the zero
  vector and the three basis vectors, and the per-coordinate maximizer
  v = +/- g/|g| is exact.  The objective never decreases.
* :func:`maximize_omega` - same sweep structure for the sum of the three
  squared expectations at one shared setting.  Per coordinate the objective
  is a quadratic on the unit sphere, ascended by projected gradient steps
  with accept/reject step-size control (monotone by construction).

Every start draws its six initial unit vectors from an independent RNG
stream derived from (seed, start index), and all starts advance in lockstep
as one batched computation.  :func:`seesaw_max_abs_d_many` extends the same
lockstep across a whole list of states, which is how the Monte Carlo bound
sweeps stay fast; it performs the identical per-row updates as the
single-state entry point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import MeasurementSettings, _d_values, expectation_bell, omega as omega_matrix
from .core import ConsistencyError, ValidationError
from .pauli import decompose
from .states import as_density, ghz, to_density

__all__ = [
    "OptimizerConfig",
    "OptimizationResult",
    "seesaw_max_abs_d",
    "seesaw_max_abs_d_many",
    "maximize_omega",
    "omega_planar_oracle",
    "planar_case_settings",
    "planar_grid_max",
]

GRAD_FLOOR = 1e-14
_MONOTONE_SLACK = 1e-12
_PROBES = np.array(
    [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
)


@dataclass(frozen=True)
class OptimizerConfig:
    """Multi-start see-saw parameters."""

    n_starts: int = 32
    max_sweeps: int = 500
    abs_tol: float = 1e-12
    seed: int = 0

    def __post_init__(self):
        if self.n_starts < 1:
            raise ValidationError(f"n_starts must be >= 1, got {self.n_starts}")
        if self.max_sweeps < 1:
            raise ValidationError(f"max_sweeps must be >= 1, got {self.max_sweeps}")
        if not self.abs_tol > 0:
            raise ValidationError(f"abs_tol must be > 0, got {self.abs_tol}")
        if self.seed < 0:
            raise ValidationError(f"seed must be a non-negative integer, got {self.seed}")


@dataclass(frozen=True, eq=False)
class OptimizationResult:
    """Best value found, the settings achieving it, and per-start telemetry."""

    value: float
    settings: MeasurementSettings
    sweeps_used: int
    converged: bool
    per_start_values: tuple
    degenerate_updates: int = 0


def _initial_vectors(cfg: OptimizerConfig) -> np.ndarray:
    """(n_starts, 2, 3, 3) array of unit vectors; axis 1 is a/b."""
    vecs = np.empty((cfg.n_starts, 2, 3, 3))
    for k in range(cfg.n_starts):
        rng = np.random.default_rng([cfg.seed, k])
        v = rng.standard_normal((2, 3, 3))
        vecs[k] = v / np.linalg.norm(v, axis=-1, keepdims=True)
    return vecs


class _RowProblem:
    """Per-row Pauli coefficients for a stack of (state, start) rows."""

    def __init__(self, states, n_starts: int):
        decs = [decompose(as_density(s)) for s in states]
        rep = lambda arrs: np.repeat(np.stack(arrs), n_starts, axis=0)
        self.alpha = rep([d.alpha for d in decs])
        self.beta = rep([d.beta for d in decs])
        self.gamma = rep([d.gamma for d in decs])
        self.q = rep([d.Q for d in decs])
        self.n_states = len(states)
        self.n_starts = n_starts

    def take(self, rows):
        sub = _RowProblem.__new__(_RowProblem)
        sub.alpha = self.alpha[rows]
        sub.beta = self.beta[rows]
        sub.gamma = self.gamma[rows]
        sub.q = self.q[rows]
        return sub

    def values(self, a_slots, b_slots, which):
        """<D_which> per row (and probe axis), from slot vectors (rows, p, 3).

        Uses the bilinear regrouping P(s,s') + P(s,t') = P(s, a') so each
        operator costs two tensor contractions.  ``which=None`` stacks all
        three operators along a trailing axis.
        """
        q = self.q

        def s_of(k):
            return (a_slots[k] + b_slots[k]) * 0.5

        def t_of(k):
            return (a_slots[k] - b_slots[k]) * 0.5

        def one(i):
            if i == 1:
                m = np.einsum("nijk,npj,npk->npi", q, s_of(1), a_slots[2]) + np.einsum(
                    "nijk,npj,npk->npi", q, t_of(1), b_slots[2]
                )
            elif i == 2:
                m = np.einsum("nijk,npi,npk->npj", q, s_of(0), a_slots[2]) + np.einsum(
                    "nijk,npi,npk->npj", q, t_of(0), b_slots[2]
                )
            else:
                m = np.einsum("nijk,npi,npj->npk", q, s_of(0), a_slots[1]) + np.einsum(
                    "nijk,npi,npj->npk", q, t_of(0), b_slots[1]
                )
            local = (self.alpha, self.beta, self.gamma)[i - 1]
            si, ti = s_of(i - 1), t_of(i - 1)
            return np.einsum("npi,npi->np", si, m) + np.einsum("npi,ni->np", ti, local)

        if which is None:
            return np.stack([one(i) for i in (1, 2, 3)], axis=-1)
        return one(which)


def _slot_views(vecs, slot=None, is_b=False, n_probe: int = 1):
    """Per-slot a/b arrays (rows, n_probe, 3); the active slot gets the probes."""
    n = vecs.shape[0]
    a_slots = [np.broadcast_to(vecs[:, 0, k, None, :], (n, n_probe, 3)) for k in range(3)]
    b_slots = [np.broadcast_to(vecs[:, 1, k, None, :], (n, n_probe, 3)) for k in range(3)]
    if slot is not None:
        probe = np.broadcast_to(_PROBES[None, :, :], (n, 4, 3))
        (b_slots if is_b else a_slots)[slot] = probe
    return a_slots, b_slots


def _affine_form(problem, vecs, slot: int, is_b: bool, which):
    """Exact affine coefficients of <D> in the active setting vector.

    Evaluates the fast path with the active vector replaced by the zero
    vector and each basis vector.  For a single index ``which`` returns
    (c, g) with shapes (n,), (n, 3); for which=None shapes (n, 3) and
    (n, 3, 3) with axis 1 the operator index.
    """
    a_slots, b_slots = _slot_views(vecs, slot, is_b, n_probe=4)
    vals = problem.values(a_slots, b_slots, which)
    if which is None:
        c = vals[:, 0, :]
        g = np.swapaxes(vals[:, 1:4, :] - vals[:, 0:1, :], 1, 2)
    else:
        c = vals[:, 0]
        g = vals[:, 1:4] - vals[:, 0:1]
    return c, g


def _current_values(problem, vecs, which):
    a_slots, b_slots = _slot_views(vecs, n_probe=1)
    vals = problem.values(a_slots, b_slots, which)
    return vals[:, 0] if which is not None else vals[:, 0, :]


def _result_for_rows(rho, obj, vecs, sweeps_done, converged, degenerate_total, objective, recheck_tol=1e-10):
    best = int(np.argmax(obj))
    settings = MeasurementSettings(vecs[best, 0].copy(), vecs[best, 1].copy())
    value = float(obj[best])
    check = objective(rho, settings)
    if abs(check - value) > recheck_tol:
        raise ConsistencyError(
            f"optimizer value {value!r} disagrees with matrix-path recomputation {check!r}"
        )
    return OptimizationResult(
        value=value,
        settings=settings,
        sweeps_used=int(sweeps_done[best]),
        converged=bool(converged[best]),
        per_start_values=tuple(float(x) for x in obj),
        degenerate_updates=int(degenerate_total),
    )


def seesaw_max_abs_d_many(states, i: int, cfg: OptimizerConfig | None = None):
    """Batched :func:`seesaw_max_abs_d` over a list of states (one result each).

    All states share the configured start vectors and advance in lockstep;
    each row's update sequence is identical to the single-state driver's.
    """
    if i not in (1, 2, 3):
        raise ValidationError(f"operator index must be 1, 2 or 3, got {i!r}")
    cfg = cfg or OptimizerConfig()
    states = [as_density(s) for s in states]
    if not states:
        return []
    problem = _RowProblem(states, cfg.n_starts)
    n = problem.n_states * cfg.n_starts
    vecs = np.tile(_initial_vectors(cfg), (problem.n_states, 1, 1, 1))

    obj = np.abs(_current_values(problem, vecs, i))
    active = np.ones(n, dtype=bool)
    converged = np.zeros(n, dtype=bool)
    sweeps_done = np.full(n, cfg.max_sweeps, dtype=int)
    degenerate = np.zeros(n, dtype=int)

    for sweep in range(1, cfg.max_sweeps + 1):
        rows = np.nonzero(active)[0]
        if rows.size == 0:
            break
        sub = vecs[rows]
        sub_problem = problem.take(rows)
        sub_obj = obj[rows]
        sub_degenerate = np.zeros(rows.size, dtype=int)
        for slot in range(3):
            for is_b in (False, True):
                c, g = _affine_form(sub_problem, sub, slot, is_b, which=i)
                gnorm = np.linalg.norm(g, axis=1)
                ok = gnorm > GRAD_FLOOR
                sub_degenerate += ~ok
                sign = np.where(c >= 0.0, 1.0, -1.0)
                cur = sub[:, 1 if is_b else 0, slot, :]
                new = np.where(
                    ok[:, None],
                    sign[:, None] * g / np.maximum(gnorm, GRAD_FLOOR)[:, None],
                    cur,
                )
                sub[:, 1 if is_b else 0, slot, :] = new
                new_obj = np.abs(c + np.einsum("nc,nc->n", g, new))
                if np.any(new_obj < sub_obj - _MONOTONE_SLACK):
                    raise ConsistencyError("see-saw objective decreased during an update")
                sub_obj = new_obj
        gain = sub_obj - obj[rows]
        vecs[rows] = sub
        obj[rows] = sub_obj
        degenerate[rows] += sub_degenerate
        done = gain < cfg.abs_tol
        done_rows = rows[done]
        sweeps_done[done_rows] = sweep
        converged[done_rows] = True
        active[done_rows] = False

    results = []
    k = cfg.n_starts
    for s, rho in enumerate(states):
        sl = slice(s * k, (s + 1) * k)
        results.append(
            _result_for_rows(
                rho, obj[sl], vecs[sl], sweeps_done[sl], converged[sl],
                int(degenerate[sl].sum()), lambda r, m: abs(expectation_bell(r, m, i)),
            )
        )
    return results


def seesaw_max_abs_d(rho, i: int, cfg: OptimizerConfig | None = None) -> OptimizationResult:
    """Largest |<D_i>| over measurement settings for a fixed state.

    Sweeps cycle j = 1..3 over a_j then b_j; each update replaces the active
    vector by the exact argmax +/- g/|g| of the affine expectation, with the
    sign chosen to maximize the absolute value.  Vanishing gradients keep
    the previous vector and are counted in ``degenerate_updates``.
    """
    return seesaw_max_abs_d_many([rho], i, cfg)[0]


def _ascend_sphere_quadratic(g, c, v0, max_iter=60):
    """Projected gradient ascent for sum_i (g_i . v + c_i)^2 on the unit sphere.

    Steps are accepted only if they improve the objective; rejected steps
    halve the per-start step size, accepted ones grow it.  Returns
    (v, values, n_stalled) and never lowers any start's objective.
    """
    v = v0.copy()
    r = np.einsum("nic,nc->ni", g, v) + c
    w = np.sum(r * r, axis=1)
    eta = np.ones(v.shape[0])
    stalled = np.zeros(v.shape[0], dtype=bool)
    for _ in range(max_iter):
        grad = 2.0 * np.einsum("ni,nic->nc", r, g)
        gn = np.linalg.norm(grad, axis=1)
        live = gn > GRAD_FLOOR
        stalled |= ~live
        if not live.any():
            break
        cand = v + eta[:, None] * grad
        nrm = np.linalg.norm(cand, axis=1)
        valid = live & (nrm > GRAD_FLOOR)
        cand = np.where(valid[:, None], cand / np.maximum(nrm, GRAD_FLOOR)[:, None], v)
        rc = np.einsum("nic,nc->ni", g, cand) + c
        wc = np.sum(rc * rc, axis=1)
        accept = valid & (wc > w)
        v = np.where(accept[:, None], cand, v)
        r = np.where(accept[:, None], rc, r)
        w = np.where(accept, wc, w)
        eta = np.where(accept, np.minimum(eta * 1.5, 4.0), eta * 0.5)
        if not np.any(eta >= 1e-16):
            break
    return v, w, stalled.astype(int)


def maximize_omega(rho, cfg: OptimizerConfig | None = None) -> OptimizationResult:
    """Largest omega (sum of three squared expectations) found over shared settings.

    Best across the configured starts; the quadratic landscape has genuine
    local optima for generic entangled states, so raise ``n_starts`` when a
    certified-quality maximum matters.
    """
    cfg = cfg or OptimizerConfig()
    rho = as_density(rho)
    problem = _RowProblem([rho], cfg.n_starts)
    n = cfg.n_starts
    vecs = _initial_vectors(cfg)

    vals0 = _current_values(problem, vecs, which=None)
    obj = np.sum(vals0**2, axis=1)
    active = np.ones(n, dtype=bool)
    converged = np.zeros(n, dtype=bool)
    sweeps_done = np.full(n, cfg.max_sweeps, dtype=int)
    degenerate = np.zeros(n, dtype=int)

    for sweep in range(1, cfg.max_sweeps + 1):
        rows = np.nonzero(active)[0]
        if rows.size == 0:
            break
        sub = vecs[rows]
        sub_problem = problem.take(rows)
        sub_obj = obj[rows]
        sub_degenerate = np.zeros(rows.size, dtype=int)
        for slot in range(3):
            for is_b in (False, True):
                c, g = _affine_form(sub_problem, sub, slot, is_b, which=None)
                cur = sub[:, 1 if is_b else 0, slot, :]
                new, new_obj, ndeg = _ascend_sphere_quadratic(g, c, cur)
                sub_degenerate += ndeg
                if np.any(new_obj < sub_obj - _MONOTONE_SLACK):
                    raise ConsistencyError("omega objective decreased during an update")
                sub[:, 1 if is_b else 0, slot, :] = new
                sub_obj = new_obj
        gain = sub_obj - obj[rows]
        vecs[rows] = sub
        obj[rows] = sub_obj
        degenerate[rows] += sub_degenerate
        done = gain < cfg.abs_tol
        done_rows = rows[done]
        sweeps_done[done_rows] = sweep
        converged[done_rows] = True
        active[done_rows] = False

    return _result_for_rows(
        rho, obj, vecs, sweeps_done, converged, int(degenerate.sum()),
        objective=lambda r, m: omega_matrix(r, m),
    )


def planar_case_settings(theta1: float, theta2: float, theta3: float) -> MeasurementSettings:
    """Settings with s_i = (cos t_i, sin t_i, 0)/sqrt2, t_i = (-sin t_i, cos t_i, 0)/sqrt2.

    Equivalently a_i and b_i are planar unit vectors at angles t_i + pi/4 and
    t_i - pi/4.
    """
    thetas = np.array([theta1, theta2, theta3], dtype=float)
    a = np.stack(
        [np.cos(thetas + np.pi / 4), np.sin(thetas + np.pi / 4), np.zeros(3)], axis=1
    )
    b = np.stack(
        [np.cos(thetas - np.pi / 4), np.sin(thetas - np.pi / 4), np.zeros(3)], axis=1
    )
    return MeasurementSettings(a, b)


def omega_planar_oracle(theta1: float, theta2: float, theta3: float) -> float:
    """Closed-form omega of the GHZ state at the planar orthogonal-pair settings.

    Evaluates (3/2) (cos T - sin T)^2 with T = theta1 + theta2 + theta3 and
    cross-checks it against the matrix-path omega at the corresponding
    settings before returning.
    """
    total = theta1 + theta2 + theta3
    closed = 1.5 * (np.cos(total) - np.sin(total)) ** 2
    settings = planar_case_settings(theta1, theta2, theta3)
    direct = omega_matrix(to_density(ghz()), settings)
    if abs(direct - closed) > 1e-10:
        raise ConsistencyError(
            f"planar omega mismatch: closed form {closed!r} vs matrix path {direct!r}"
        )
    return float(closed)


def planar_grid_max(state, i: int, n_angles: int = 16) -> float:
    """Brute-force lower bound on max |<D_i>| from an exhaustive planar grid.

    All six vectors are confined to the x-y plane.  The distinguished qubit i
    uses an aligned pair a_i = b_i at angle theta_i; each remaining qubit uses
    an orthogonal pair at angles theta +/- pi/4, the geometry that contains
    the known optimum for the GHZ state.  The three base angles each range
    over ``n_angles`` equally spaced values and every combination is
    evaluated through the fast contraction path.
    """
    if i not in (1, 2, 3):
        raise ValidationError(f"operator index must be 1, 2 or 3, got {i!r}")
    d = decompose(as_density(state))
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    g1, g2, g3 = np.meshgrid(angles, angles, angles, indexing="ij")
    shape = g1.shape
    s = np.zeros(shape + (3, 3))
    t = np.zeros(shape + (3, 3))
    others = [j for j in (1, 2, 3) if j != i]
    grids = {i: g1, others[0]: g2, others[1]: g3}
    for slot, grid in grids.items():
        if slot == i:
            s[..., slot - 1, 0] = np.cos(grid)
            s[..., slot - 1, 1] = np.sin(grid)
        else:
            s[..., slot - 1, 0] = np.cos(grid) / np.sqrt(2.0)
            s[..., slot - 1, 1] = np.sin(grid) / np.sqrt(2.0)
            t[..., slot - 1, 0] = -np.sin(grid) / np.sqrt(2.0)
            t[..., slot - 1, 1] = np.cos(grid) / np.sqrt(2.0)
    vals = _d_values(d.alpha, d.beta, d.gamma, d.Q, s, t, which=i)
    return float(np.max(np.abs(vals)))
