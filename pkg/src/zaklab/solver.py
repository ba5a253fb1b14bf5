"""Pseudospectral integrator for the first-order Zakharov system.

The coupled fields are the Schroedinger amplitude u and the two wave
envelopes n_plus, n_minus with n = (n_plus + n_minus)/2 real.  Linear
parts are applied exactly in Fourier space through an integrating-factor
(Lawson) RK4 step; the quadratic products are formed in physical space
under the 2/3 dealiasing rule.  The regularized reduction replaces the
half-wave symbol |xi| by sqrt(xi^2 + 1), which removes the zero-frequency
singularity of the inverse half-wave operator at the cost of a bounded
extra linear coupling term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .grids import GridFunction, RoughDataSpec, from_samples, hat_norm, unit_rough_data


class SolverError(ValueError):
    pass


class BlowUpSignal(RuntimeError):
    """Nonfinite field value encountered; carries the time of detection."""

    def __init__(self, t: float):
        super().__init__(f"nonfinite field at t = {t}")
        self.t = t


@dataclass(frozen=True)
class SolverConfig:
    n: int = 256
    box: float = 32.0
    dt: float = 1e-3
    t_final: float = 0.5
    regularized: bool = True
    sample_stride: int = 25
    dealias: bool = True

    def __post_init__(self):
        if self.n < 2 or (self.n & (self.n - 1)) != 0:
            raise SolverError(f"n must be a power of two (got {self.n})")
        if self.dt <= 0 or self.box <= 0 or self.t_final < 0:
            raise SolverError("dt and box must be positive, t_final nonnegative")
        steps = self.t_final / self.dt
        if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
            raise SolverError(
                f"t_final must be a multiple of dt (got {self.t_final}/{self.dt})"
            )

    @property
    def steps(self) -> int:
        return int(round(self.t_final / self.dt))


@dataclass
class ZakharovState:
    """Physical-space fields at one instant; n must stay real."""

    u: np.ndarray
    n_plus: np.ndarray
    n_minus: np.ndarray
    t: float
    box: float

    def __post_init__(self):
        shapes = {self.u.shape, self.n_plus.shape, self.n_minus.shape}
        if len(shapes) != 1:
            raise SolverError("field grids disagree")

    @property
    def n(self) -> np.ndarray:
        return (self.n_plus + self.n_minus) / 2.0

    def reality_defect(self) -> float:
        """Max |Im n| relative to the field scale (0 for exactly real n)."""
        scale = max(1.0, float(np.max(np.abs(self.n))))
        return float(np.max(np.abs(self.n.imag))) / scale


def _wave_symbol(xi: np.ndarray, regularized: bool) -> np.ndarray:
    return np.sqrt(xi * xi + 1.0) if regularized else np.abs(xi)


def to_first_order(
    n0: np.ndarray, n1: np.ndarray, box: float, regularized: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Split wave data (n0, n1) into the envelopes n0 +/- i Op^{-1/2} n1.

    Without regularization the inverse half-wave symbol is singular at the
    zero mode, so n1 must have zero mean there.
    """
    n0 = np.asarray(n0, dtype=np.complex128)
    n1 = np.asarray(n1, dtype=np.complex128)
    n = n0.shape[0]
    xi = 2.0 * np.pi * np.fft.fftfreq(n, d=box / n)
    n1_hat = np.fft.fft(n1)
    if not regularized:
        mean_scale = max(1.0, float(np.max(np.abs(n1_hat))))
        if abs(n1_hat[0]) > 1e-10 * mean_scale:
            raise SolverError(
                "unregularized reduction needs zero-mean n1: the inverse "
                "half-wave symbol 1/|xi| is singular at the zero mode"
            )
        inv = np.zeros_like(xi)
        inv[xi != 0] = 1.0 / np.abs(xi[xi != 0])
    else:
        inv = 1.0 / np.sqrt(xi * xi + 1.0)
    w = np.fft.ifft(1j * inv * n1_hat)
    return n0 + w, n0 - w


def from_first_order(
    n_plus: np.ndarray, n_minus: np.ndarray, box: float, regularized: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Invert the first-order splitting back to (n0, n1)."""
    n = n_plus.shape[0]
    xi = 2.0 * np.pi * np.fft.fftfreq(n, d=box / n)
    sym = _wave_symbol(xi, regularized)
    n0 = (n_plus + n_minus) / 2.0
    diff_hat = np.fft.fft(n_plus - n_minus) / 2.0
    n1 = np.fft.ifft(sym * diff_hat / 1j)
    return n0, n1


class _Stepper:
    """Spectral state plus the fixed per-config operators."""

    def __init__(self, cfg: SolverConfig):
        self.cfg = cfg
        n = cfg.n
        self.xi = 2.0 * np.pi * np.fft.fftfreq(n, d=cfg.box / n)
        self.omega = _wave_symbol(self.xi, cfg.regularized)
        self.lin_u = -1j * self.xi * self.xi
        self.lin_p = -1j * self.omega
        self.lin_m = +1j * self.omega
        dt = cfg.dt
        self.e_u, self.e_p, self.e_m = (
            np.exp(dt * sym) for sym in (self.lin_u, self.lin_p, self.lin_m)
        )
        self.h_u, self.h_p, self.h_m = (
            np.exp(0.5 * dt * sym) for sym in (self.lin_u, self.lin_p, self.lin_m)
        )
        if cfg.dealias:
            idx = np.rint(np.fft.fftfreq(n, d=1.0 / n)).astype(np.int64)
            self.mask = (np.abs(idx) <= n // 3).astype(np.float64)
        else:
            self.mask = np.ones(n)
        if cfg.regularized:
            self.src_sym = 1j * self.xi * self.xi / self.omega  # i A Op^{-1/2}
            self.couple = 0.5j / self.omega                     # (i/2) Op^{-1/2}
        else:
            self.src_sym = 1j * self.omega
            self.couple = None

    def nonlinear(self, u_hat, p_hat, m_hat):
        mask = self.mask
        u = np.fft.ifft(mask * u_hat)
        nsum_hat = p_hat + m_hat
        nsum = np.fft.ifft(mask * nsum_hat)
        rhs_u = np.fft.fft(-0.5j * nsum * u) * mask
        sq_hat = np.fft.fft(u * np.conj(u)) * mask
        rhs_p = -self.src_sym * sq_hat
        rhs_m = +self.src_sym * sq_hat
        if self.couple is not None:
            rhs_p = rhs_p + self.couple * nsum_hat
            rhs_m = rhs_m - self.couple * nsum_hat
        return rhs_u, rhs_p, rhs_m

    def step(self, y):
        """One Lawson RK4 step for y' = L y + N(y)."""
        dt = self.cfg.dt
        e = (self.e_u, self.e_p, self.e_m)
        h = (self.h_u, self.h_p, self.h_m)
        k1 = self.nonlinear(*y)
        y2 = tuple(hi * (yi + 0.5 * dt * ki) for hi, yi, ki in zip(h, y, k1))
        k2 = self.nonlinear(*y2)
        y3 = tuple(hi * yi + 0.5 * dt * ki for hi, yi, ki in zip(h, y, k2))
        k3 = self.nonlinear(*y3)
        y4 = tuple(ei * yi + dt * hi * ki for ei, yi, hi, ki in zip(e, y, h, k3))
        k4 = self.nonlinear(*y4)
        out = tuple(
            ei * yi + dt / 6.0 * (ei * k1i + 2.0 * hi * (k2i + k3i)) + dt / 6.0 * k4i
            for ei, hi, yi, k1i, k2i, k3i, k4i in zip(e, h, y, k1, k2, k3, k4)
        )
        return out


def stability_check(
    u0: np.ndarray, n0: np.ndarray, n1: np.ndarray, cfg: SolverConfig
) -> bool:
    """Trial-step validation of the configured dt on the given data: one
    step must stay finite and must not inflate the mass by more than a
    factor 10 (an unstable step shows up immediately at this scale)."""
    n_plus0, n_minus0 = to_first_order(n0, n1, cfg.box, cfg.regularized)
    st = _Stepper(cfg)
    y = tuple(
        np.fft.fft(np.asarray(f, dtype=np.complex128))
        for f in (u0, n_plus0, n_minus0)
    )
    mass0 = float(np.sum(np.abs(y[0]) ** 2))
    y = st.step(y)
    if not all(np.all(np.isfinite(v.view(np.float64))) for v in y):
        return False
    mass1 = float(np.sum(np.abs(y[0]) ** 2))
    return mass1 <= 10.0 * max(mass0, 1e-300)


def step(state: ZakharovState, cfg: SolverConfig) -> ZakharovState:
    """Advance one dt; raises BlowUpSignal on nonfinite output."""
    st = _Stepper(cfg)
    y = tuple(np.fft.fft(f) for f in (state.u, state.n_plus, state.n_minus))
    y = st.step(y)
    fields = tuple(np.fft.ifft(v) for v in y)
    t_next = state.t + cfg.dt
    if not all(np.all(np.isfinite(f.view(np.float64))) for f in fields):
        raise BlowUpSignal(t_next)
    return ZakharovState(*fields, t=t_next, box=state.box)


@dataclass
class EvolutionTrace:
    times: np.ndarray
    series: dict[str, np.ndarray]
    truncated: bool = False
    blowup_time: float | None = None
    final_state: ZakharovState | None = None

    def __post_init__(self):
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise SolverError("trace timestamps must increase strictly")


def evolve(
    u0: np.ndarray,
    n0: np.ndarray,
    n1: np.ndarray,
    cfg: SolverConfig,
    hat_norms: tuple[tuple[float, float], ...] = ((0.0, 2.0),),
    keep_final_state: bool = True,
) -> EvolutionTrace:
    """Integrate on [0, t_final], sampling diagnostics every sample_stride
    steps.  A blow-up truncates the trace and sets the flag instead of
    propagating."""
    n_plus0, n_minus0 = to_first_order(n0, n1, cfg.box, cfg.regularized)
    st = _Stepper(cfg)
    y = tuple(
        np.fft.fft(np.asarray(f, dtype=np.complex128))
        for f in (u0, n_plus0, n_minus0)
    )
    dx = cfg.box / cfg.n
    times = [0.0]
    rows = {f"hat_{k}_{p}": [] for k, p in hat_norms}
    rows["mass"] = []
    rows["sup_u"] = []
    rows["n_imag"] = []

    def record(y, t):
        u = np.fft.ifft(y[0])
        navg = (np.fft.ifft(y[1]) + np.fft.ifft(y[2])) / 2.0
        rows["mass"].append(float(np.sqrt(np.sum(np.abs(u) ** 2) * dx)))
        rows["sup_u"].append(float(np.max(np.abs(u))))
        rows["n_imag"].append(float(np.max(np.abs(navg.imag))))
        gf = from_samples(u, cfg.box)
        for k, p in hat_norms:
            rows[f"hat_{k}_{p}"].append(hat_norm(gf, k, p))

    record(y, 0.0)
    truncated = False
    blowup_time = None
    t = 0.0
    for i in range(1, cfg.steps + 1):
        y = st.step(y)
        t = i * cfg.dt
        if not all(np.all(np.isfinite(v.view(np.float64))) for v in y):
            truncated = True
            blowup_time = t
            break
        if i % cfg.sample_stride == 0 or i == cfg.steps:
            times.append(t)
            record(y, t)

    final = None
    if keep_final_state and not truncated:
        fields = tuple(np.fft.ifft(v) for v in y)
        final = ZakharovState(*fields, t=t, box=cfg.box)
    return EvolutionTrace(
        times=np.asarray(times),
        series={k: np.asarray(v) for k, v in rows.items()},
        truncated=truncated,
        blowup_time=blowup_time,
        final_state=final,
    )


def plane_wave_solution(
    a: complex, kappa: float, nu: float, x: np.ndarray, t: float
) -> np.ndarray:
    """Closed form for constant n = nu and u0 = a exp(i kappa x):
    the product nonlinearity is a pure phase, so
    u(t) = a exp(i kappa x) exp(-i (kappa^2 + nu) t) and n stays nu."""
    return a * np.exp(1j * kappa * x) * np.exp(-1j * (kappa**2 + nu) * t)


@dataclass(frozen=True)
class LipschitzReport:
    params: dict
    ratios: dict[int, dict[float, float | None]]
    exact_matches: tuple[tuple[int, float], ...]
    stability: dict[int, float]
    truncations: tuple[tuple[int, float], ...]

    def max_stability(self) -> float:
        return max(self.stability.values()) if self.stability else math.inf


def _full_evolution_u(u0, n0, n1, cfg, sample_stride):
    """Evolve and return the sampled u fields (list of (t, u))."""
    n_plus0, n_minus0 = to_first_order(n0, n1, cfg.box, cfg.regularized)
    st = _Stepper(cfg)
    y = tuple(
        np.fft.fft(np.asarray(f, dtype=np.complex128))
        for f in (u0, n_plus0, n_minus0)
    )
    samples = [(0.0, np.fft.ifft(y[0]))]
    for i in range(1, cfg.steps + 1):
        y = st.step(y)
        if not all(np.all(np.isfinite(v.view(np.float64))) for v in y):
            return samples, i * cfg.dt
        if i % sample_stride == 0 or i == cfg.steps:
            samples.append((i * cfg.dt, np.fft.ifft(y[0])))
    return samples, None


def lipschitz_probe(
    k: float,
    l: float,
    p: float,
    amplitude: float,
    deltas: tuple[float, ...],
    seeds: tuple[int, ...],
    cfg: SolverConfig,
) -> LipschitzReport:
    """Finite-difference probe of the data-to-solution map.

    For each seed, evolve a rough base datum and perturbations
    u0 + delta*w with w of unit (k, p) norm (wave data perturbed in their
    own norms), and report sup over sampled times of
    |u - u'|_(k,p) / |u0 - u0'|_(k,p).  Stability of that ratio as delta
    shrinks is the observable; delta = 0 rows are reported as exact-match
    sentinels rather than 0/0.
    """
    ratios: dict[int, dict[float, float | None]] = {}
    exact, truncs = [], []
    stability: dict[int, float] = {}
    for seed in seeds:
        base_u = amplitude * unit_rough_data(
            RoughDataSpec(k=k, p=p, n=cfg.n, seed=seed, box=cfg.box)
        ).to_samples()
        n0 = amplitude * unit_rough_data(
            RoughDataSpec(l, p, cfg.n, seed + 1000, box=cfg.box, hermitian=True)
        ).to_samples().real
        n1 = amplitude * unit_rough_data(
            RoughDataSpec(l - 1.0, p, cfg.n, seed + 2000, box=cfg.box, hermitian=True)
        ).to_samples().real
        n1 = n1 - n1.mean()
        w_u = unit_rough_data(
            RoughDataSpec(k, p, cfg.n, seed + 3000, box=cfg.box)
        ).to_samples()
        w_n0 = unit_rough_data(
            RoughDataSpec(l, p, cfg.n, seed + 4000, box=cfg.box, hermitian=True)
        ).to_samples().real
        w_n1 = unit_rough_data(
            RoughDataSpec(l - 1.0, p, cfg.n, seed + 5000, box=cfg.box, hermitian=True)
        ).to_samples().real
        w_n1 = w_n1 - w_n1.mean()

        base_samples, base_cut = _full_evolution_u(base_u, n0, n1, cfg, cfg.sample_stride)
        if base_cut is not None:
            truncs.append((seed, base_cut))
        ratios[seed] = {}
        finite = []
        for delta in deltas:
            if delta == 0.0:
                ratios[seed][delta] = None
                exact.append((seed, delta))
                continue
            pert_samples, cut = _full_evolution_u(
                base_u + delta * w_u, n0 + delta * w_n0, n1 + delta * w_n1,
                cfg, cfg.sample_stride,
            )
            if cut is not None:
                truncs.append((seed, cut))
            denom = hat_norm(from_samples(delta * w_u, cfg.box), k, p)
            m = min(len(base_samples), len(pert_samples))
            sup = 0.0
            for (t0, ub), (t1, up) in zip(base_samples[:m], pert_samples[:m]):
                diff = hat_norm(from_samples(up - ub, cfg.box), k, p)
                sup = max(sup, diff / denom)
            ratios[seed][delta] = sup
            finite.append(sup)
        if finite:
            stability[seed] = max(finite) / min(finite) if min(finite) > 0 else math.inf
    return LipschitzReport(
        params={"k": k, "l": l, "p": p, "amplitude": amplitude,
                "deltas": list(deltas), "seeds": list(seeds)},
        ratios=ratios,
        exact_matches=tuple(exact),
        stability=stability,
        truncations=tuple(truncs),
    )


@dataclass(frozen=True)
class LifespanReport:
    mus: tuple[float, ...]
    departure_times: dict[float, float | None]
    slope: float | None
    reference_slope: float
    inconclusive: bool
    monitored: str = "sup_u"


def _departure_time(u0, n0, n1, cfg, factor=2.0):
    """First time sup|u| reaches factor * its initial value, by linear
    interpolation between steps; None if it never departs in budget."""
    n_plus0, n_minus0 = to_first_order(n0, n1, cfg.box, cfg.regularized)
    st = _Stepper(cfg)
    y = tuple(
        np.fft.fft(np.asarray(f, dtype=np.complex128))
        for f in (u0, n_plus0, n_minus0)
    )
    q0 = float(np.max(np.abs(np.fft.ifft(y[0]))))
    target = factor * q0
    prev_t, prev_q = 0.0, q0
    for i in range(1, cfg.steps + 1):
        y = st.step(y)
        t = i * cfg.dt
        if not all(np.all(np.isfinite(v.view(np.float64))) for v in y):
            return t  # blow-up counts as departure at detection time
        q = float(np.max(np.abs(np.fft.ifft(y[0]))))
        if q >= target:
            if q == prev_q:
                return t
            frac = (target - prev_q) / (q - prev_q)
            return prev_t + frac * (t - prev_t)
        prev_t, prev_q = t, q
    return None


def lifespan_probe(
    u0: GridFunction,
    n0: GridFunction,
    n1: GridFunction,
    mus: tuple[float, ...],
    cfg: SolverConfig,
    budget_factor: float = 4.0,
) -> LifespanReport:
    """Measure how the departure time scales under the focusing dilation.

    Data are dilated with amplitude exponents (3/2, 2, 4) for (u0, n0, n1)
    onto the box L/mu; time step and budget shrink by mu^-2 so each run
    resolves the sped-up dynamics equally.  Reports the log-log slope of
    departure time against mu next to the reference slope -2.
    """
    from .grids import dilate  # local import to keep module load light

    mus = tuple(sorted(mus))
    times: dict[float, float | None] = {}
    base_T = None
    for mu in mus:
        du = dilate(u0, mu, 1.5)
        dn0 = dilate(n0, mu, 2.0)
        dn1 = dilate(n1, mu, 4.0)
        scale = mu * mu
        if base_T is None:
            budget = cfg.t_final
            dt = cfg.dt
        else:
            budget = budget_factor * base_T / scale
            dt = cfg.dt / scale
            budget = math.ceil(budget / dt) * dt
        run_cfg = replace(
            cfg, box=u0.box[0] / mu, dt=dt, t_final=budget, sample_stride=1
        )
        t_dep = _departure_time(
            du.to_samples(), dn0.to_samples().real, dn1.to_samples().real, run_cfg
        )
        times[mu] = t_dep
        if base_T is None:
            if t_dep is None:
                return LifespanReport(
                    mus, times, None, -2.0, inconclusive=True
                )
            base_T = t_dep
    observed = [(mu, t) for mu, t in times.items() if t is not None and mu > 0]
    if len(observed) < 2:
        return LifespanReport(mus, times, None, -2.0, inconclusive=True)
    xs = np.log([mu for mu, _ in observed])
    ys = np.log([t for _, t in observed])
    slope = float(np.polyfit(xs, ys, 1)[0])
    return LifespanReport(
        mus, times, slope, -2.0, inconclusive=len(observed) < len(mus)
    )


def gaussian_focusing_data(
    n: int, box: float, amplitude: float
) -> tuple[GridFunction, GridFunction, GridFunction]:
    """Focusing preset: u0 = A exp(-x^2), n0 = -|u0|^2, n1 = 0."""
    x = -box / 2 + np.arange(n) * (box / n)
    u0 = amplitude * np.exp(-(x**2))
    n0 = -np.abs(u0) ** 2
    n1 = np.zeros_like(x)
    return (
        from_samples(u0, box, provenance="gaussian u0"),
        from_samples(n0, box, provenance="gaussian n0"),
        from_samples(n1, box, provenance="zero n1"),
    )
