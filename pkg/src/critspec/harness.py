"""End-to-end verification and randomized stress testing.

``verify_critical_realizability`` takes a list, computes its critical
points, runs the necessary-condition battery on them, and then tries
every certificate construction that applies.  ``hunt`` repeats that over
seeded random realizable spectra, escalating any condition failure
before reporting it as an alarm, since a genuine alarm would be a
counterexample to the conjecture that critical points of realizable
lists are realizable.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericError
from .moments import (
    ConditionReport,
    _jll_compare,
    check_necessary_conditions,
    critical_moment,
    power_sums,
)
from .polynomial import (
    MonicPolynomial,
    antiderivative_monic,
    derivative_monic,
    from_roots,
    roots,
)
from .realizers import (
    MatrixSignClass,
    circulant,
    companion,
    d_companion,
    hadamard_similarity,
    matrix_sign_class,
    principal_submatrix,
    spectrum,
)
from .spectra import (
    Classification,
    SpectrumLike,
    SpectrumList,
    as_spectrum,
    classify,
    pairing_residual,
)

__all__ = [
    "ENSEMBLES",
    "ROUTE_NAMES",
    "VerifyConfig",
    "RouteResult",
    "RealizabilityReport",
    "HuntConfig",
    "AlarmRecord",
    "HuntReport",
    "ChainStep",
    "ChainReport",
    "verify_critical_realizability",
    "random_realizable",
    "hunt",
    "antiderivative_chain",
]

ENSEMBLES = (
    "dense-uniform",
    "sparse-bernoulli",
    "row-stochastic",
    "circulant-nonnegative",
)

ROUTE_NAMES = ("companion", "d-companion", "dft-circulant", "hadamard")


@dataclass(frozen=True)
class VerifyConfig:
    """Tolerances and optional extras for a verification run.

    tol        tolerance for condition checks and sign tests
    match_tol  tolerance for spectrum-to-spectrum pairing
    kmax       moment depth (None means 4 * list size)
    jll_depth  grid depth for the power-sum inequality
    hadamard   optional complex Hadamard matrix enabling the fourth route
    """

    tol: float = 1e-9
    match_tol: float = 1e-7
    kmax: int | None = None
    jll_depth: int = 8
    hadamard: np.ndarray | None = None


@dataclass(frozen=True)
class RouteResult:
    """Outcome of one certificate construction attempt."""

    name: str
    attempted: bool
    succeeded: bool
    certificate: np.ndarray | None
    reason: str | None
    residual: float | None


@dataclass(frozen=True)
class RealizabilityReport:
    input: SpectrumList
    critical: SpectrumList
    conditions: ConditionReport
    input_class: Classification
    critical_class: Classification
    routes: tuple[RouteResult, ...]
    verdict: str


@dataclass(frozen=True)
class HuntConfig:
    n_min: int
    n_max: int
    samples: int
    seed: int
    ensemble: str = "dense-uniform"
    tol: float = 1e-9
    match_tol: float = 1e-7
    kmax: int | None = None
    jll_depth: int = 8


@dataclass(frozen=True)
class AlarmRecord:
    sample_index: int
    order: int
    report: RealizabilityReport


@dataclass(frozen=True)
class HuntReport:
    seed: int
    ensemble: str
    n_min: int
    n_max: int
    samples: int
    certified: int
    uncertified: int
    alarms: tuple[AlarmRecord, ...]
    route_successes: dict[str, int] = field(default_factory=dict)
    wall_clock: float = 0.0


def _finish_route(
    name: str, M: np.ndarray, crit: SpectrumList, cfg: VerifyConfig
) -> RouteResult:
    """Sign-check a candidate certificate and match its spectrum to crit."""
    try:
        sign = matrix_sign_class(M, cfg.tol)
    except ValueError as exc:
        return RouteResult(name, True, False, None, str(exc), None)
    if sign is not MatrixSignClass.NONNEGATIVE:
        return RouteResult(
            name,
            True,
            False,
            None,
            f"matrix is not entrywise nonnegative (sign class: {sign.value})",
            None,
        )
    try:
        got = spectrum(M)
    except NumericError as exc:
        return RouteResult(name, True, False, None, str(exc), None)
    residual = pairing_residual(got, crit, cfg.match_tol)
    if residual <= cfg.match_tol:
        return RouteResult(name, True, True, M, None, float(residual))
    return RouteResult(
        name,
        True,
        False,
        None,
        f"spectrum mismatch: worst pairing distance {residual:.3e}",
        float(residual),
    )


def _companion_route(
    dp: MonicPolynomial, crit: SpectrumList, cfg: VerifyConfig
) -> RouteResult:
    return _finish_route("companion", companion(dp), crit, cfg)


def _dcompanion_route(
    spec: SpectrumList, crit: SpectrumList, cfg: VerifyConfig
) -> RouteResult:
    return _finish_route("d-companion", d_companion(spec), crit, cfg)


def _dft_arrangement(spec: SpectrumList, tol_abs: float) -> np.ndarray | None:
    """Order the list as DFT frequency content d with d[n-j] = conj(d[j]).

    The dominant real entry goes to frequency 0 and, for even order, the
    smallest remaining real entry goes to frequency n/2.  Conjugate
    pairs take mirrored slots; leftover real entries must pair up with
    equal values to share a mirrored slot.  Returns None when no such
    ordering exists.
    """
    n = len(spec)
    reals: list[float] = []
    ups: list[complex] = []
    downs: list[complex] = []
    for z in spec:
        if abs(z.imag) <= tol_abs:
            reals.append(z.real)
        elif z.imag > 0:
            ups.append(z)
        else:
            downs.append(z)
    if len(ups) != len(downs):
        return None
    used = [False] * len(downs)
    for u in ups:
        best, best_d = -1, float("inf")
        for j, dn in enumerate(downs):
            if not used[j] and abs(u.conjugate() - dn) < best_d:
                best, best_d = j, abs(u.conjugate() - dn)
        if best < 0 or best_d > 2.0 * tol_abs:
            return None
        used[best] = True
    if not reals:
        return None
    reals.sort(reverse=True)
    d = np.zeros(n, dtype=complex)
    d[0] = reals.pop(0)
    if n % 2 == 0:
        if not reals:
            return None
        d[n // 2] = reals.pop()
    slots = list(range(1, (n - 1) // 2 + 1))
    ups.sort(key=lambda z: (-z.imag, -z.real))
    for u in ups:
        if not slots:
            return None
        j = slots.pop(0)
        d[j] = u
        d[n - j] = u.conjugate()
    if len(reals) % 2 != 0:
        return None
    reals.sort(reverse=True)
    while reals:
        r1 = reals.pop(0)
        r2 = reals.pop(0)
        if abs(r1 - r2) > 2.0 * tol_abs or not slots:
            return None
        j = slots.pop(0)
        d[j] = d[n - j] = 0.5 * (r1 + r2)
    return d


def _dft_route(
    spec: SpectrumList, crit: SpectrumList, cfg: VerifyConfig
) -> RouteResult:
    name = "dft-circulant"
    tol_abs = cfg.tol * (1.0 + spec.spectral_radius)
    d = _dft_arrangement(spec, tol_abs)
    if d is None:
        return RouteResult(
            name,
            True,
            False,
            None,
            "no conjugate-symmetric frequency arrangement exists",
            None,
        )
    c = np.fft.ifft(d)
    if float(np.max(np.abs(c.imag))) > tol_abs:
        return RouteResult(
            name, True, False, None, "inverse transform is not real", None
        )
    C = circulant(c.real)
    try:
        sign = matrix_sign_class(C, cfg.tol)
    except ValueError as exc:
        return RouteResult(name, True, False, None, str(exc), None)
    if sign is not MatrixSignClass.NONNEGATIVE:
        return RouteResult(
            name,
            True,
            False,
            None,
            f"circulant is not entrywise nonnegative (min entry {float(c.real.min()):.3e})",
            None,
        )
    # Every principal submatrix of a circulant realizer carries the
    # critical points; use the first.
    return _finish_route(name, principal_submatrix(C, 1), crit, cfg)


def _hadamard_route(
    spec: SpectrumList, crit: SpectrumList, cfg: VerifyConfig
) -> RouteResult:
    name = "hadamard"
    if cfg.hadamard is None:
        return RouteResult(
            name, False, False, None, "no similarity matrix supplied", None
        )
    try:
        A = hadamard_similarity(spec, cfg.hadamard)
    except ValueError as exc:
        return RouteResult(name, True, False, None, str(exc), None)
    try:
        sign = matrix_sign_class(A, cfg.tol)
    except ValueError as exc:
        return RouteResult(name, True, False, None, str(exc), None)
    if sign is not MatrixSignClass.NONNEGATIVE:
        return RouteResult(
            name,
            True,
            False,
            None,
            f"similarity image is not entrywise nonnegative (sign class: {sign.value})",
            None,
        )
    return _finish_route(name, principal_submatrix(A.real, 1), crit, cfg)


def verify_critical_realizability(
    lam: SpectrumLike, config: VerifyConfig | None = None
) -> RealizabilityReport:
    """Check the critical points of lam for realizability.

    The verdict is "condition-violation" when a necessary condition
    fails on the critical points, "certified" when some construction
    produced a nonnegative matrix whose spectrum matches them, and
    "conditions-hold-uncertified" otherwise.
    """
    cfg = config if config is not None else VerifyConfig()
    spec = as_spectrum(lam)
    if len(spec) < 2:
        raise ValueError("verification needs a list of at least two entries")
    p = from_roots(spec)
    dp = derivative_monic(p)
    crit = roots(dp)
    conditions = check_necessary_conditions(
        crit, kmax=cfg.kmax, jll_depth=cfg.jll_depth, tol=cfg.tol
    )
    routes = (
        _companion_route(dp, crit, cfg),
        _dcompanion_route(spec, crit, cfg),
        _dft_route(spec, crit, cfg),
        _hadamard_route(spec, crit, cfg),
    )
    if not conditions.overall:
        verdict = "condition-violation"
    elif any(r.succeeded for r in routes):
        verdict = "certified"
    else:
        verdict = "conditions-hold-uncertified"
    return RealizabilityReport(
        input=spec,
        critical=crit,
        conditions=conditions,
        input_class=classify(spec, cfg.tol),
        critical_class=classify(crit, cfg.tol),
        routes=routes,
        verdict=verdict,
    )


def random_realizable(
    n: int, seed, ensemble: str = "dense-uniform"
) -> tuple[SpectrumList, np.ndarray]:
    """Spectrum and matrix of a random entrywise-nonnegative matrix.

    ``seed`` is anything numpy's default_rng accepts, including an
    existing Generator, which is drawn from in place.
    """
    if n < 2:
        raise ValueError("order must be at least 2")
    if ensemble not in ENSEMBLES:
        raise ValueError(f"unknown ensemble {ensemble!r}; choose from {ENSEMBLES}")
    rng = np.random.default_rng(seed)
    if ensemble == "dense-uniform":
        M = rng.random((n, n))
    elif ensemble == "sparse-bernoulli":
        values = rng.random((n, n))
        mask = rng.random((n, n)) < 0.35
        M = values * mask
    elif ensemble == "row-stochastic":
        M = rng.random((n, n))
        M = M / M.sum(axis=1, keepdims=True)
    else:
        M = circulant(rng.random(n))
    return spectrum(M), M


def _moment_cross_check(lam: SpectrumList, crit: SpectrumList, depth: int) -> None:
    """Moments of computed critical points must match the determinant formula."""
    direct = power_sums(crit, depth)
    for k in range(1, depth + 1):
        a = complex(direct[k - 1])
        b = critical_moment(lam, k)
        if abs(a - b) > 1e-6 * max(1.0, abs(a), abs(b)):
            raise NumericError(
                f"critical-moment cross-check failed at k={k}: "
                f"direct {a}, determinant formula {b}"
            )


def _confirm_alarm(lam: SpectrumList, crit: SpectrumList, cfg: VerifyConfig) -> bool:
    """Re-run a failed condition battery tighter before believing it.

    The recheck drops the tolerance a hundredfold, and any moment or
    power-sum failure must reproduce through the determinant formula
    computed from the original list, which never touches the computed
    critical points.  Only failures that survive both are alarms.
    """
    tight_tol = cfg.tol / 100.0
    tight = check_necessary_conditions(
        crit, kmax=cfg.kmax, jll_depth=cfg.jll_depth, tol=tight_tol
    )
    if tight.overall:
        return False
    if not tight.self_conjugate or not tight.spectral_radius_in_list:
        return True
    n = len(crit)
    rho = crit.spectral_radius
    for mc in tight.moment_checks:
        if mc.passed:
            continue
        v = critical_moment(lam, mc.k)
        try:
            tk = tight_tol * (1.0 + rho) ** mc.k
        except OverflowError:
            tk = math.inf
        if v.real < -tk or abs(v.imag) > tk:
            return True
    for jc in tight.jll_checks:
        if jc.passed:
            continue
        a = critical_moment(lam, jc.k).real
        b = critical_moment(lam, jc.k * jc.m).real
        try:
            slack = tight_tol * float(n) ** (jc.m - 1) * (1.0 + rho) ** (jc.k * jc.m)
        except OverflowError:
            slack = math.inf
        _, _, ok = _jll_compare(a, b, n, jc.m, slack)
        if not ok:
            return True
    return False


def hunt(config: HuntConfig) -> HuntReport:
    """Stress-test realizability of critical points over random spectra.

    Fully deterministic for a given config: sample i draws from a
    generator seeded by (seed, i), so reports are reproducible and
    individual samples can be replayed in isolation.
    """
    if config.samples < 1:
        raise ValueError("need at least one sample")
    if config.n_min < 2 or config.n_max < config.n_min:
        raise ValueError("order range must satisfy 2 <= n_min <= n_max")
    if config.ensemble not in ENSEMBLES:
        raise ValueError(
            f"unknown ensemble {config.ensemble!r}; choose from {ENSEMBLES}"
        )
    vcfg = VerifyConfig(
        tol=config.tol,
        match_tol=config.match_tol,
        kmax=config.kmax,
        jll_depth=config.jll_depth,
    )
    start = time.perf_counter()
    certified = 0
    uncertified = 0
    alarms: list[AlarmRecord] = []
    successes = {name: 0 for name in ROUTE_NAMES}
    for i in range(config.samples):
        rng = np.random.default_rng(np.random.SeedSequence([config.seed, i]))
        n = int(rng.integers(config.n_min, config.n_max + 1))
        lam, _ = random_realizable(n, rng, config.ensemble)
        report = verify_critical_realizability(lam, vcfg)
        depth = config.kmax if config.kmax is not None else 4 * len(report.critical)
        _moment_cross_check(lam, report.critical, depth)
        for r in report.routes:
            if r.succeeded:
                successes[r.name] += 1
        if report.verdict == "condition-violation":
            if _confirm_alarm(lam, report.critical, vcfg):
                alarms.append(AlarmRecord(sample_index=i, order=n, report=report))
                continue
            # The failure evaporated under escalation: count the sample
            # by what the routes say instead.
            if any(r.succeeded for r in report.routes):
                certified += 1
            else:
                uncertified += 1
        elif report.verdict == "certified":
            certified += 1
        else:
            uncertified += 1
    return HuntReport(
        seed=config.seed,
        ensemble=config.ensemble,
        n_min=config.n_min,
        n_max=config.n_max,
        samples=config.samples,
        certified=certified,
        uncertified=uncertified,
        alarms=tuple(alarms),
        route_successes=successes,
        wall_clock=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class ChainStep:
    polynomial: MonicPolynomial
    constant: complex
    sign_class: MatrixSignClass
    root_list: SpectrumList


@dataclass(frozen=True)
class ChainReport:
    start: MonicPolynomial
    steps: tuple[ChainStep, ...]
    all_nonnegative: bool


def antiderivative_chain(p: MonicPolynomial, constants) -> ChainReport:
    """Iterate monic antiderivatives, tracking companion sign and roots.

    The starting polynomial must have a nonnegative companion matrix.
    With nonpositive coefficients and nonpositive constants the chain
    stays companion-nonnegative forever; a positive constant breaks the
    pattern at that step, and the report shows where.
    """
    if matrix_sign_class(companion(p)) is not MatrixSignClass.NONNEGATIVE:
        raise ValueError("the starting companion matrix must be nonnegative")
    steps: list[ChainStep] = []
    q = p
    for c in constants:
        q = antiderivative_monic(q, c)
        try:
            sign = matrix_sign_class(companion(q))
        except ValueError:
            sign = MatrixSignClass.NEITHER
        steps.append(
            ChainStep(
                polynomial=q,
                constant=complex(c),
                sign_class=sign,
                root_list=roots(q),
            )
        )
    return ChainReport(
        start=p,
        steps=tuple(steps),
        all_nonnegative=all(s.sign_class is MatrixSignClass.NONNEGATIVE for s in steps),
    )
