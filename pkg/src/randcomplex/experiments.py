"""Monte Carlo harness: seeded regime trials, aggregates, and limit distances.

Trial t of an experiment always draws from RngStream(master_seed, t), and
aggregation is an ordered fold over trial index, so results are identical
for any worker count and any completion order. Integer statistics are
summed exactly; floating point enters only in derived means and distances.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from . import __version__
from .census import (
    CensusReport,
    cross_polytope_counts,
    empty_simplex_count,
    er_expected_faces,
    estimate_mu,
    faces_on_large_components,
    isolated_empty_simplex_count,
    subgraph_counts,
    tree_patterns_order5,
    y_count,
    z_count,
    MuEstimate,
)
from .complexes import f_vector
from .generators import (
    DensitySpec,
    RngStream,
    cech_complex,
    clique_complex,
    gen_er_graph,
    geometric_graph,
    sample_points,
)
from .homology import DEFAULT_PRIME, betti_numbers

MODELS = ("er_clique", "cech", "rips")


@dataclass(frozen=True)
class RegimeSpec:
    """One parameter regime: model, target degree, size, and scaling rule.

    Exactly one of the explicit parameter (p or r) and the scaling rule
    (gamma for ER: p = n^-gamma; alpha for the geometric models) must be
    given. The alpha rules pin the size/radius combinations under which
    the Betti counts have Poisson limits: n^k r^(d(k-1)) -> alpha for
    Cech, n^(2k+2) r^(d(2k+1)) -> alpha for Rips.
    """

    model: str
    k: int
    n: int
    d: int = 2
    p: float | None = None
    r: float | None = None
    gamma: float | None = None
    alpha: float | None = None
    density: str = "uniform_cube"
    field_prime: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.model == "er_clique":
            if self.k < 0:
                raise ValueError("k must be >= 0")
            if (self.p is None) == (self.gamma is None):
                raise ValueError("give exactly one of p or gamma")
        else:
            if self.d < 1:
                raise ValueError("d must be >= 1")
            if (self.r is None) == (self.alpha is None):
                raise ValueError("give exactly one of r or alpha")
            if self.model == "cech" and self.k < 3:
                raise ValueError("cech regime needs k >= 3 (Y/Z attachments)")
            if self.model == "rips" and self.k < 1:
                raise ValueError("rips regime needs k >= 1")

    def resolve_p(self) -> float:
        if self.model != "er_clique":
            raise ValueError("p applies to the er_clique model")
        p = self.p if self.p is not None else self.n ** (-self.gamma)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"resolved p={p} outside [0, 1]")
        return p

    def resolve_r(self) -> float:
        if self.model == "er_clique":
            raise ValueError("r applies to the geometric models")
        if self.r is not None:
            r = self.r
        elif self.model == "cech":
            r = (self.alpha / self.n**self.k) ** (1.0 / (self.d * (self.k - 1)))
        else:
            r = (self.alpha / self.n ** (2 * self.k + 2)) ** (
                1.0 / (self.d * (2 * self.k + 1))
            )
        if not r > 0:
            raise ValueError(f"resolved r={r} must be positive")
        return r

    def resolved_parameters(self) -> dict:
        if self.model == "er_clique":
            return {"p": self.resolve_p()}
        return {"r": self.resolve_r()}

    def regime_warnings(self) -> tuple[str, ...]:
        """Flags for hypotheses of the limit theorems that the size violates."""
        notes = []
        if self.model == "er_clique" and self.k >= 1 and self.n > 1:
            p = self.resolve_p()
            if p <= self.n ** (-1.0 / self.k):
                notes.append(
                    f"p={p:.6g} <= n^(-1/k): below the CLT regime lower edge"
                )
            if self.k >= 1 and p >= self.n ** (-1.0 / (self.k + 1)):
                notes.append(
                    f"p={p:.6g} >= n^(-1/(k+1)): above the CLT regime upper edge"
                )
        if self.model in ("cech", "rips") and self.n > 0:
            r = self.resolve_r()
            density_mass = self.n * r**self.d
            if density_mass > 0.5:
                notes.append(
                    f"n*r^d={density_mass:.4g} not small: outside the sparse regime"
                )
        return tuple(notes)


# ---------------------------------------------------------------------------
# Per-trial statistics
# ---------------------------------------------------------------------------


def _assert_morse(f: tuple[int, ...], betti: tuple[int, ...]) -> None:
    for k, b in enumerate(betti):
        lower = f[k] - (f[k - 1] if k >= 1 else 0) - f[k + 1]
        if not lower <= b <= f[k]:
            raise AssertionError(f"Morse violation at degree {k}: {lower} <= {b} <= {f[k]}")


def _er_trial(spec: RegimeSpec, rng: RngStream) -> dict[str, int]:
    g = gen_er_graph(spec.n, spec.resolve_p(), rng)
    c = clique_complex(g, spec.k + 1)
    f = f_vector(c)
    bv = betti_numbers(c, spec.k, spec.field_prime)
    _assert_morse(f, bv.betti)
    row: dict[str, int] = {f"f_{i}": v for i, v in enumerate(f)}
    for i, b in enumerate(bv.betti):
        row[f"betti_{i}"] = b
    return row


def _cech_trial(spec: RegimeSpec, rng: RngStream) -> dict[str, int]:
    pts = sample_points(spec.n, DensitySpec(spec.density, spec.d), rng)
    r = spec.resolve_r()
    g = geometric_graph(pts, r)
    k = spec.k
    c = cech_complex(pts, r, k - 1, graph=g)
    f = f_vector(c)
    bv = betti_numbers(c, k - 2, spec.field_prime)
    _assert_morse(f, bv.betti)
    s = empty_simplex_count(pts, r, k, g)
    s_iso = isolated_empty_simplex_count(pts, r, k, g)
    y = y_count(g, k)
    z = z_count(g, k)
    if not s_iso <= s:
        raise AssertionError(f"S_iso={s_iso} > S={s}")
    beta = bv.betti[k - 2]
    if not s_iso <= beta <= s + y + z:
        raise AssertionError(
            f"Cech sandwich violation: {s_iso} <= beta_{k-2}={beta} <= {s}+{y}+{z}"
        )
    row: dict[str, int] = {f"f_{i}": v for i, v in enumerate(f)}
    for i, b in enumerate(bv.betti):
        row[f"betti_{i}"] = b
    row[f"S_{k}"] = s
    row[f"S_iso_{k}"] = s_iso
    row[f"Y_{k}"] = y
    row[f"Z_{k}"] = z
    return row


def _rips_trial(spec: RegimeSpec, rng: RngStream) -> dict[str, int]:
    pts = sample_points(spec.n, DensitySpec(spec.density, spec.d), rng)
    r = spec.resolve_r()
    g = geometric_graph(pts, r)
    k = spec.k
    c = clique_complex(g, k + 1)
    f = f_vector(c)
    bv = betti_numbers(c, k, spec.field_prime)
    _assert_morse(f, bv.betti)
    o_ind, o_comp = cross_polytope_counts(g, k)
    fge = faces_on_large_components(c, g, k, 2 * k + 3)
    beta = bv.betti[k]
    if not o_comp <= beta <= o_comp + fge:
        raise AssertionError(
            f"Rips sandwich violation: {o_comp} <= beta_{k}={beta} <= {o_comp}+{fge}"
        )
    row: dict[str, int] = {f"f_{i}": v for i, v in enumerate(f)}
    for i, b in enumerate(bv.betti):
        row[f"betti_{i}"] = b
    row[f"o_{k}"] = o_ind
    row[f"o_comp_{k}"] = o_comp
    row[f"f_{k}_ge_{2 * k + 3}"] = fge
    if k == 1:
        t1, t2, t3 = subgraph_counts(g, tree_patterns_order5(), induced=False)
        if fge > 4 * (t1 + t2 + t3):
            raise AssertionError(
                f"tree bound violation: f_1_ge_5={fge} > 4*({t1}+{t2}+{t3})"
            )
        row["t1"] = t1
        row["t2"] = t2
        row["t3"] = t3
    return row


_TRIAL_FNS = {"er_clique": _er_trial, "cech": _cech_trial, "rips": _rips_trial}


def _run_trial(args: tuple[RegimeSpec, int, int]) -> dict[str, int]:
    spec, master_seed, t = args
    return _TRIAL_FNS[spec.model](spec, RngStream(master_seed, t))


# ---------------------------------------------------------------------------
# Experiment results
# ---------------------------------------------------------------------------


@dataclass
class ExperimentResult:
    regime: RegimeSpec
    trials: int
    master_seed: int
    columns: tuple[str, ...]
    per_trial: tuple[tuple[int, ...], ...]
    sums: dict[str, int]
    sum_squares: dict[str, int]
    means: dict[str, float]
    variances: dict[str, float]
    tv_to_poisson: dict[str, float]
    ks_to_normal: dict[str, float]
    warnings: tuple[str, ...] = ()

    def column(self, name: str) -> list[int]:
        i = self.columns.index(name)
        return [row[i] for row in self.per_trial]

    def to_summary_dict(self) -> dict:
        regime = asdict(self.regime)
        regime["resolved"] = self.regime.resolved_parameters()
        return {
            "version": __version__,
            "regime": regime,
            "trials": self.trials,
            "master_seed": self.master_seed,
            "aggregates": {
                name: {
                    "sum": self.sums[name],
                    "sum_squares": self.sum_squares[name],
                    "mean": self.means[name],
                    "variance": self.variances[name],
                }
                for name in self.columns
            },
            "tv_to_poisson": self.tv_to_poisson,
            "ks_to_normal": self.ks_to_normal,
            "warnings": list(self.warnings),
        }

    def summary_json(self) -> str:
        return json.dumps(self.to_summary_dict(), sort_keys=True, indent=2) + "\n"

    def trials_csv(self) -> str:
        header = "# config: " + json.dumps(
            {
                "regime": {**asdict(self.regime), "resolved": self.regime.resolved_parameters()},
                "trials": self.trials,
                "master_seed": self.master_seed,
                "version": __version__,
            },
            sort_keys=True,
        )
        lines = [header, ",".join(("trial",) + self.columns)]
        for t, row in enumerate(self.per_trial):
            lines.append(",".join([str(t)] + [str(v) for v in row]))
        return "\n".join(lines) + "\n"


def run_experiment(
    spec: RegimeSpec, trials: int, master_seed: int, workers: int = 1
) -> ExperimentResult:
    """Run seeded trials of a regime and aggregate the census statistics.

    Trial t uses RngStream(master_seed, t); the per-trial rows, their exact
    integer sums, and all derived distances are independent of the worker
    count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    spec.resolved_parameters()  # validate the regime before spawning workers
    args = [(spec, master_seed, t) for t in range(trials)]
    if workers <= 1:
        rows = [_run_trial(a) for a in args]
    else:
        chunk = max(1, trials // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_trial, args, chunksize=chunk))
    columns = tuple(rows[0].keys())
    table = tuple(tuple(row[c] for c in columns) for row in rows)
    sums = {c: 0 for c in columns}
    sum_squares = {c: 0 for c in columns}
    for row in table:
        for c, v in zip(columns, row):
            sums[c] += v
            sum_squares[c] += v * v
    means = {c: sums[c] / trials for c in columns}
    variances = {}
    for c in columns:
        if trials > 1:
            ss = sum_squares[c] - sums[c] * sums[c] / trials
            variances[c] = max(ss, 0.0) / (trials - 1)
        else:
            variances[c] = 0.0
    col_values = {c: [row[i] for row in table] for i, c in enumerate(columns)}
    tv = {}
    ks = {}
    for c in columns:
        if means[c] > 0:
            tv[c] = tv_to_poisson(col_values[c], means[c])
        if variances[c] > 0:
            ks[c] = ks_to_normal(col_values[c], means[c], math.sqrt(variances[c]))
    return ExperimentResult(
        regime=spec,
        trials=trials,
        master_seed=master_seed,
        columns=columns,
        per_trial=table,
        sums=sums,
        sum_squares=sum_squares,
        means=means,
        variances=variances,
        tv_to_poisson=tv,
        ks_to_normal=ks,
        warnings=spec.regime_warnings(),
    )


# ---------------------------------------------------------------------------
# Empirical distances to the limit laws
# ---------------------------------------------------------------------------


def _poisson_log_pmf(j: int, lam: float) -> float:
    return j * math.log(lam) - lam - math.lgamma(j + 1)


def tv_to_poisson(samples, lam: float, weights=None) -> float:
    """Total variation distance between the empirical pmf and Poisson(lam).

    Summation runs from 0 to the first point where the Poisson upper tail
    drops below 1e-12 (and at least to the largest sample), so the cutoff
    is deterministic. `weights` lets callers pass an exact pmf instead of
    equal-weight samples.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("samples must be nonempty")
    if not lam > 0:
        raise ValueError("lam must be positive")
    if weights is None:
        weights = [1.0 / len(samples)] * len(samples)
    else:
        weights = list(weights)
        if len(weights) != len(samples):
            raise ValueError("weights must align with samples")
    emp: dict[int, float] = {}
    for x, w in zip(samples, weights):
        j = int(x)
        if j < 0:
            raise ValueError("samples must be non-negative integers")
        emp[j] = emp.get(j, 0.0) + w
    cutoff = max(emp)
    cumulative = 0.0
    j = 0
    while cumulative < 1.0 - 1e-12:
        cumulative += math.exp(_poisson_log_pmf(j, lam))
        j += 1
        if j > lam + 40.0 * math.sqrt(lam) + 100:
            break
    cutoff = max(cutoff, j - 1)
    total = 0.0
    for i in range(cutoff + 1):
        total += abs(emp.get(i, 0.0) - math.exp(_poisson_log_pmf(i, lam)))
    return 0.5 * total


def _std_normal_cdf(t: float) -> float:
    return 0.5 * (1.0 + math.erf(t / math.sqrt(2.0)))


def ks_to_normal(samples, center: float, scale: float) -> float:
    """One-sample Kolmogorov-Smirnov statistic of (x - center)/scale vs Phi."""
    samples = list(samples)
    if not samples:
        raise ValueError("samples must be nonempty")
    if not scale > 0:
        raise ValueError("scale must be positive")
    z = sorted((x - center) / scale for x in samples)
    m = len(z)
    d = 0.0
    for i, t in enumerate(z):
        phi = _std_normal_cdf(t)
        d = max(d, (i + 1) / m - phi, phi - i / m)
    return d


# ---------------------------------------------------------------------------
# Leading-order predictions
# ---------------------------------------------------------------------------


def density_power_integral(density: str, d: int, k: int) -> float:
    """Closed form of the density factor integral of f(x)^k over R^d."""
    if density == "uniform_cube":
        return 1.0
    if density == "gaussian":
        # product of d one-dimensional integrals of phi(t)^k
        return (2.0 * math.pi) ** (-(k - 1) * d / 2.0) * k ** (-d / 2.0)
    raise ValueError(f"unknown density {density!r}")


def theorem_targets(
    spec: RegimeSpec,
    mu_estimate: MuEstimate | None = None,
    rng: RngStream | None = None,
    mu_samples: int = 500_000,
) -> dict[str, float]:
    """Named leading-order predictions for the regime.

    ER predictions are exact expectations (the Betti expectation is
    bracketed by the Morse sandwich). Cech predictions scale the
    empty-simplex integral estimate; Rips predictions expose the scaling
    normalizer whose constant the theory leaves unnamed.
    """
    if spec.model == "er_clique":
        p = spec.resolve_p()
        e_k = er_expected_faces(spec.n, spec.k, p)
        e_lo = er_expected_faces(spec.n, spec.k - 1, p) if spec.k >= 1 else 0.0
        e_hi = er_expected_faces(spec.n, spec.k + 1, p)
        return {
            "expected_f_k": e_k,
            "betti_expectation_lower": e_k - e_lo - e_hi,
            "betti_expectation_upper": e_k,
        }
    r = spec.resolve_r()
    if spec.model == "cech":
        if spec.k < 3:
            raise ValueError("mu estimate unavailable for k < 3")
        if mu_estimate is None:
            if rng is None:
                raise ValueError("need mu_estimate or an RngStream to estimate mu")
            mu_estimate = estimate_mu(spec.k, spec.d, mu_samples, rng)
        scaling = spec.n**spec.k * r ** (spec.d * (spec.k - 1))
        factor = (
            scaling
            * density_power_integral(spec.density, spec.d, spec.k)
            / math.factorial(spec.k)
        )
        return {
            "scaling": scaling,
            "mu": mu_estimate.value,
            "mu_std_error": mu_estimate.std_error,
            "expected_isolated_empty": factor * mu_estimate.value,
            "expected_isolated_empty_std_error": factor * mu_estimate.std_error,
        }
    scaling = spec.n ** (2 * spec.k + 2) * r ** (spec.d * (2 * spec.k + 1))
    return {"scaling": scaling}


# ---------------------------------------------------------------------------
# Single-instance census (CLI `census`)
# ---------------------------------------------------------------------------


def instance_census(spec: RegimeSpec, rng: RngStream) -> CensusReport:
    """Full census of one generated instance of the regime.

    The Euler characteristic is reported only when the built complex is
    provably full-dimensional (its top face layer is empty, so no face
    exists above the cap).
    """
    k = spec.k
    if spec.model == "er_clique":
        g = gen_er_graph(spec.n, spec.resolve_p(), rng)
        c = clique_complex(g, k + 1)
        bv = betti_numbers(c, k, spec.field_prime)
        report = CensusReport(f=f_vector(c), betti=bv.betti)
    elif spec.model == "cech":
        pts = sample_points(spec.n, DensitySpec(spec.density, spec.d), rng)
        r = spec.resolve_r()
        g = geometric_graph(pts, r)
        c = cech_complex(pts, r, k - 1, graph=g)
        bv = betti_numbers(c, k - 2, spec.field_prime)
        report = CensusReport(
            f=f_vector(c),
            betti=bv.betti,
            s_empty={k: empty_simplex_count(pts, r, k, g)},
            s_isolated={k: isolated_empty_simplex_count(pts, r, k, g)},
            y_count={k: y_count(g, k)},
            z_count={k: z_count(g, k)},
        )
    else:
        pts = sample_points(spec.n, DensitySpec(spec.density, spec.d), rng)
        r = spec.resolve_r()
        g = geometric_graph(pts, r)
        c = clique_complex(g, k + 1)
        bv = betti_numbers(c, k, spec.field_prime)
        o_ind, o_comp = cross_polytope_counts(g, k)
        report = CensusReport(
            f=f_vector(c),
            betti=bv.betti,
            o_induced={k: o_ind},
            o_component={k: o_comp},
            f_ge={
                (k, 1): len(c.faces[k]),
                (k, 2 * k + 3): faces_on_large_components(c, g, k, 2 * k + 3),
            },
        )
    if report.f[-1] == 0:
        report.euler = sum((-1) ** i * v for i, v in enumerate(report.f))
    report.validate()
    return report
