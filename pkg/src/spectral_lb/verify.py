"""Verification campaigns: evaluate bound families against reference spectra.

Every (domain, family, k) cell becomes exactly one record; evaluation errors
become records whose status carries the error label instead of crashing the
campaign.  Output is a pure function of the configuration (plus its seed), so
two runs of the same campaign are byte-identical after serialization.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import clamped_bounds, laplace_bounds
from .band import band_from_a
from .config import (
    FAMILY_REGISTRY,
    MUST_HOLD_FAMILIES,
    CampaignConfig,
    FamilyRequest,
    LabeledDomain,
)
from .errors import ConfigError
from .evaluation import BoundEvaluation
from .geometry import Ball, Box, SpectralConstants, domain_constants
from .spectra import (
    FD_ORACLE_MAX_K,
    FD_RELATIVE_TOLERANCE,
    Spectrum,
    ball_spectrum,
    beam_spectrum,
    box_spectrum,
    fd_clamped_square,
)

__all__ = [
    "VerificationRecord",
    "run_verification",
    "must_hold_violations",
    "compare_families",
    "ComparisonTable",
    "evaluate_family",
]

ABS_TOL = 1e-9
REL_TOL_EXACT = 1e-12


@dataclass(frozen=True)
class VerificationRecord:
    """One (domain, operator, family, k) verification row."""

    domain: str
    operator: str
    family: str
    k: int
    bound: float | None
    oracle: float | None
    margin: float | None
    ratio: float | None
    status: str
    params: str


def evaluate_family(
    family_id: str,
    constants: SpectralConstants,
    k: int,
    params: dict,
    band_policy: str = "isoperimetric",
    variant: str = "printed",
    tiling: bool = False,
) -> BoundEvaluation:
    """Dispatch one family evaluation; ``params`` carries the per-family knobs."""
    band = None
    if params.get("band_a") is not None:
        n_eff = constants.n + 3 if family_id in ("ji-xu-clamped", "gamma-k") else constants.n
        band = band_from_a(n_eff, float(params["band_a"]))
    if family_id == "li-yau":
        return laplace_bounds.li_yau_sum(constants, k)
    if family_id == "polya-ref":
        return laplace_bounds.polya_reference(constants, k, tiling=tiling)
    if family_id == "melas":
        return laplace_bounds.melas_sum(constants, k, float(params["c_n"]))
    if family_id == "kvw":
        return laplace_bounds.kvw_sum(constants, k, float(params["a0"]), float(params["C"]))
    if family_id == "ji-xu-n2":
        return laplace_bounds.jixu_n2_sum(constants, k)
    if family_id == "ji-xu-mt":
        return laplace_bounds.jixu_mt_sum(
            constants, k, band_policy=band_policy, variant=variant, band=band
        )
    if family_id == "ji-xu-gmt":
        return laplace_bounds.jixu_gmt_sum(
            constants, k, int(params["m"]), band_policy=band_policy, variant=variant, band=band
        )
    if family_id == "lambda-k-mt":
        return laplace_bounds.lambda_k_lower(
            constants, k, source="mt", band_policy=band_policy, variant=variant, band=band
        )
    if family_id == "lambda-k-gmt":
        return laplace_bounds.lambda_k_lower(
            constants,
            k,
            source="gmt",
            m=int(params["m"]),
            band_policy=band_policy,
            variant=variant,
            band=band,
        )
    if family_id == "levine-protter":
        return clamped_bounds.levine_protter_sum(constants, k)
    if family_id in ("cheng-wei-1", "cheng-wei-2"):
        version = int(params.get("version", family_id[-1]))
        return clamped_bounds.cheng_wei_sum(constants, k, version=version)
    if family_id == "cheng-wei-upper":
        return clamped_bounds.cheng_wei_upper(
            constants, k, float(params["r0"]), float(params["v_shell"])
        )
    if family_id == "yy-tse":
        return clamped_bounds.yy_tse_sum(constants, k)
    if family_id == "ji-xu-clamped":
        return clamped_bounds.jixu_clamped_sum(
            constants, k, int(params["m"]), band=band, band_policy=band_policy, variant=variant
        )
    if family_id == "gamma-k":
        return clamped_bounds.gamma_k_lower(
            constants, k, int(params["m"]), band=band, band_policy=band_policy, variant=variant
        )
    raise ConfigError(f"unknown family id {family_id!r}")


class _OracleCache:
    """Lazily built reference spectra, one per (domain, operator)."""

    def __init__(self, cfg: CampaignConfig):
        self._cfg = cfg
        self._cache: dict[tuple[str, str], tuple[Spectrum | None, str]] = {}

    def get(self, domain: LabeledDomain, operator: str) -> tuple[Spectrum | None, str]:
        key = (domain.label, operator)
        if key not in self._cache:
            self._cache[key] = self._build(domain, operator)
        return self._cache[key]

    def _build(self, domain: LabeledDomain, operator: str) -> tuple[Spectrum | None, str]:
        spec = domain.spec
        count = self._cfg.k_stop
        if operator == "laplace":
            if isinstance(spec.shape, Box):
                return box_spectrum(spec.shape.lengths, count), "exact"
            if isinstance(spec.shape, Ball) and spec.dimension in (2, 3):
                return ball_spectrum(spec.dimension, spec.shape.radius, count), "exact"
            return None, "none"
        if isinstance(spec.shape, Box) and spec.dimension == 1:
            return beam_spectrum(spec.shape.lengths[0], count), "exact"
        if (
            isinstance(spec.shape, Box)
            and spec.dimension == 2
            and self._cfg.fd_grid >= 8
            and abs(spec.shape.lengths[0] - spec.shape.lengths[1])
            <= 1e-12 * spec.shape.lengths[0]
        ):
            side = spec.shape.lengths[0]
            unit = fd_clamped_square(
                self._cfg.fd_grid, self._cfg.fd_extrapolate, min(count, FD_ORACLE_MAX_K)
            )
            scaled = [v / side**4 for v in unit.eigenvalues]
            return Spectrum.from_values("bilaplace", scaled, unit.provenance), "fd"
        return None, "none"


def _params_echo(ev: BoundEvaluation, oracle_kind: str) -> str:
    parts: list[str] = []
    if ev.variant is not None:
        parts.append(f"variant={ev.variant}")
    if ev.band_policy is not None:
        parts.append(f"band={ev.band_policy}")
    for name, value in ev.params:
        parts.append(f"{name}={value!r}")
    if ev.per_eigenvalue:
        parts.append("per-eigenvalue")
    if ev.conjectural:
        parts.append("conjectural")
    if ev.out_of_hypothesis:
        parts.append("out-of-hypothesis")
    if oracle_kind != "none":
        parts.append(f"oracle={oracle_kind}")
    return ";".join(parts)


def _one_record(
    domain: LabeledDomain,
    constants: SpectralConstants,
    fam: FamilyRequest,
    k: int,
    cfg: CampaignConfig,
    spectrum: Spectrum | None,
    oracle_kind: str,
) -> VerificationRecord:
    info = FAMILY_REGISTRY[fam.id]
    try:
        ev = evaluate_family(
            fam.id,
            constants,
            k,
            fam.params,
            band_policy=cfg.band_policy,
            variant=cfg.variant,
            tiling=domain.tiling,
        )
    except Exception as exc:  # deliberate: an error cell must not kill the campaign
        return VerificationRecord(
            domain=domain.label,
            operator=info.operator,
            family=fam.id,
            k=k,
            bound=None,
            oracle=None,
            margin=None,
            ratio=None,
            status=f"ERROR({type(exc).__name__})",
            params="",
        )

    oracle_value: float | None = None
    if spectrum is not None and k <= len(spectrum):
        oracle_value = (
            spectrum.eigenvalue(k) if ev.per_eigenvalue else spectrum.partial_sum(k)
        )

    margin = ratio = None
    if oracle_value is not None:
        if ev.direction == "upper":
            margin = ev.value - oracle_value
        else:
            margin = oracle_value - ev.value
        ratio = ev.value / oracle_value

    if oracle_value is None:
        status = "NO_ORACLE"
    elif ev.out_of_hypothesis:
        status = "OUT_OF_HYPOTHESIS"
    else:
        rel = FD_RELATIVE_TOLERANCE if oracle_kind == "fd" else REL_TOL_EXACT
        status = "HOLDS" if margin >= -(ABS_TOL + rel * abs(oracle_value)) else "VIOLATED"

    return VerificationRecord(
        domain=domain.label,
        operator=info.operator,
        family=fam.id,
        k=k,
        bound=ev.value,
        oracle=oracle_value,
        margin=margin,
        ratio=ratio,
        status=status,
        params=_params_echo(ev, oracle_kind if oracle_value is not None else "none"),
    )


def _thread_count() -> int:
    raw = os.environ.get("SPECTRAL_LB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    if value == 0:
        return os.cpu_count() or 1
    return max(1, value)


def run_verification(cfg: CampaignConfig) -> list[VerificationRecord]:
    """Evaluate the whole (domain, family, k) grid of a campaign.

    Exactly one record per cell; the final list is sorted canonically by
    (domain, operator, family, k) regardless of evaluation order.
    """
    oracles = _OracleCache(cfg)
    constants = {
        dom.label: domain_constants(dom.spec, assume_inertia_floor=cfg.assume_inertia_floor)
        for dom in cfg.domains
    }

    def run_cell(job: tuple[LabeledDomain, FamilyRequest]) -> list[VerificationRecord]:
        domain, fam = job
        info = FAMILY_REGISTRY[fam.id]
        spectrum, kind = oracles.get(domain, info.operator)
        return [
            _one_record(domain, constants[domain.label], fam, k, cfg, spectrum, kind)
            for k in cfg.k_values
        ]

    jobs = [(dom, fam) for dom in cfg.domains for fam in cfg.selected_families()]
    threads = _thread_count()
    if threads > 1:
        # Oracles are prebuilt serially: the zero caches are lock-guarded, but
        # the dense FD solve should not run twice concurrently.
        for domain, fam in jobs:
            oracles.get(domain, FAMILY_REGISTRY[fam.id].operator)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run_cell, jobs))
    else:
        chunks = [run_cell(job) for job in jobs]

    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda r: (r.domain, r.operator, r.family, r.k))
    return records


def must_hold_violations(records: list[VerificationRecord]) -> list[VerificationRecord]:
    """VIOLATED rows of must-hold families measured against exact oracles.

    The discretized plate oracle never gates anything, so rows whose params
    mark oracle=fd are excluded.
    """
    return [
        rec
        for rec in records
        if rec.family in MUST_HOLD_FAMILIES
        and rec.status == "VIOLATED"
        and "oracle=exact" in rec.params
    ]


@dataclass(frozen=True)
class ComparisonTable:
    """Per-k ranking of families sharing one (domain, operator, k) grid."""

    domain: str
    operator: str
    ks: tuple[int, ...]
    families: tuple[str, ...]
    values: dict[str, tuple[float, ...]]
    winners: tuple[str, ...]
    dominance: tuple[tuple[str, str], ...]  # (a, b) meaning a >= b at every k

    def to_json(self) -> dict:
        return {
            "domain": self.domain,
            "operator": self.operator,
            "k": list(self.ks),
            "families": list(self.families),
            "values": {fam: list(vals) for fam, vals in self.values.items()},
            "winners": list(self.winners),
            "dominance": [list(pair) for pair in self.dominance],
        }


def compare_families(records: list[VerificationRecord]) -> ComparisonTable:
    """Rank families by bound value on a shared grid.

    All records must come from one domain and one operator (mixing a Laplace
    table with a clamped one is an input error), cover the same k values, and
    carry numeric bounds.
    """
    if not records:
        raise ConfigError("cannot compare an empty record list")
    operators = {rec.operator for rec in records}
    if len(operators) > 1:
        raise ConfigError(f"cannot compare mixed operators {sorted(operators)}")
    domains = {rec.domain for rec in records}
    if len(domains) > 1:
        raise ConfigError(f"cannot compare mixed domains {sorted(domains)}")

    families = tuple(sorted({rec.family for rec in records}))
    ks = tuple(sorted({rec.k for rec in records}))
    table: dict[tuple[str, int], float] = {}
    for rec in records:
        if rec.bound is None or not math.isfinite(rec.bound):
            raise ConfigError(
                f"family {rec.family!r} has no numeric bound at k={rec.k}"
            )
        table[(rec.family, rec.k)] = rec.bound
    for fam in families:
        for k in ks:
            if (fam, k) not in table:
                raise ConfigError(f"family {fam!r} is missing k={k}; grids must match")

    values = {fam: tuple(table[(fam, k)] for k in ks) for fam in families}
    winners = tuple(max(families, key=lambda fam: table[(fam, k)]) for k in ks)
    dominance = tuple(
        (a, b)
        for a in families
        for b in families
        if a != b and all(table[(a, k)] >= table[(b, k)] for k in ks)
    )
    return ComparisonTable(
        domain=next(iter(domains)),
        operator=next(iter(operators)),
        ks=ks,
        families=families,
        values=values,
        winners=winners,
        dominance=dominance,
    )
