"""Campaign configuration: JSON schema, validation, and the family registry."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, DomainError
from .geometry import DomainSpec

__all__ = [
    "FamilyInfo",
    "FAMILY_REGISTRY",
    "MUST_HOLD_FAMILIES",
    "LabeledDomain",
    "FamilyRequest",
    "CampaignConfig",
    "load_config",
    "config_from_dict",
]


@dataclass(frozen=True)
class FamilyInfo:
    """Static facts about one bound family."""

    id: str
    operator: str  # "laplace" | "bilaplace"
    required: tuple[str, ...] = ()
    needs_inertia: bool = False
    per_eigenvalue: bool = False
    direction: str = "lower"
    must_hold: bool = False


FAMILY_REGISTRY: dict[str, FamilyInfo] = {
    info.id: info
    for info in (
        FamilyInfo("li-yau", "laplace", must_hold=True),
        FamilyInfo("polya-ref", "laplace", per_eigenvalue=True),
        FamilyInfo("melas", "laplace", required=("c_n",), needs_inertia=True),
        FamilyInfo("kvw", "laplace", required=("C", "a0"), needs_inertia=True),
        FamilyInfo("ji-xu-n2", "laplace", must_hold=True),
        FamilyInfo("ji-xu-mt", "laplace"),
        FamilyInfo("ji-xu-gmt", "laplace", required=("m",)),
        FamilyInfo("lambda-k-mt", "laplace", per_eigenvalue=True),
        FamilyInfo("lambda-k-gmt", "laplace", required=("m",), per_eigenvalue=True),
        FamilyInfo("levine-protter", "bilaplace", must_hold=True),
        FamilyInfo("cheng-wei-1", "bilaplace", needs_inertia=True),
        FamilyInfo("cheng-wei-2", "bilaplace", needs_inertia=True, must_hold=True),
        FamilyInfo(
            "cheng-wei-upper", "bilaplace", required=("r0", "v_shell"), direction="upper"
        ),
        FamilyInfo("yy-tse", "bilaplace", must_hold=True),
        FamilyInfo("ji-xu-clamped", "bilaplace", required=("m",)),
        FamilyInfo("gamma-k", "bilaplace", required=("m",), per_eigenvalue=True),
    )
}

MUST_HOLD_FAMILIES = frozenset(f.id for f in FAMILY_REGISTRY.values() if f.must_hold)

_OPTIONAL_FAMILY_PARAMS = {"m", "c_n", "C", "a0", "r0", "v_shell", "band_a", "version"}


@dataclass(frozen=True)
class LabeledDomain:
    label: str
    spec: DomainSpec
    tiling: bool = False


@dataclass(frozen=True)
class FamilyRequest:
    id: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CampaignConfig:
    domains: tuple[LabeledDomain, ...]
    families: tuple[FamilyRequest, ...]
    k_start: int = 1
    k_stop: int = 100
    band_policy: str = "isoperimetric"
    variant: str = "printed"
    operators: tuple[str, ...] = ("laplace", "bilaplace")
    fuzz_seed: int = 0
    fuzz_trials: int = 0
    fd_grid: int = 32
    fd_extrapolate: bool = True
    assume_inertia_floor: bool = False

    @property
    def k_values(self) -> range:
        return range(self.k_start, self.k_stop + 1)

    def selected_families(self) -> tuple[FamilyRequest, ...]:
        return tuple(
            fam for fam in self.families if FAMILY_REGISTRY[fam.id].operator in self.operators
        )


_TOP_LEVEL_FIELDS = {
    "domains",
    "families",
    "k_range",
    "band_policy",
    "variant",
    "operators",
    "fuzz",
    "fd",
    "assume_inertia_floor",
}


def _parse_domains(raw) -> tuple[LabeledDomain, ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("field 'domains' must be a non-empty list")
    out = []
    seen: set[str] = set()
    for idx, entry in enumerate(raw):
        if not isinstance(entry, dict):
            raise ConfigError(f"field 'domains[{idx}]' must be an object")
        label = entry.get("label")
        if not isinstance(label, str) or not label:
            raise ConfigError(f"field 'domains[{idx}].label' must be a non-empty string")
        if label in seen:
            raise ConfigError(f"field 'domains': duplicate label {label!r}")
        seen.add(label)
        tiling = entry.get("tiling", False)
        if not isinstance(tiling, bool):
            raise ConfigError(f"field 'domains[{idx}].tiling' must be a boolean")
        body = {k: v for k, v in entry.items() if k not in ("label", "tiling")}
        try:
            spec = DomainSpec.from_json(body)
        except DomainError as exc:
            raise ConfigError(f"field 'domains[{idx}]' ({label}): {exc}") from exc
        out.append(LabeledDomain(label=label, spec=spec, tiling=tiling))
    return tuple(out)


def _parse_families(raw) -> tuple[FamilyRequest, ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("field 'families' must be a non-empty list")
    out = []
    for idx, entry in enumerate(raw):
        if isinstance(entry, str):
            entry = {"id": entry}
        if not isinstance(entry, dict) or "id" not in entry:
            raise ConfigError(f"field 'families[{idx}]' must be an object with an 'id'")
        fam_id = entry["id"]
        info = FAMILY_REGISTRY.get(fam_id)
        if info is None:
            raise ConfigError(
                f"field 'families[{idx}]': unknown family id {fam_id!r} "
                f"(known: {sorted(FAMILY_REGISTRY)})"
            )
        params = {k: v for k, v in entry.items() if k != "id"}
        unknown = set(params) - _OPTIONAL_FAMILY_PARAMS
        if unknown:
            raise ConfigError(
                f"family {fam_id!r}: unknown parameter(s) {sorted(unknown)}"
            )
        for name in info.required:
            if name not in params:
                raise ConfigError(f"family {fam_id!r} requires parameter {name!r}")
        out.append(FamilyRequest(id=fam_id, params=params))
    return tuple(out)


def config_from_dict(raw: dict) -> CampaignConfig:
    """Validate a decoded JSON document into a campaign configuration."""
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(raw) - _TOP_LEVEL_FIELDS
    if unknown:
        raise ConfigError(f"unknown configuration field(s): {sorted(unknown)}")
    if "domains" not in raw:
        raise ConfigError("field 'domains' is required")
    if "families" not in raw:
        raise ConfigError("field 'families' is required")
    domains = _parse_domains(raw["domains"])
    families = _parse_families(raw["families"])

    k_range = raw.get("k_range", [1, 100])
    if (
        not isinstance(k_range, list)
        or len(k_range) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in k_range)
    ):
        raise ConfigError("field 'k_range' must be a two-integer list [start, stop]")
    k_start, k_stop = k_range
    if not 1 <= k_start <= k_stop:
        raise ConfigError(f"field 'k_range' must satisfy 1 <= start <= stop, got {k_range}")

    band_policy = raw.get("band_policy", "isoperimetric")
    if band_policy not in ("isoperimetric", "inertia"):
        raise ConfigError(f"field 'band_policy' must be isoperimetric|inertia, got {band_policy!r}")
    variant = raw.get("variant", "printed")
    if variant not in ("printed", "corrected"):
        raise ConfigError(f"field 'variant' must be printed|corrected, got {variant!r}")

    operators = tuple(raw.get("operators", ["laplace", "bilaplace"]))
    if not operators or any(op not in ("laplace", "bilaplace") for op in operators):
        raise ConfigError("field 'operators' must list laplace and/or bilaplace")

    fuzz = raw.get("fuzz", {})
    if not isinstance(fuzz, dict) or set(fuzz) - {"seed", "trials"}:
        raise ConfigError("field 'fuzz' must be an object with optional 'seed' and 'trials'")
    fuzz_seed = fuzz.get("seed", 0)
    fuzz_trials = fuzz.get("trials", 0)
    if not isinstance(fuzz_seed, int) or not isinstance(fuzz_trials, int) or fuzz_trials < 0:
        raise ConfigError("field 'fuzz': 'seed' must be an integer, 'trials' a nonnegative integer")

    fd = raw.get("fd", {})
    if not isinstance(fd, dict) or set(fd) - {"grid", "extrapolate"}:
        raise ConfigError("field 'fd' must be an object with optional 'grid' and 'extrapolate'")
    fd_grid = fd.get("grid", 32)
    fd_extrapolate = fd.get("extrapolate", True)
    if not isinstance(fd_grid, int) or fd_grid < 0:
        raise ConfigError("field 'fd.grid' must be a nonnegative integer (0 disables the oracle)")
    if not isinstance(fd_extrapolate, bool):
        raise ConfigError("field 'fd.extrapolate' must be a boolean")

    assume_floor = raw.get("assume_inertia_floor", False)
    if not isinstance(assume_floor, bool):
        raise ConfigError("field 'assume_inertia_floor' must be a boolean")

    return CampaignConfig(
        domains=domains,
        families=families,
        k_start=k_start,
        k_stop=k_stop,
        band_policy=band_policy,
        variant=variant,
        operators=operators,
        fuzz_seed=fuzz_seed,
        fuzz_trials=fuzz_trials,
        fd_grid=fd_grid,
        fd_extrapolate=fd_extrapolate,
        assume_inertia_floor=assume_floor,
    )


def load_config(path) -> CampaignConfig:
    """Read and validate a campaign configuration from a JSON file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {path!r}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration {path!r} is not valid JSON: {exc}") from exc
    return config_from_dict(raw)
