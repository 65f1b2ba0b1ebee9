"""Report persistence: delimited output plus optional rendered figures.

CSV is the primary interchange format (desk-scale volumes, diff-friendly,
plot-ready); JSON mirrors the same fields.  Floating-point fields are printed
as shortest round-trip decimals and the writers are free of timestamps, so a
campaign re-run with the same configuration and seed produces byte-identical
files.  The figure renderer draws each (domain, operator) panel to a PNG next
to the delimited output.
"""

from __future__ import annotations

import csv
import json
import re
from pathlib import Path

from .profiles import FuzzResult
from .verify import VerificationRecord

__all__ = ["CSV_HEADER", "emit_report", "render_figures"]

CSV_HEADER = "domain,operator,family,k,bound,oracle,margin,ratio,status,params"


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(value)


def _record_row(rec: VerificationRecord) -> list[str]:
    return [
        rec.domain,
        rec.operator,
        rec.family,
        str(rec.k),
        _fmt(rec.bound),
        _fmt(rec.oracle),
        _fmt(rec.margin),
        _fmt(rec.ratio),
        rec.status,
        rec.params,
    ]


def _record_json(rec: VerificationRecord) -> dict:
    return {
        "domain": rec.domain,
        "operator": rec.operator,
        "family": rec.family,
        "k": rec.k,
        "bound": rec.bound,
        "oracle": rec.oracle,
        "margin": rec.margin,
        "ratio": rec.ratio,
        "status": rec.status,
        "params": rec.params,
    }


def emit_report(
    records: list[VerificationRecord],
    fmt: str = "csv",
    path: str | Path = "report.csv",
    fuzz: list[FuzzResult] | None = None,
) -> Path:
    """Write the verification records to ``path`` as CSV or JSON.

    Fuzz summaries, when supplied, ride along in the JSON document; the CSV
    schema stays records-only.
    """
    out = Path(path)
    try:
        if fmt == "csv":
            with out.open("w", encoding="utf-8", newline="") as handle:
                handle.write(CSV_HEADER + "\n")
                writer = csv.writer(handle, lineterminator="\n")
                for rec in records:
                    writer.writerow(_record_row(rec))
        elif fmt == "json":
            payload: dict = {"records": [_record_json(rec) for rec in records]}
            if fuzz is not None:
                payload["fuzz"] = [result.to_json() for result in fuzz]
            with out.open("w", encoding="utf-8", newline="") as handle:
                json.dump(payload, handle, indent=2)
                handle.write("\n")
        else:
            raise ValueError(f"unknown report format {fmt!r}; expected 'csv' or 'json'")
    except OSError as exc:
        raise OSError(f"cannot write report to {out}: {exc}") from exc
    return out


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "-", text).strip("-") or "domain"


def render_figures(
    records: list[VerificationRecord],
    out_dir: str | Path,
    prefix: str = "report",
) -> list[Path]:
    """Render one bounds-vs-oracle panel per (domain, operator) to PNG files.

    Uses the Agg backend; returns the written paths (sorted, deterministic
    names).  Rows without numeric bounds are skipped silently.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)

    panels: dict[tuple[str, str], list[VerificationRecord]] = {}
    for rec in records:
        panels.setdefault((rec.domain, rec.operator), []).append(rec)

    written: list[Path] = []
    for (domain, operator), rows in sorted(panels.items()):
        families = sorted({r.family for r in rows})
        fig, (ax_bounds, ax_ratio) = plt.subplots(1, 2, figsize=(10.0, 4.0))
        oracle_drawn = False
        for family in families:
            seq = sorted((r for r in rows if r.family == family), key=lambda r: r.k)
            ks = [r.k for r in seq if r.bound is not None]
            bounds = [r.bound for r in seq if r.bound is not None]
            if ks:
                ax_bounds.plot(ks, bounds, label=family, linewidth=1.2)
            if not oracle_drawn:
                oks = [r.k for r in seq if r.oracle is not None]
                oracle = [r.oracle for r in seq if r.oracle is not None]
                if oks:
                    ax_bounds.plot(
                        oks, oracle, label="oracle", color="black", linestyle="--", linewidth=1.5
                    )
                    oracle_drawn = True
            rks = [r.k for r in seq if r.ratio is not None]
            ratios = [r.ratio for r in seq if r.ratio is not None]
            if rks:
                ax_ratio.plot(rks, ratios, label=family, linewidth=1.2)
        ax_bounds.set_xlabel("k")
        ax_bounds.set_ylabel("eigenvalue sum / bound")
        ax_bounds.set_title(f"{domain} ({operator})")
        ax_bounds.legend(fontsize=8)
        ax_ratio.set_xlabel("k")
        ax_ratio.set_ylabel("bound / oracle")
        ax_ratio.axhline(1.0, color="black", linewidth=0.8)
        ax_ratio.set_title("tightness")
        fig.tight_layout()
        path = directory / f"{prefix}_{_slug(domain)}_{operator}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written
