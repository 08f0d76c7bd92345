"""Deterministic CSV/JSON emission for spectra, wavefunctions, and reports.

CSV is RFC-4180 with '.' decimals and 17 significant digits; JSON is UTF-8
with sorted keys.  Identical inputs produce byte-identical files.
"""
from __future__ import annotations

import csv
import dataclasses
import json
from pathlib import Path

import numpy as np

from .oracle import ComparisonReport
from .potentials import (
    PekerisCoefficients,
    PotentialSpec,
    ReflectionlessParams,
    RosenMorseGeneral,
    StandardRMParams,
    TrigRMParams,
)
from .spectrum import EnergyLevel, SymmetrySector

__all__ = [
    "fmt_float",
    "write_potential_csv",
    "write_wavefunction_csv",
    "write_levels_csv",
    "write_json",
    "spectrum_document",
    "comparison_document",
    "potential_to_dict",
]


def fmt_float(x: float) -> str:
    """17 significant digits; round-trips any double exactly."""
    return f"{float(x):.17g}"


def write_json(path, obj) -> None:
    Path(path).write_text(
        json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def _write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_potential_csv(path, rs: np.ndarray, vs: np.ndarray) -> None:
    _write_csv(path, ["r", "V"], ([fmt_float(r), fmt_float(v)] for r, v in zip(rs, vs)))


def write_wavefunction_csv(path, grid: np.ndarray, upper: np.ndarray, lower: np.ndarray) -> None:
    _write_csv(
        path,
        ["r", "F", "G"],
        ([fmt_float(r), fmt_float(f), fmt_float(g)] for r, f, g in zip(grid, upper, lower)),
    )


def write_levels_csv(path, levels: list[EnergyLevel]) -> None:
    _write_csv(
        path,
        ["n", "kappa", "E", "residual", "a0", "q", "admissible"],
        (
            [
                str(lv.n),
                str(lv.kappa),
                fmt_float(lv.energy),
                fmt_float(lv.residual),
                fmt_float(lv.nu.a0),
                fmt_float(lv.nu.q),
                "true" if lv.admissible else "false",
            ]
            for lv in levels
        ),
    )


def potential_to_dict(pot: PotentialSpec) -> dict:
    if isinstance(pot, RosenMorseGeneral):
        return {"kind": "rosen_morse", "v1": pot.v1, "v2": pot.v2, "alpha": pot.alpha}
    if isinstance(pot, ReflectionlessParams):
        out = {"kind": "reflectionless", "a2": pot.a2, "alpha": pot.alpha}
        if pot.lam is not None:
            out["lam"] = pot.lam
        return out
    if isinstance(pot, StandardRMParams):
        return {"kind": "standard_rm", "a": pot.a, "b": pot.b, "alpha": pot.alpha}
    if isinstance(pot, TrigRMParams):
        return {"kind": "trig_rm", "v1": pot.v1, "v2": pot.v2, "half_width": pot.half_width}
    raise TypeError(f"unknown potential type {type(pot).__name__}")


def _level_to_dict(lv: EnergyLevel) -> dict:
    return {
        "n": lv.n,
        "kappa": lv.kappa,
        "E": lv.energy,
        "residual": lv.residual,
        "a0": None if lv.nu.a0 != lv.nu.a0 else lv.nu.a0,  # NaN -> null
        "q": lv.nu.q,
        "admissible": lv.admissible,
    }


def spectrum_document(
    pot: PotentialSpec,
    sector: SymmetrySector,
    coeffs: PekerisCoefficients | None,
    levels: list[EnergyLevel],
    pekeris_source: str | None,
) -> dict:
    pek = None
    if coeffs is not None:
        pek = {
            "d0": coeffs.d0,
            "d1": coeffs.d1,
            "d2": coeffs.d2,
            "re": coeffs.r_e,
            "source": pekeris_source,
        }
    return {
        "potential": potential_to_dict(pot),
        "sector": {
            "kind": sector.kind,
            "kappa": sector.kappa,
            "M": sector.mass,
            "C": sector.c_const,
        },
        "pekeris": pek,
        "levels": [_level_to_dict(lv) for lv in levels],
    }


def comparison_document(report: ComparisonReport) -> dict:
    return {
        "mode": report.mode,
        "per_level": [
            {
                "n": row.n,
                "E_closed": row.e_closed,
                "E_oracle": row.e_oracle,
                "delta_abs": row.delta_abs,
                "delta_rel": row.delta_rel,
            }
            for row in report.per_level
        ],
        "max_delta_abs": report.max_delta_abs,
        "pass": report.passed,
        "unmatched_closed": list(report.unmatched_closed),
        "unmatched_numeric": list(report.unmatched_numeric),
    }


def dataclass_to_dict(obj) -> dict:
    return dataclasses.asdict(obj)
