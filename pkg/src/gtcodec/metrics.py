"""PSNR and energy-retained percentage."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, LengthMismatch, ZeroEnergy, ZeroReference


@dataclass(frozen=True)
class MetricReport:
    psnr_db: float
    erp_pct: float
    mse: float


def _pair(reference, test):
    ref = np.asarray(getattr(reference, "samples", reference), dtype=np.float64).reshape(-1)
    tst = np.asarray(getattr(test, "samples", test), dtype=np.float64).reshape(-1)
    if ref.shape != tst.shape:
        raise LengthMismatch(f"length {ref.size} != {tst.size}")
    if ref.size == 0:
        raise EmptyInput("empty input")
    return ref, tst


def mse(reference, test) -> float:
    ref, tst = _pair(reference, test)
    d = ref - tst
    return float(np.mean(d * d))


def psnr(reference, test) -> float:
    """``10 log10(peak^2 / mse)`` where peak is the largest ``|reference|`` sample.

    Returns ``inf`` for an exact match.
    """
    ref, tst = _pair(reference, test)
    peak = float(np.max(np.abs(ref)))
    if peak == 0.0:
        raise ZeroReference("reference signal is identically zero")
    err = mse(ref, tst)
    if err == 0.0:
        return float("inf")
    return float(10.0 * np.log10(peak * peak / err))


def energy_retained(full, kept) -> float:
    """Percentage of coefficient energy that survives truncation.

    ``kept`` is a :class:`~gtcodec.codec.SparseCoefficients` or a bare array
    of the kept values.
    """
    full = np.asarray(full, dtype=np.float64)
    total = float(np.sum(full * full))
    if total == 0.0:
        raise ZeroEnergy("coefficient vector has zero energy")
    if hasattr(kept, "indices"):
        if kept.k and (kept.n != full.shape[-1] or kept.indices[-1] >= full.shape[-1]):
            raise LengthMismatch("kept indices do not fit the full coefficient vector")
        kept_vals = kept.values
    else:
        kept_vals = np.asarray(kept, dtype=np.float64)
    kept_energy = float(np.sum(kept_vals * kept_vals))
    if kept_energy == total:
        return 100.0
    return 100.0 * kept_energy / total


def report(reference, test, full_coeffs, kept) -> MetricReport:
    return MetricReport(
        psnr_db=psnr(reference, test),
        erp_pct=energy_retained(full_coeffs, kept),
        mse=mse(reference, test),
    )
