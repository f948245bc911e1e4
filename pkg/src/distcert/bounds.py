"""Distance lower bounds obtained by inverting entropic continuity bounds.

The pattern behind every bound: a continuity bound says that moving a state
or channel by distance eps changes an entropic quantity by at most
A*eps + r(eps) with r concave and increasing. Reading it backwards, a
certified gap Delta in the entropic quantity between the object and the
nearest member of a structured class forces the distance to be at least
(Delta - r(Delta/A)) / A. The public bound functions specialize this kernel,
clamp into [0, 2] (trivial bounds are allowed, negative ones are not
informative), and tag the result with a stable formula identifier so report
rows map one-to-one onto the closed-form expressions.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .entropy import _check_base, _log, g_correction


class Formula(str, Enum):
    """Wire tags identifying each closed-form bound in reports and tables."""

    DS_FROM_REE = "Eq5"
    DS_FROM_CI = "Eq6"
    DA_FROM_CI = "Eq9"
    DEB_FROM_CI = "Eq10"
    DEB_FROM_RCI = "Eq11"
    DEB_FROM_REE = "Eq12"
    DD_FROM_CI = "Eq13"
    PROD_FROM_MI = "ProdMI"


TARGET_OF = {
    Formula.DS_FROM_REE: "separable",
    Formula.DS_FROM_CI: "separable",
    Formula.DA_FROM_CI: "antidegradable",
    Formula.DEB_FROM_CI: "entanglement_breaking",
    Formula.DEB_FROM_RCI: "entanglement_breaking",
    Formula.DEB_FROM_REE: "entanglement_breaking",
    Formula.DD_FROM_CI: "degradable",
    Formula.PROD_FROM_MI: "product",
}

_MONOTONE_GRID = np.linspace(0.0, 2.0, 17)


@dataclass(frozen=True)
class ContinuityBoundSpec:
    """Affine-plus-correction continuity bound A*eps + r(eps).

    ``correction`` must be nondecreasing on [0, 2]; this is spot-checked on a
    fixed grid at construction.
    """

    scale: float
    correction: Callable[[float], float]

    def __post_init__(self):
        vals = [self.correction(float(t)) for t in _MONOTONE_GRID]
        if any(b < a - 1e-12 for a, b in zip(vals, vals[1:])):
            raise ValueError("correction term is not nondecreasing on [0, 2]")


def invert_continuity_bound(spec: ContinuityBoundSpec, delta: float) -> float:
    """Distance forced by an entropic gap ``delta``, clamped at zero.

    Inverts delta <= A*eps + r(eps) pessimistically: any eps achieving the
    gap satisfies eps >= (delta - r(delta/A)) / A.
    """
    if spec.scale <= 0.0:
        raise ValueError("continuity bound scale must be positive")
    if delta < 0.0:
        raise ValueError("entropic gap must be nonnegative")
    raw = float((delta - spec.correction(delta / spec.scale)) / spec.scale)
    return max(0.0, raw)


def _log_dim(d: int, base: float) -> float:
    if int(d) != d or d < 2:
        raise ValueError("dimension must be an integer >= 2")
    return float(_log(float(d), base))


def _clamp(raw: float) -> float:
    return min(2.0, max(0.0, raw))


def state_distance_kernel(gap: float, d: int, base: float = 2.0) -> float:
    """Raw (unclamped, sign-preserving) kernel behind the state-side bounds.

    Evaluates 2*gap/log(d) - 2*g(gap/log(d))/log(d) for any real gap, with
    the correction term vanishing at nonpositive arguments. Negative output
    means the certificate was too small to force a positive distance.
    """
    base = _check_base(base)
    log_d = _log_dim(d, base)
    return float(2.0 * (gap - g_correction(gap / log_d, base)) / log_d)


def channel_distance_kernel(gap: float, d: int, base: float = 2.0) -> float:
    """Raw kernel behind the degradability-side bounds.

    Evaluates gap/log(d) - g(gap/(2*log(d)))/log(d) for any real gap.
    """
    base = _check_base(base)
    log_d = _log_dim(d, base)
    return float((gap - g_correction(gap / (2.0 * log_d), base)) / log_d)


def product_distance_kernel(gap: float, d: int, base: float = 2.0) -> float:
    """Raw kernel behind the product-state bound.

    Evaluates gap/log(d) - 2*g(gap/(2*log(d)))/log(d) for any real gap.
    """
    base = _check_base(base)
    log_d = _log_dim(d, base)
    return float((gap - 2.0 * g_correction(gap / (2.0 * log_d), base)) / log_d)


def _halfpair_kernel(gap: float, log_d: float, base: float) -> float:
    # inversion of |Delta| <= 2 eps log d + 2 g(eps), reported as 2*eps
    return float(2.0 * (gap - g_correction(gap / log_d, base)) / log_d)


def _fullpair_kernel(gap: float, log_d: float, base: float) -> float:
    # inversion of |Delta| <= 2 eps log d + g(eps) at distance scale 2*eps
    return float((gap - g_correction(gap / (2.0 * log_d), base)) / log_d)


def separable_distance_lower(gap: float, d: int, base: float = 2.0, clamped: bool = True) -> float:
    """Trace-norm distance from a bipartite state to the separable set.

    ``gap`` is any certified lower bound on the relative entropy of
    entanglement (the max coherent information qualifies), in units of
    ``base``; d = min of the two local dimensions.
    """
    base = _check_base(base)
    if gap < 0.0:
        raise ValueError("certificate must be nonnegative")
    raw = _halfpair_kernel(gap, _log_dim(d, base), base)
    return _clamp(raw) if clamped else raw


def antidegradable_distance_lower(ic: float, d: int, base: float = 2.0, clamped: bool = True) -> float:
    """Diamond-norm distance from a channel to the antidegradable set.

    ``ic`` must be a positive achievable coherent information; d is the
    smaller of the channel's input and output dimensions.
    """
    base = _check_base(base)
    if ic <= 0.0:
        raise ValueError("no antidegradability certificate (coherent information <= 0)")
    raw = _fullpair_kernel(ic, _log_dim(d, base), base)
    return _clamp(raw) if clamped else raw


def degradable_distance_lower(neg_ic: float, d: int, base: float = 2.0, clamped: bool = True) -> float:
    """Diamond-norm distance from a channel to the degradable set.

    ``neg_ic`` is the negated minimal coherent information, positive whenever
    some input state has negative coherent information.
    """
    base = _check_base(base)
    if neg_ic <= 0.0:
        raise ValueError("no degradability certificate (coherent information >= 0)")
    raw = _fullpair_kernel(neg_ic, _log_dim(d, base), base)
    return _clamp(raw) if clamped else raw


def entanglement_breaking_distance_lower(
    gap: float, d: int, source: str = "Ic", base: float = 2.0, clamped: bool = True
) -> float:
    """Diamond-norm distance from a channel to the entanglement-breaking set.

    The certificate may come from three sources: achievable coherent
    information ("Ic"), achievable reverse coherent information ("L"), or a
    certified lower bound on the relative entropy of entanglement of the
    Choi-type output state ("ER"). The kernel is identical; the source picks
    the formula tag.
    """
    base = _check_base(base)
    if source not in ("Ic", "L", "ER"):
        raise ValueError(f"source must be 'Ic', 'L' or 'ER', got {source!r}")
    if gap <= 0.0:
        raise ValueError("no entanglement-breaking certificate (gap <= 0)")
    raw = _halfpair_kernel(gap, _log_dim(d, base), base)
    return _clamp(raw) if clamped else raw


def product_distance_lower(mi: float, d: int, base: float = 2.0, clamped: bool = True) -> float:
    """Trace-norm distance from a bipartite state to all product states.

    ``mi`` is the state's mutual information, d = min local dimension.
    """
    base = _check_base(base)
    if mi < 0.0:
        raise ValueError("mutual information must be nonnegative")
    log_d = _log_dim(d, base)
    raw = float((mi - 2.0 * g_correction(mi / (2.0 * log_d), base)) / log_d)
    return _clamp(raw) if clamped else raw


EB_SOURCE_FORMULA = {
    "Ic": Formula.DEB_FROM_CI,
    "L": Formula.DEB_FROM_RCI,
    "ER": Formula.DEB_FROM_REE,
}


# ----- reports -----


@dataclass
class BoundEntry:
    """One certified bound: target set, formula tag, clamped and raw values."""

    target: str
    formula: Formula
    value: float
    raw: float
    witness: str
    inputs: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.value <= 2.0:
            raise ValueError(f"bound value {self.value} outside [0, 2]")
        if self.target != TARGET_OF[self.formula]:
            raise ValueError(f"formula {self.formula.value} does not target {self.target}")

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "formula": self.formula.value,
            "value": self.value,
            "raw": self.raw,
            "witness": self.witness,
            "inputs": dict(self.inputs),
        }


@dataclass
class BoundReport:
    """Collection of certified bounds for one channel or state.

    Absence of an entry means no certificate was available for that target,
    which is weaker information than a bound of zero.
    """

    subject: str
    base_label: str
    entries: list[BoundEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "log_base": self.base_label,
            "seed": self.seed,
            "entries": [e.to_dict() for e in self.entries],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["target", "formula", "value", "raw", "witness", "log_base"])
        for e in self.entries:
            w.writerow([e.target, e.formula.value, repr(e.value), repr(e.raw), e.witness, self.base_label])
        return buf.getvalue()

    def entry(self, formula: Formula) -> BoundEntry | None:
        for e in self.entries:
            if e.formula is formula:
                return e
        return None


def base_label(base: float) -> str:
    return "2" if float(base) == 2.0 else "e"


def _entry(formula: Formula, gap: float, d: int, base: float, witness: str, inputs: dict) -> BoundEntry:
    if formula in (Formula.DS_FROM_REE, Formula.DS_FROM_CI):
        raw = separable_distance_lower(gap, d, base, clamped=False)
    elif formula is Formula.DA_FROM_CI:
        raw = antidegradable_distance_lower(gap, d, base, clamped=False)
    elif formula is Formula.DD_FROM_CI:
        raw = degradable_distance_lower(gap, d, base, clamped=False)
    elif formula is Formula.PROD_FROM_MI:
        raw = product_distance_lower(gap, d, base, clamped=False)
    else:
        source = {v: k for k, v in EB_SOURCE_FORMULA.items()}[formula]
        raw = entanglement_breaking_distance_lower(gap, d, source, base, clamped=False)
    return BoundEntry(TARGET_OF[formula], formula, _clamp(raw), raw, witness, inputs)


def assemble_report(
    subject: str,
    *,
    d: int,
    base: float = 2.0,
    ic: float | None = None,
    min_ic: float | None = None,
    rci: float | None = None,
    er_lower: float | None = None,
    witnesses: dict[str, str] | None = None,
    seed: int | None = None,
) -> BoundReport:
    """Evaluate every applicable channel bound from the given certificates.

    ``ic`` and ``min_ic`` are the best achieved maximal and minimal coherent
    information, ``rci`` the best reverse coherent information, ``er_lower``
    a certified lower bound on the relative entropy of entanglement of the
    channel's image of a maximally entangled input. Certificates with the
    wrong sign are skipped with a note rather than recorded as zero bounds.
    """
    base = _check_base(base)
    wit = witnesses or {}
    report = BoundReport(subject, base_label(base), seed=seed)
    if ic is not None:
        if ic > 0.0:
            inputs = {"coherent_information": ic, "dim": d}
            report.entries.append(
                _entry(Formula.DA_FROM_CI, ic, d, base, wit.get("ic", ""), inputs)
            )
            report.entries.append(
                _entry(Formula.DEB_FROM_CI, ic, d, base, wit.get("ic", ""), inputs)
            )
        else:
            report.notes.append(
                "no antidegradability certificate (max coherent information <= 0)"
            )
    if min_ic is not None:
        if min_ic < 0.0:
            report.entries.append(
                _entry(
                    Formula.DD_FROM_CI,
                    -min_ic,
                    d,
                    base,
                    wit.get("min_ic", ""),
                    {"min_coherent_information": min_ic, "dim": d},
                )
            )
        else:
            report.notes.append(
                "no degradability certificate (min coherent information >= 0)"
            )
    if rci is not None:
        if rci > 0.0:
            report.entries.append(
                _entry(
                    Formula.DEB_FROM_RCI,
                    rci,
                    d,
                    base,
                    wit.get("rci", ""),
                    {"reverse_coherent_information": rci, "dim": d},
                )
            )
        else:
            report.notes.append(
                "no entanglement-breaking certificate from reverse coherent information (<= 0)"
            )
    if er_lower is not None:
        if er_lower > 0.0:
            report.entries.append(
                _entry(
                    Formula.DEB_FROM_REE,
                    er_lower,
                    d,
                    base,
                    wit.get("er", ""),
                    {"rel_entropy_entanglement_lower": er_lower, "dim": d},
                )
            )
        else:
            report.notes.append(
                "no entanglement-breaking certificate from relative entropy (<= 0)"
            )
    return report


def assemble_state_report(
    subject: str,
    *,
    d: int,
    base: float = 2.0,
    ic: float | None = None,
    er_lower: float | None = None,
    mi: float | None = None,
    oracle: float | None = None,
    witnesses: dict[str, str] | None = None,
    seed: int | None = None,
) -> BoundReport:
    """State-side report: distance to separable and to product states."""
    base = _check_base(base)
    wit = witnesses or {}
    report = BoundReport(subject, base_label(base), seed=seed)
    if ic is not None:
        if ic > 0.0:
            report.entries.append(
                _entry(
                    Formula.DS_FROM_CI,
                    ic,
                    d,
                    base,
                    wit.get("ic", ""),
                    {"max_coherent_information": ic, "dim": d},
                )
            )
        else:
            report.notes.append(
                "no separability certificate from coherent information (<= 0)"
            )
    if er_lower is not None:
        if er_lower >= 0.0:
            report.entries.append(
                _entry(
                    Formula.DS_FROM_REE,
                    er_lower,
                    d,
                    base,
                    wit.get("er", ""),
                    {"rel_entropy_entanglement_lower": er_lower, "dim": d},
                )
            )
        else:
            report.notes.append("relative entropy certificate was negative; skipped")
    if mi is not None:
        report.entries.append(
            _entry(
                Formula.PROD_FROM_MI,
                max(mi, 0.0),
                d,
                base,
                wit.get("mi", ""),
                {"mutual_information": mi, "dim": d},
            )
        )
    if oracle is not None:
        report.notes.append(f"trace distance to the PPT set, search estimate: {oracle!r}")
    return report
