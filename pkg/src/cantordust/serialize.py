"""Deterministic CSV/JSON emission for analysis artifacts.

Floats are pinned to 12 significant digits everywhere so identical
inputs produce byte-identical files regardless of platform; newlines
are always "\n".
"""

from __future__ import annotations

import json
from fractions import Fraction

from .binomial import CantorModelSpectrum, ModelSpectrum
from .dust import BoxCover, TrimReport
from .indicators import InstabilityProfile, WarningReport
from .pipeline import AnalysisResult
from .spectra import BiMultifractalSplit, HistogramSpectrum, ThermoSpectrum


def fmt(x) -> str:
    """12-significant-digit shortest form; signed zero normalized."""
    if x is None:
        return ""
    v = float(x)
    if v == 0.0:
        v = 0.0
    return format(v, ".12g")


def jfloat(x):
    """Float rounded for stable JSON emission (None passes through)."""
    if x is None:
        return None
    return float(fmt(x))


def _weight_str(w) -> str:
    if isinstance(w, Fraction) and w.denominator == 1:
        return str(w.numerator)
    return fmt(w)


def cover_json(cover: BoxCover) -> str:
    payload = {
        "L": cover.L,
        "T_kept": cover.T_kept,
        "pruned": cover.pruned,
        "weights": [int(w) for w in cover.weights],
    }
    return json.dumps(payload, indent=2) + "\n"


def alphas_csv(result: AnalysisResult) -> str:
    lines = ["box_index,p,alpha"]
    al = result.alpha_list
    for i in range(len(al)):
        lines.append(f"{int(al.box_index[i])},{fmt(al.p[i])},{fmt(al.alpha[i])}")
    return "\n".join(lines) + "\n"


def thermo_csv(spec: ThermoSpectrum) -> str:
    lines = ["q,tau,alpha,f"]
    for i in range(len(spec)):
        lines.append(f"{fmt(spec.q[i])},{fmt(spec.tau[i])},{fmt(spec.alpha[i])},{fmt(spec.f[i])}")
    return "\n".join(lines) + "\n"


def histogram_csv(hist: HistogramSpectrum | None) -> str:
    lines = ["alpha_lo,alpha_hi,N_alpha,f_star,mean_weight"]
    if hist is not None:
        for b in hist.bins:
            lines.append(f"{fmt(b.alpha_lo)},{fmt(b.alpha_hi)},{b.n_alpha},"
                         f"{fmt(b.f_star)},{fmt(b.mean_weight)}")
    return "\n".join(lines) + "\n"


def split_csv(split: BiMultifractalSplit | None) -> str:
    lines = ["side,alpha_lo,alpha_hi,N_alpha,f_star"]
    if split is not None:
        for side, hist in (("f1", split.f1), ("f2", split.f2)):
            for b in hist.bins:
                lines.append(f"{side},{fmt(b.alpha_lo)},{fmt(b.alpha_hi)},"
                             f"{b.n_alpha},{fmt(b.f_star)}")
    return "\n".join(lines) + "\n"


def profile_csv(profile: InstabilityProfile | None) -> str:
    lines = ["bin_index,N_alpha,mean_weight,Q"]
    if profile is not None:
        for r in profile.rows:
            lines.append(f"{r.bin_index},{r.n_alpha},{fmt(r.mean_weight)},{fmt(r.q_instability)}")
    return "\n".join(lines) + "\n"


def model_csv(model: ModelSpectrum) -> str:
    lines = ["r,alpha,f,N,weight,Q"]
    for row in model.rows:
        lines.append(f"{row.r},{fmt(row.alpha)},{fmt(row.f)},{row.n},"
                     f"{_weight_str(row.weight)},{fmt(row.q_instability)}")
    return "\n".join(lines) + "\n"


def cantor_model_csv(model: CantorModelSpectrum) -> str:
    lines = ["r,alpha,f,N,measure"]
    for row in model.rows:
        lines.append(f"{row.r},{fmt(row.alpha)},{fmt(row.f)},{row.n},{fmt(row.measure)}")
    return "\n".join(lines) + "\n"


def points_csv(values) -> str:
    lines = ["value"]
    lines.extend(fmt(v) for v in values)
    return "\n".join(lines) + "\n"


def parse_points_csv(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "value":
        raise ValueError("expected a points file with a single 'value' column")
    return [float(ln) for ln in lines[1:]]


def report_dict(result: AnalysisResult) -> dict:
    """Stable-order JSON payload of the full run."""
    rep: WarningReport = result.report
    trim: TrimReport | None = result.trim_report
    payload = {
        "label": result.label,
        "n_points": result.n_points,
        "n_boxes": result.n_boxes,
        "n_bins": result.n_bins,
        "trim": None if trim is None else {
            "heavy_cluster_size": trim.heavy_cluster_size,
            "discarded_points": trim.discarded_points,
            "cut_price": jfloat(trim.cut_price),
        },
        "alpha_min": jfloat(result.alpha_list.alpha_min),
        "alpha_max": jfloat(result.alpha_list.alpha_max),
        "alpha_q1": None,
        "alpha_q0": None,
        "indicators": {
            "gap_ratio": jfloat(rep.gap_ratio),
            "asymmetry": jfloat(rep.asymmetry),
            "dispersion_count": rep.dispersion_count,
            "f_alpha_max": jfloat(rep.f_alpha_max),
            "q_inflection_present": rep.q_inflection_present,
            "inflection_bin": None if result.profile is None else result.profile.inflection_index,
            "p_hat": None if result.profile is None else jfloat(result.profile.p_hat),
            "p_hat_arithmetic": None if result.profile is None
            else jfloat(result.profile.p_hat_arithmetic),
        },
        "flags": {k: bool(v) for k, v in rep.flags.items()},
        "thresholds": {
            "gap": jfloat(rep.thresholds.gap),
            "asymmetry": jfloat(rep.thresholds.asymmetry),
            "dispersion": rep.thresholds.dispersion,
        },
    }
    if result.split is not None:
        payload["alpha_q1"] = jfloat(result.split.alpha1)
        payload["alpha_q0"] = jfloat(result.split.alpha0)
    return payload


def report_json(result: AnalysisResult) -> str:
    return json.dumps(report_dict(result), indent=2) + "\n"


def report_text(result: AnalysisResult) -> str:
    """Human-readable one-screen summary of the warning report."""
    rep = result.report
    lines = [
        f"window {result.label or '(unlabeled)'}: {result.n_points} points, "
        f"{result.n_boxes} boxes, {result.n_bins} bins",
        f"  gap ratio        {fmt(rep.gap_ratio) or 'n/a':>12}   flag={rep.flags['gap']}",
        f"  asymmetry        {fmt(rep.asymmetry):>12}   flag={rep.flags['asymmetry']}",
        f"  dispersion count {rep.dispersion_count:>12}   flag={rep.flags['dispersion']}",
        f"  f(alpha_max)     {fmt(rep.f_alpha_max):>12}",
        f"  Q inflection     {str(rep.q_inflection_present):>12}",
    ]
    if result.profile is not None:
        lines.append(f"  P estimate       {fmt(result.profile.p_hat):>12} geometric, "
                     f"{fmt(result.profile.p_hat_arithmetic)} arithmetic")
    return "\n".join(lines) + "\n"
