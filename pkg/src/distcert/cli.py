"""Command-line front end: analyze channels and states, tabulate the
closed-form scans, and write zoo channels to disk.

Exit codes: 0 on success, 2 on validation problems (malformed files, bad
parameters), 3 when --strict is set and some search did not converge.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .bounds import (
    assemble_report,
    assemble_state_report,
    base_label,
    channel_distance_kernel,
    state_distance_kernel,
)
from .channels import (
    _complex_to_pairs,
    _pairs_to_complex,
    channel_to_dict,
    choi,
    completely_depolarizing,
    depolarizing,
    erasure,
    identity_embedding,
    load_channel,
)
from .entropy import _log, binary_entropy, max_coherent_information, mutual_information
from .linalg import DensityMatrix
from .optimize import (
    OptimizerConfig,
    maximize_coherent_information,
    maximize_reverse_coherent_information,
    minimize_coherent_information,
    ree_ppt_lower,
    trace_dist_to_ppt,
)

_REE_AUTO_DIM = 36
_ORACLE_AUTO_DIM = 6

# Search values this close to zero are evaluation noise, not certificates;
# they are snapped to zero so reports do not grow entries out of float dust.
_CERT_NOISE_FLOOR = 1e-12


def _snap(value: float) -> float:
    return 0.0 if abs(value) < _CERT_NOISE_FLOOR else value


# ----- state files -----


def state_to_dict(rho: DensityMatrix) -> dict:
    if rho.dims is None:
        raise ValueError("state needs explicit bipartite dims")
    return {"dims": list(rho.dims), "matrix": _complex_to_pairs(rho.mat)}


def state_from_dict(data: dict) -> DensityMatrix:
    try:
        da, db = (int(x) for x in data["dims"])
        raw = data["matrix"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"invalid state description: {exc}") from exc
    mat = _pairs_to_complex(raw, (da * db, da * db))
    return DensityMatrix(mat, (da, db))


def save_state(rho: DensityMatrix, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_dict(rho), fh)


def load_state(path: str) -> DensityMatrix:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed state file: {exc}") from exc
    return state_from_dict(data)


# ----- plumbing -----


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _base_of(args) -> float:
    return 2.0 if args.log_base == "2" else math.e


def _cfg_of(args) -> OptimizerConfig:
    return OptimizerConfig(
        restarts=args.restarts, max_iters=args.max_iters, seed=args.seed
    )


def _search_note(cert) -> str:
    return f"{cert.iterations} iterations, converged={cert.converged}"


def _strict_exit(args, certs, report) -> int:
    stuck = [c.kind for c in certs if not c.converged]
    if stuck:
        report.notes.append("unconverged searches: " + ", ".join(stuck))
    return 3 if args.strict and stuck else 0


def _emit_report(report, args) -> None:
    text = report.to_csv() if args.format == "csv" else report.to_json()
    _emit(text, args.out)


# ----- analyze commands -----


def _cmd_analyze_channel(args) -> int:
    phi = load_channel(args.path)
    base = _base_of(args)
    cfg = _cfg_of(args)
    ic_cert = maximize_coherent_information(phi, cfg, base)
    min_cert = minimize_coherent_information(phi, cfg, base)
    rci_cert = maximize_reverse_coherent_information(phi, cfg, base)
    certs = [ic_cert, min_cert, rci_cert]
    er_val = None
    er_note = None
    witnesses = {
        "ic": f"mirror-ascent input state ({_search_note(ic_cert)})",
        "min_ic": f"mirror-descent input state ({_search_note(min_cert)})",
        "rci": f"mirror-ascent input state ({_search_note(rci_cert)})",
    }
    if args.ree:
        j = choi(phi)
        choi_state = DensityMatrix(j.mat / phi.d_in, (phi.d_out, phi.d_in))
        er_cert = ree_ppt_lower(choi_state, cfg, base)
        certs.append(er_cert)
        er_val = er_cert.value
        witnesses["er"] = f"PPT descent candidate ({_search_note(er_cert)})"
    else:
        er_note = "relative entropy certificate not computed; pass --ree to enable it"
    report = assemble_report(
        args.path,
        d=phi.d_in,
        base=base,
        ic=_snap(ic_cert.value),
        min_ic=_snap(min_cert.value),
        rci=_snap(rci_cert.value),
        er_lower=None if er_val is None else _snap(er_val),
        witnesses=witnesses,
        seed=args.seed,
    )
    report.notes.append(
        f"channel: d_in={phi.d_in}, d_out={phi.d_out}, kraus={len(phi.kraus)}"
    )
    if er_note:
        report.notes.append(er_note)
    code = _strict_exit(args, certs, report)
    _emit_report(report, args)
    return code


def _cmd_analyze_state(args) -> int:
    rho = load_state(args.path)
    base = _base_of(args)
    cfg = _cfg_of(args)
    da, db = rho.dims
    d = min(da, db)
    n = rho.dim
    ic = max_coherent_information(rho, base)
    mi = mutual_information(rho, base)
    certs = []
    witnesses = {
        "ic": "the state itself (exact evaluation)",
        "mi": "the state itself (exact evaluation)",
    }
    notes = []
    er_val = None
    if args.ree or n <= _REE_AUTO_DIM:
        er_cert = ree_ppt_lower(rho, cfg, base)
        certs.append(er_cert)
        er_val = er_cert.value
        witnesses["er"] = f"PPT descent candidate ({_search_note(er_cert)})"
    else:
        notes.append(
            f"relative entropy certificate skipped (dimension {n} exceeds "
            f"{_REE_AUTO_DIM}); pass --ree to force it"
        )
    oracle_val = None
    if args.oracle or n <= _ORACLE_AUTO_DIM:
        o_cert = trace_dist_to_ppt(rho, cfg)
        certs.append(o_cert)
        oracle_val = o_cert.value
    report = assemble_state_report(
        args.path,
        d=d,
        base=base,
        ic=_snap(ic),
        er_lower=None if er_val is None else _snap(er_val),
        mi=mi,
        oracle=oracle_val,
        witnesses=witnesses,
        seed=args.seed,
    )
    report.notes.extend(notes)
    report.notes.append(f"state: dims=({da}, {db})")
    code = _strict_exit(args, certs, report)
    _emit_report(report, args)
    return code


# ----- reproduce tables -----


def _parse_d_range(text: str) -> list[int]:
    """Either 'a..b' (doubling from a up to b) or a comma list of ints."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if lo < 2 or hi < lo:
                raise ValueError
            ds = []
            d = lo
            while d <= hi:
                ds.append(d)
                d *= 2
            return ds
        ds = [int(t) for t in text.split(",") if t.strip()]
        if not ds or any(d < 2 for d in ds):
            raise ValueError
        return ds
    except ValueError:
        raise ValueError(f"bad dimension range {text!r}") from None


def _parse_p_grid(text: str) -> list[float]:
    """'start:stop:count' linear grid."""
    try:
        start_s, stop_s, count_s = text.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
        if count < 1 or not 0.0 <= start <= stop <= 1.0:
            raise ValueError
    except ValueError:
        raise ValueError(f"bad probability grid {text!r}") from None
    return [float(p) for p in np.linspace(start, stop, count)]


def _table_ex1(ds: list[int], base: float) -> tuple[list[str], list[list]]:
    rows = []
    for d in ds:
        gap = _log(float(d), base)
        rows.append(
            [
                d,
                channel_distance_kernel(gap, d, base),
                state_distance_kernel(gap, d, base),
            ]
        )
    return ["d", "Eq9", "Eq10"], rows


def _table_ex2(ds: list[int], ps: list[float], base: float) -> tuple[list[str], list[list]]:
    rows = []
    for d in ds:
        log_d = _log(float(d), base)
        for p in ps:
            gap_ic = (1.0 - 2.0 * p) * log_d
            gap_l = (1.0 - p) * log_d - binary_entropy(p, base)
            gap_er = (1.0 - p) * log_d
            rows.append(
                [
                    d,
                    p,
                    state_distance_kernel(gap_ic, d, base),
                    state_distance_kernel(gap_l, d, base),
                    state_distance_kernel(gap_er, d, base),
                    2.0 * (1.0 - p),
                ]
            )
    return ["d", "p", "Eq10", "Eq11", "Eq12", "upper"], rows


def _table_tightness(ds: list[int], x: float, base: float) -> tuple[list[str], list[list]]:
    if not 0.0 < x < 0.5:
        raise ValueError(f"x must lie strictly between 0 and 0.5, got {x}")
    p = 0.5 - x
    rows = []
    for d in ds:
        log_d = _log(float(d), base)
        eq9 = channel_distance_kernel(2.0 * x * log_d, d, base)
        eq9_upper = 2.0 * x
        eq12 = state_distance_kernel((1.0 - p) * log_d, d, base)
        eq12_upper = 2.0 * (1.0 - p)
        rows.append(
            [d, eq9, eq9_upper, eq9 / eq9_upper, eq12, eq12_upper, eq12 / eq12_upper]
        )
    return (
        ["d", "Eq9", "Eq9_upper", "Eq9_ratio", "Eq12", "Eq12_upper", "Eq12_ratio"],
        rows,
    )


def _table_text(name, columns, rows, base, fmt) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(columns)
        for row in rows:
            w.writerow([repr(float(c)) if isinstance(c, float) else c for c in row])
        return buf.getvalue()
    return json.dumps(
        {
            "table": name,
            "log_base": base_label(base),
            "columns": columns,
            "rows": rows,
        },
        indent=2,
    )


_TABLE_DEFAULT_D = {"ex1": "2..64", "ex2": "16", "tightness": "2..4096"}


def _cmd_reproduce(args) -> int:
    base = _base_of(args)
    ds = _parse_d_range(args.d_range or _TABLE_DEFAULT_D[args.table])
    if args.table == "ex1":
        columns, rows = _table_ex1(ds, base)
    elif args.table == "ex2":
        columns, rows = _table_ex2(ds, _parse_p_grid(args.p_grid), base)
    else:
        columns, rows = _table_tightness(ds, args.x, base)
    _emit(_table_text(args.table, columns, rows, base, args.format), args.out)
    return 0


# ----- zoo -----


def _int_param(value: float, name: str) -> int:
    if value != int(value):
        raise ValueError(f"{name} must be an integer, got {value}")
    return int(value)


def _cmd_zoo(args) -> int:
    name, params = args.name, args.params
    if name == "erasure":
        if len(params) != 2:
            raise ValueError("zoo erasure takes: d p")
        phi = erasure(_int_param(params[0], "d"), params[1])
    elif name == "identity":
        if len(params) != 2:
            raise ValueError("zoo identity takes: d_in d_out")
        phi = identity_embedding(
            _int_param(params[0], "d_in"), _int_param(params[1], "d_out")
        )
    elif name == "depolarizing":
        if len(params) != 2:
            raise ValueError("zoo depolarizing takes: d lambda")
        phi = depolarizing(_int_param(params[0], "d"), params[1])
    elif name == "completely-depolarizing":
        if len(params) != 1:
            raise ValueError("zoo completely-depolarizing takes: d")
        phi = completely_depolarizing(_int_param(params[0], "d"))
    else:
        raise ValueError(f"unknown zoo channel {name!r}")
    _emit(json.dumps(channel_to_dict(phi)), args.out)
    return 0


# ----- parser -----


def _add_output_flags(sp) -> None:
    sp.add_argument("--out", default=None, help="write the report here instead of stdout")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--log-base", choices=["2", "e"], default="2", dest="log_base")


def _add_optimizer_flags(sp) -> None:
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=int, default=8)
    sp.add_argument("--max-iters", type=int, default=500, dest="max_iters")
    sp.add_argument(
        "--strict",
        action="store_true",
        help="exit with code 3 if any search fails to converge",
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="distcert",
        description=(
            "Certified lower bounds on distances from channels and states to "
            "structured sets (degradable, antidegradable, entanglement "
            "breaking, separable, product)."
        ),
    )
    sub = p.add_subparsers(dest="command", required=True)

    ac = sub.add_parser("analyze-channel", help="bound distances for a channel file")
    ac.add_argument("path", help="channel JSON file")
    _add_output_flags(ac)
    _add_optimizer_flags(ac)
    ac.add_argument(
        "--ree",
        action="store_true",
        help="also certify the relative entropy of entanglement of the "
        "normalized Choi state (slower)",
    )

    st = sub.add_parser("analyze-state", help="bound distances for a bipartite state file")
    st.add_argument("path", help="state JSON file")
    _add_output_flags(st)
    _add_optimizer_flags(st)
    st.add_argument(
        "--ree",
        action="store_true",
        help=f"force the relative entropy certificate above dimension {_REE_AUTO_DIM}",
    )
    st.add_argument(
        "--oracle",
        action="store_true",
        help=f"force the PPT trace-distance search above dimension {_ORACLE_AUTO_DIM}",
    )

    rp = sub.add_parser("reproduce", help="closed-form scan tables")
    rp.add_argument("table", choices=["ex1", "ex2", "tightness"])
    _add_output_flags(rp)
    rp.add_argument(
        "--d-range",
        default=None,
        dest="d_range",
        help="'a..b' doubling sweep or comma list (default depends on the table)",
    )
    rp.add_argument("--p-grid", default="0.2:0.6:9", dest="p_grid", help="start:stop:count")
    rp.add_argument("--x", type=float, default=0.25, help="erasure offset for tightness")

    zoo = sub.add_parser("zoo", help="write a named channel as JSON")
    zoo.add_argument(
        "name",
        help="erasure | identity | depolarizing | completely-depolarizing",
    )
    zoo.add_argument("params", nargs="*", type=float)
    zoo.add_argument("--out", default=None)
    return p


_DISPATCH = {
    "analyze-channel": _cmd_analyze_channel,
    "analyze-state": _cmd_analyze_state,
    "reproduce": _cmd_reproduce,
    "zoo": _cmd_zoo,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
