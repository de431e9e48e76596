"""Command-line front end: ``entorder {bcs,eta,bh,sweep,verify}``.

Reports are rows of ``model``, ``params`` and ``quantities``. JSON keeps full
binary64 precision; CSV prints 9 significant digits.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import warnings
from typing import Callable

from . import __version__, bcs, bh, checks, eta, measures, tensor

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- quantity registry -------------------------------------------------------
# Each entry: name -> (description, fn(params, ctx) -> {emitted name: value}).

def _eta_spec(p):
    return eta.DickeSpec(p["n"], p["k"])


def _eta_gme_optimizer(p, ctx):
    s = _eta_spec(p)
    res = measures.nearest_product_overlap(eta.dicke_state_vector(s), (2,) * s.n, ctx["cfg"])
    if not res.converged:
        ctx["warnings"].append(f"gme_optimizer did not converge for n={s.n}, k={s.k}")
    return {"gme_optimizer": max(-math.log2(res.overlap), 0.0)}


def _eta_fef(p, ctx):
    rdm = eta.eta_two_site_rdm(_eta_spec(p))
    return measures.fully_entangled_fraction(rdm.matrix(), seed=ctx["cfg"].seed)


def _eta_asymptotics(p, ctx):
    if "r" not in p:
        raise UsageError("asymptotics quantities need --r")
    (row,) = eta.dicke_asymptotics_report(p["r"], [p["n"]])
    return {name: row[name] for name in ("lrg", "lrg_per_site", "de_claimed", "log_asymptote", "lrg_minus_log_asymptote")}


def _asym_single(name):
    return lambda p, ctx: {name: _eta_asymptotics(p, ctx)[name]}


ETA_QUANTITIES: dict[str, tuple[str, Callable]] = {
    "rdm": ("two-site reduced state weights (closed form)", lambda p, ctx: {
        f"rdm.{k}": v for k, v in vars(eta.eta_two_site_rdm(_eta_spec(p))).items()}),
    "alpha": ("order parameter 2k(n-k)/(n(n-1))", lambda p, ctx: {
        "alpha": eta.alpha_order_parameter(_eta_spec(p))}),
    "correlator": ("pair-hopping correlator <01|sigma|10> on the explicit state", lambda p, ctx: {
        "correlator": eta.odlro_pair_correlator(_eta_spec(p))}),
    "gme": ("log geometric measure, closed form (bits)", lambda p, ctx: {
        "gme": eta.gme_dicke_closed_form(_eta_spec(p))}),
    "gme_optimizer": ("log geometric measure, nearest-product-state search (bits)", _eta_gme_optimizer),
    "fef": ("fully entangled fraction of the two-site state", lambda p, ctx: {"fef": _eta_fef(p, ctx)}),
    "teleport_fidelity": ("teleportation fidelity (2F+1)/3", lambda p, ctx: {
        "teleport_fidelity": measures.teleportation_fidelity(_eta_fef(p, ctx))}),
    "de_paper": ("published entanglement density as a function of alpha", lambda p, ctx: {
        "de_paper": eta.de_from_alpha_paper(eta.alpha_order_parameter(_eta_spec(p)))}),
    "asymptotics": ("lrg, lrg_per_site, de_claimed, log_asymptote at k=round(rn)", _eta_asymptotics),
    "lrg": ("exact log geometric measure at k=round(rn)", _asym_single("lrg")),
    "lrg_per_site": ("lrg / n", _asym_single("lrg_per_site")),
    "de_claimed": ("extensive density h(r) from the Stirling argument", _asym_single("de_claimed")),
    "log_asymptote": ("1/2 log2(2 pi n r (1-r))", _asym_single("log_asymptote")),
}


def _bh_spec(p):
    return bh.SuperfluidSpec(p["N"], p["M"])


def _bh_clt(variant):
    def fn(p, ctx):
        s = _bh_spec(p)
        if not bh.clt_is_reliable(s):
            ctx["warnings"].append(f"negativity.clt.{variant}: N p (1-p) < {bh.CLT_MIN_VARIANCE:g}, low confidence")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", bh.LowConfidenceWarning)
            return {f"negativity.clt.{variant}": bh.superfluid_negativity_clt(s, variant)}
    return fn


def _bh_oracle(p, ctx):
    psi, basis = bh.superfluid_state_vector(_bh_spec(p))
    mat = bh.site_bipartition(psi, basis, 0)
    return {"negativity.oracle": measures.negativity(tensor.projector(mat.ravel()), mat.shape)}


BH_QUANTITIES: dict[str, tuple[str, Callable]] = {
    "schmidt": ("Schmidt coefficients, site vs rest (closed form)", lambda p, ctx: {
        f"schmidt.{i}": float(v) for i, v in enumerate(bh.superfluid_schmidt(_bh_spec(p)))}),
    "negativity.exact": ("exact site-vs-rest negativity", lambda p, ctx: {
        "negativity.exact": bh.superfluid_negativity_exact(_bh_spec(p))}),
    "negativity.oracle": ("partial-transpose negativity of the explicit state (small N, M)", _bh_oracle),
    "negativity.clt.paper": ("published Gaussian estimate ((8Np(1-p))^1/2 - 1)/2", _bh_clt("paper")),
    "negativity.clt.corrected": ("Gaussian estimate sqrt(2 pi N p(1-p)) - 1/2", _bh_clt("corrected")),
    "negativity.poisson": ("N, M -> inf limit at lambda = N/M", lambda p, ctx: {
        "negativity.poisson": bh.superfluid_negativity_poisson_limit(p["N"] / p["M"])}),
    "odlro": ("hopping correlator <a_i^dag a_j> = N/M", lambda p, ctx: {
        "odlro": bh.bh_odlro_correlator(_bh_spec(p)) if p["M"] > 1 else 0.0}),
    "annihilation": ("<a_0> on the explicit state (number conserving)", lambda p, ctx: {
        "annihilation": abs(bh.bh_annihilation_expectation(_bh_spec(p)))}),
    "r": ("order parameter sqrt(N/M)", lambda p, ctx: {"r": bh.bh_order_parameter_r(_bh_spec(p))}),
}


def _bcs_model(p):
    return p["_model"]


BCS_QUANTITIES: dict[str, tuple[str, Callable]] = {
    "log_negativity": ("total alpha vs -alpha log-negativity (bits)", lambda p, ctx: {
        "log_negativity": bcs.bcs_log_negativity_total(_bcs_model(p))}),
    "log_negativity.oracle": ("sum of per-pair partial-transpose log-negativities", lambda p, ctx: {
        "log_negativity.oracle": math.fsum(
            measures.log_negativity(tensor.projector(bcs.pair_state_vector(m.pair())), (2, 2))
            for m in _bcs_model(p).modes)}),
    "energy": ("ground-state energy", lambda p, ctx: {"energy": bcs.bcs_ground_state_energy(_bcs_model(p))}),
    "hf_energy": ("Hartree-Fock part of the energy", lambda p, ctx: {
        "hf_energy": bcs.hartree_fock_energy(_bcs_model(p))}),
}

REGISTRY = {"bcs": BCS_QUANTITIES, "eta": ETA_QUANTITIES, "bh": BH_QUANTITIES}
DEFAULT_QUANTITIES = {
    "bcs": ["log_negativity"],
    "eta": ["rdm", "alpha", "correlator", "gme"],
    "bh": ["negativity.exact", "odlro", "r"],
}


# -- rows and output ---------------------------------------------------------

def _evaluate(model: str, params: dict, names: list[str], ctx: dict) -> dict:
    table = REGISTRY[model]
    quantities: dict[str, float] = {}
    for name in names:
        if name not in table:
            raise UsageError(f"unknown {model} quantity {name!r}; see --list-quantities")
        for key, value in table[name][1](params, ctx).items():
            value = float(value)
            if not math.isfinite(value):
                raise ArithmeticError(f"quantity {key} is not finite")
            quantities[key] = value
    public = {k: v for k, v in params.items() if not k.startswith("_")}
    return {"model": model, "params": public, "quantities": quantities}


def _fmt_csv(value) -> str:
    if isinstance(value, bool) or isinstance(value, int):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def render(rows: list[dict], fmt: str, meta: dict) -> str:
    if fmt == "json":
        payload = [dict(row, meta=meta) for row in rows]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n"
    param_keys: list[str] = []
    quantity_keys: list[str] = []
    for row in rows:
        param_keys += [k for k in row["params"] if k not in param_keys]
        quantity_keys += [k for k in row["quantities"] if k not in quantity_keys]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["model"] + [f"param:{k}" for k in param_keys] + [f"quantity:{k}" for k in quantity_keys])
    for row in rows:
        writer.writerow(
            [row["model"]]
            + [_fmt_csv(row["params"].get(k, "")) for k in param_keys]
            + [_fmt_csv(row["quantities"].get(k, "")) for k in quantity_keys]
        )
    return buf.getvalue()


def write_output(text: str, out: str | None) -> None:
    """Write to stdout, or atomically to ``out`` via a temp file and rename."""
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".entorder-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- argument parsing --------------------------------------------------------

def _split(text: str | None) -> list[str]:
    return [t.strip() for t in (text or "").split(",") if t.strip()]


def _parse_number(text: str) -> int | float:
    try:
        return int(text)
    except ValueError:
        return float(text)


def parse_grid(specs: list[str]) -> list[tuple[str, list]]:
    """``name=a,b,c`` or ``name=start:stop:step`` (stop inclusive)."""
    axes = []
    for spec in specs:
        if "=" not in spec:
            raise UsageError(f"grid spec {spec!r} must look like name=values")
        name, values = spec.split("=", 1)
        if ":" in values:
            parts = values.split(":")
            if len(parts) != 3:
                raise UsageError(f"range {values!r} must be start:stop:step")
            start, stop, step = (_parse_number(x) for x in parts)
            if step <= 0:
                raise UsageError("grid step must be positive")
            vals, v = [], start
            while v <= stop + (1e-12 * abs(step) if isinstance(step, float) else 0):
                vals.append(v)
                v = v + step
        else:
            vals = [_parse_number(x) for x in _split(values)]
        if not vals:
            raise UsageError(f"grid axis {name!r} is empty")
        axes.append((name.strip(), vals))
    if not axes:
        raise UsageError("empty grid")
    return axes


def _grid_points(axes):
    points = [{}]
    for name, vals in axes:
        points = [dict(p, **{name: v}) for p in points for v in vals]
    return points


def _parse_pairs(text):
    modes = []
    for item in _split(text):
        try:
            u, v = (float(x) for x in item.split(":"))
        except ValueError:
            raise UsageError(f"--pairs entry {item!r} must be u:v") from None
        if abs(math.hypot(u, v) - 1.0) > 1e-4:
            raise ValueError(f"pair {item!r} is not normalized: u^2 + v^2 = {u * u + v * v:.6g}")
        modes.append(bcs.PairAmplitudes.normalized(u, v))
    return modes


def _parse_gaps(text):
    gaps = []
    for item in _split(text):
        try:
            d, e, m = (float(x) for x in item.split(":"))
        except ValueError:
            raise UsageError(f"--gaps entry {item!r} must be delta:eps:mu") from None
        gaps.append(bcs.GapTriple(d, e, m))
    return gaps


def _bcs_params(args) -> dict:
    if bool(args.pairs) == bool(args.gaps):
        raise UsageError("bcs needs exactly one of --pairs or --gaps")
    tdiag = [float(x) for x in _split(args.tdiag)]
    entries = _parse_pairs(args.pairs) if args.pairs else _parse_gaps(args.gaps)
    if tdiag and len(tdiag) != len(entries):
        raise UsageError("--tdiag needs one value per mode")
    modes = []
    for i, entry in enumerate(entries):
        kw = {"amplitudes": entry} if isinstance(entry, bcs.PairAmplitudes) else {"gap": entry}
        modes.append(bcs.BcsMode(f"m{i:03d}", t_diag=tdiag[i] if tdiag else 0.0, **kw))
    return {"modes": len(modes), "_model": bcs.BcsModel(tuple(modes))}


def _common(parser):
    parser.add_argument("--format", choices=("csv", "json"), default="json")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--seed", type=int, default=measures.DEFAULT_SEED)
    parser.add_argument("--restarts", type=int, default=32)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entorder", description=__doc__.splitlines()[0])
    parser.add_argument("--list-quantities", action="store_true", help="list every quantity name and exit")
    parser.add_argument("--version", action="version", version=f"entorder {__version__}")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("bcs", help="BCS pair states")
    _common(p)
    p.add_argument("--pairs", help="u:v[,u:v...]")
    p.add_argument("--gaps", help="delta:eps:mu[,...]")
    p.add_argument("--tdiag", help="T_aa per mode, comma separated")
    p.add_argument("--quantities")

    p = sub.add_parser("eta", help="eta-pairing (Dicke) states")
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=float, help="filling ratio; k = round(r n)")
    p.add_argument("--grid", action="append", default=[], help="n=... grid used with --r")
    p.add_argument("--quantities")

    p = sub.add_parser("bh", help="Bose-Hubbard superfluid")
    _common(p)
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--quantities")

    p = sub.add_parser("sweep", help="evaluate quantities over a parameter grid")
    _common(p)
    p.add_argument("--model", choices=("eta", "bh"), required=True)
    p.add_argument("--grid", action="append", default=[], required=True)
    p.add_argument("--r", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--sites", type=int)
    p.add_argument("--sites-equal-atoms", action="store_true")
    p.add_argument("--quantities")

    p = sub.add_parser("verify", help="run the oracle-equivalence suite")
    _common(p)
    p.add_argument("--suite", choices=("all",) + checks.SUITES, default="all")
    p.add_argument("--tol", action="append", default=[], help="group=value overrides, e.g. gme=1e-5")
    return parser


def _eta_point(point: dict, r: float | None, k: int | None) -> dict:
    n = point.get("n")
    if n is None:
        raise UsageError("eta needs --n (or an n grid)")
    params = {"n": int(n)}
    if "k" in point:
        params["k"] = int(point["k"])
    elif k is not None:
        params["k"] = k
    elif r is not None:
        params["k"] = round(r * n)
    else:
        raise UsageError("eta needs --k or --r")
    if r is not None:
        params["r"] = r
    return params


def _bh_point(point: dict, sites: int | None, equal: bool) -> dict:
    N = point.get("N", point.get("atoms"))
    if N is None:
        raise UsageError("bh needs an atom count (N)")
    M = point.get("M", point.get("sites", sites))
    if equal:
        M = N
    if M is None:
        raise UsageError("bh needs --sites, an M grid or --sites-equal-atoms")
    return {"N": int(N), "M": int(M)}


def _rows(args, ctx) -> list[dict]:
    cmd = args.command
    model = args.model if cmd == "sweep" else cmd
    names = _split(args.quantities) or DEFAULT_QUANTITIES[model]
    if cmd == "bcs":
        params = [_bcs_params(args)]
        if args.quantities is None and args.gaps and args.tdiag:
            names = ["log_negativity", "energy", "hf_energy"]
    elif cmd == "eta":
        if args.grid:
            if args.r is None:
                raise UsageError("eta --grid needs --r")
            params = [_eta_point(pt, args.r, None) for pt in _grid_points(parse_grid(args.grid))]
        else:
            params = [_eta_point({"n": args.n}, args.r, args.k)]
    elif cmd == "bh":
        params = [_bh_point({"N": args.atoms, "M": args.sites}, None, False)]
    else:
        points = _grid_points(parse_grid(args.grid))
        if model == "eta":
            params = [_eta_point(pt, args.r, args.k) for pt in points]
        else:
            params = [_bh_point(pt, args.sites, args.sites_equal_atoms) for pt in points]
    return [_evaluate(model, p, names, ctx) for p in params]


def _verify(args) -> int:
    overrides = {}
    for item in args.tol:
        for part in _split(item):
            if "=" not in part:
                raise UsageError(f"--tol entry {part!r} must be group=value")
            key, value = part.split("=", 1)
            overrides[key.strip()] = float(value)
    try:
        results = checks.run_checks(args.suite, overrides, seed=args.seed)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    passed = all(r["passed"] for r in results)
    for r in results:
        status = "PASS" if r["passed"] else "FAIL"
        print(f"{status}  {r['suite']:<9} {r['name']:<36} err={r['error']:.3e} tol={r['tol']:.1e} "
              f"({r['seconds']:.2f}s)", file=sys.stderr)
    summary = {
        "suite": args.suite,
        "passed": passed,
        "checks": [{k: r[k] for k in ("name", "suite", "error", "tol", "passed")} for r in results],
        "meta": {"seed": args.seed, "version": __version__},
    }
    if args.format == "json":
        text = json.dumps(summary, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "name", "error", "tol", "passed"])
        for c in summary["checks"]:
            w.writerow([c["suite"], c["name"], f"{c['error']:.9g}", f"{c['tol']:.9g}", int(c["passed"])])
        text = buf.getvalue()
    write_output(text, args.out)
    return EXIT_OK if passed else EXIT_FAILURE


def list_quantities() -> str:
    lines = []
    for model, table in REGISTRY.items():
        for name, (desc, _) in table.items():
            lines.append(f"{model}\t{name}\t{desc}")
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.list_quantities:
        sys.stdout.write(list_quantities())
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        if args.restarts < 1:
            raise UsageError("--restarts must be positive")
        if args.command == "verify":
            return _verify(args)
        ctx = {"cfg": measures.OptimizerConfig(restarts=args.restarts, seed=args.seed), "warnings": []}
        rows = _rows(args, ctx)
        meta = {"seed": args.seed, "version": __version__}
        if ctx["warnings"]:
            meta["warnings"] = ctx["warnings"]
        write_output(render(rows, args.format, meta), args.out)
        for w in ctx["warnings"]:
            print(f"warning: {w}", file=sys.stderr)
        return EXIT_OK
    except UsageError as exc:
        print(f"entorder: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"entorder: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
