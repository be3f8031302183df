"""Command-line front end: ``coltri <group> <command> ...``.

Exit status is 0 on success, 1 on domain errors (a JSON error object goes
to stderr) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import bubble_catalog as bc
from . import colored_graph as cg
from . import enhancement as en
from . import gluing_space as gs
from . import quartic_gf as qg
from . import stuffed_maps as sm

FORMATS = ("json", "csv", "human")


@dataclass
class RunConfig:
    command: tuple[str, ...]
    args: dict = field(default_factory=dict)
    out: str | None = None
    fmt: str = "json"
    edge_cap: int = gs.DEFAULT_EDGE_CAP
    pairing_cap: int = bc.DEFAULT_PAIRING_CAP
    digits: int = qg.DEFAULT_DIGITS

    def __post_init__(self):
        if self.edge_cap < 1 or self.pairing_cap < 1:
            raise ValueError("caps must be positive")
        if self.digits < 30:
            raise ValueError("precision must be at least 30 digits")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")


# -- input helpers -----------------------------------------------------------


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise cg.GraphError(f"{path}: invalid JSON: {exc}") from exc


def _load_graph(path: str) -> cg.ColoredGraph:
    g = cg.ColoredGraph.from_dict(_load_json(path))
    cg.require_valid(g)
    return g


def _load_pairing(path: str, g: cg.ColoredGraph) -> bc.Pairing | None:
    data = _load_json(path)
    block = data.get("pairing")
    if block is None:
        return None
    return bc.Pairing(g, tuple(tuple(p) for p in block["pairs"]))


def _parse_groups(text: str) -> list[list[int]]:
    """``"1,3:2,4"`` -> ``[[1, 3], [2, 4]]``."""
    try:
        return [[int(x) for x in part.split(",") if x] for part in text.split(":")]
    except ValueError as exc:
        raise cg.GraphError(f"cannot parse color groups {text!r}") from exc


def _parse_range(text: str) -> list[Fraction]:
    """``"a:b:n"`` -> n evenly spaced rationals from a to b; a bare value is one point."""
    parts = text.split(":")
    if len(parts) == 1:
        return [Fraction(parts[0])]
    if len(parts) != 3:
        raise cg.GraphError(f"range {text!r} must be a:b:n")
    a, b, n = Fraction(parts[0]), Fraction(parts[1]), int(parts[2])
    if n < 1:
        raise cg.GraphError("range needs at least one point")
    if n == 1:
        return [a]
    return [a + (b - a) * i / (n - 1) for i in range(n)]


# -- command handlers ---------------------------------------------------------
# Each returns either a JSON-able object or ("csv", header, rows).


def _graph_validate(cfg):
    g = cg.ColoredGraph.from_dict(_load_json(cfg.args["graph"]))
    return cg.validate(g).to_dict()


def _graph_faces(cfg):
    return cg.faces(_load_graph(cfg.args["graph"])).to_dict()


def _graph_degree(cfg):
    g = _load_graph(cfg.args["graph"])
    census = cg.faces(g)
    return {"omega": cg.gurau_degree(g), "F": census.total, "E": len(g.color_zero_edges), "b": len(g.bubbles())}


def _graph_boundary(cfg):
    return cg.boundary_bubble(_load_graph(cfg.args["graph"])).to_dict()


def _graph_key(cfg):
    g = _load_graph(cfg.args["graph"])
    return {"key": cg.key_digest(cg.canonical_key(g))}


def _bubble_melonic(cfg):
    spec = bc.melonic_bubble(cfg.args["d"], cfg.args["insert"] or [])
    return spec.graph.to_dict()


def _bubble_necklace(cfg):
    split = _parse_groups(cfg.args["split"]) if cfg.args["split"] else None
    return bc.necklace_bubble(cfg.args["d"], cfg.args["p"], split).graph.to_dict()


def _bubble_pairing(cfg):
    g = _load_graph(cfg.args["bubble"])
    pairing, F = bc.best_pairing(g, cfg.pairing_cap)
    out = g.to_dict()
    out["pairing"] = pairing.to_dict()
    out["F_closure"] = F
    return out


def _glue_enumerate(cfg):
    g = _load_graph(cfg.args["bubble"])
    enum = gs.enumerate_gluings(g, cfg.args["count"], cfg.args["mode"], cfg.edge_cap, cfg.args["s"])
    rows = [r.row() for r in enum.records]
    header = ["graph_key"] + [f"F_0{c}" for c in range(1, g.d + 1)] + ["F", "E", "omega", "delta", "count"]
    return ("csv", header, rows)


def _enhance_inherited(cfg):
    h = _load_graph(cfg.args["graph"])
    return en.inherited_enhancement(h, Fraction(cfg.args["s_bubble"]), cfg.args["p_bubble"]).to_dict()


def _enhance_slice(cfg):
    g = _load_graph(cfg.args["bubble"])
    per = [Fraction(x) for x in cfg.args["slice_s"].split(",")] if cfg.args["slice_s"] else None
    return en.slice_enhancement(g, _parse_groups(cfg.args["slices"]), per).to_dict()


def _enhance_pairing(cfg):
    g = _load_graph(cfg.args["bubble"])
    pairing = _load_pairing(cfg.args["bubble"], g)
    return en.pairing_enhancement(g, pairing, cfg.args["verify_bmax"], cfg.edge_cap).to_dict()


def _enhance_empirical(cfg):
    g = _load_graph(cfg.args["bubble"])
    return en.empirical_record(g, cfg.args["b_max"], cfg.edge_cap).to_dict()


def _map_stuffed(cfg):
    g = _load_graph(cfg.args["graph"])
    b = _load_graph(cfg.args["bubble"])
    pairing = _load_pairing(cfg.args["bubble"], b) or bc.best_pairing(b, cfg.pairing_cap)[0]
    w = sm.to_stuffed_map(g, b, pairing)
    out = w.to_dict()
    out["face_census"] = list(w.census())
    out["projected_is_tree"] = sm.projected_map(w).is_tree()
    return out


def _gf_series(cfg):
    k, lam = Fraction(cfg.args["k"]), Fraction(cfg.args["lambda"])
    f = qg.quartic_series(k, lam, cfg.args["order"])
    if cfg.args["csv"] or cfg.fmt == "csv":
        return ("csv", ["n", "coefficient"], [{"n": n, "coefficient": str(c)} for n, c in enumerate(f.coeffs)])
    return {"k": str(k), "lambda": str(lam), "order": f.order, "coefficients": [str(c) for c in f.coeffs]}


def _gf_critical(cfg):
    pts = qg.critical_points(cfg.args["k"], cfg.args["lambda"], cfg.digits)
    out = pts[0].to_dict()
    out["points"] = [p.to_dict() for p in pts]
    return out


def _gf_exponent(cfg):
    return qg.singular_exponent(cfg.args["k"], cfg.args["lambda"], digits=cfg.digits).to_dict()


def _gf_phase(cfg):
    rows = qg.phase_diagram(_parse_range(cfg.args["k_range"]), _parse_range(cfg.args["lambda_range"]), cfg.digits)
    return ("csv", ["k", "lambda", "t_c", "f_c", "u_c", "regime", "status"], rows)


HANDLERS = {
    ("graph", "validate"): _graph_validate,
    ("graph", "faces"): _graph_faces,
    ("graph", "degree"): _graph_degree,
    ("graph", "boundary"): _graph_boundary,
    ("graph", "key"): _graph_key,
    ("bubble", "melonic"): _bubble_melonic,
    ("bubble", "necklace"): _bubble_necklace,
    ("bubble", "pairing"): _bubble_pairing,
    ("glue", "enumerate"): _glue_enumerate,
    ("enhance", "inherited"): _enhance_inherited,
    ("enhance", "slice"): _enhance_slice,
    ("enhance", "pairing"): _enhance_pairing,
    ("enhance", "empirical"): _enhance_empirical,
    ("map", "stuffed"): _map_stuffed,
    ("gf", "series"): _gf_series,
    ("gf", "critical"): _gf_critical,
    ("gf", "exponent"): _gf_exponent,
    ("gf", "phase-diagram"): _gf_phase,
}


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    common.add_argument("--cap", type=int, default=gs.DEFAULT_EDGE_CAP, help="enumeration cap (color-0 edges)")
    common.add_argument("--pairing-cap", type=int, default=bc.DEFAULT_PAIRING_CAP)
    common.add_argument("--digits", type=int, default=None, help="working precision (default 50)")

    parser = argparse.ArgumentParser(prog="coltri", description="Colored graphs, bubbles, gluings and their maps.")
    groups = parser.add_subparsers(dest="group", required=True)

    def sub(group, name, **kw):
        return group.add_parser(name, parents=[common], **kw)

    graph = groups.add_parser("graph").add_subparsers(dest="command", required=True)
    for name in ("validate", "faces", "degree", "boundary", "key"):
        sub(graph, name).add_argument("--graph", required=True)

    bubble = groups.add_parser("bubble").add_subparsers(dest="command", required=True)
    p = sub(bubble, "melonic")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--insert", action="append", help="dipole insertion e<white>:<color>; repeatable")
    p = sub(bubble, "necklace")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--split", help="color halves, e.g. 1,3:2,4")
    sub(bubble, "pairing").add_argument("--bubble", required=True)

    glue = groups.add_parser("glue").add_subparsers(dest="command", required=True)
    p = sub(glue, "enumerate")
    p.add_argument("--bubble", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--mode", choices=gs.MODES, default="labeled")
    p.add_argument("--s", type=Fraction, default=None, help="enhancement used for delta (default d-1)")

    enhance = groups.add_parser("enhance").add_subparsers(dest="command", required=True)
    p = sub(enhance, "inherited")
    p.add_argument("--graph", required=True, help="open gluing H")
    p.add_argument("--s-bubble", required=True)
    p.add_argument("--p-bubble", type=int, default=None)
    p = sub(enhance, "slice")
    p.add_argument("--bubble", required=True)
    p.add_argument("--slices", required=True, help="color slices, e.g. 1,2,3:4,5")
    p.add_argument("--slice-s", default=None, help="per-slice enhancements, e.g. 2,1")
    p = sub(enhance, "pairing")
    p.add_argument("--bubble", required=True, help="bubble JSON, optionally with a pairing block")
    p.add_argument("--verify-bmax", type=int, default=None)
    p = sub(enhance, "empirical")
    p.add_argument("--bubble", required=True)
    p.add_argument("--b-max", type=int, required=True)

    maps = groups.add_parser("map").add_subparsers(dest="command", required=True)
    p = sub(maps, "stuffed")
    p.add_argument("--graph", required=True)
    p.add_argument("--bubble", required=True)

    gf = groups.add_parser("gf").add_subparsers(dest="command", required=True)
    for name in ("series", "critical", "exponent"):
        p = sub(gf, name)
        p.add_argument("--k", type=Fraction, required=True)
        p.add_argument("--lambda", dest="lambda", type=Fraction, required=True)
        if name == "series":
            p.add_argument("--order", type=int, default=10)
            p.add_argument("--csv", action="store_true")
    p = sub(gf, "phase-diagram")
    p.add_argument("--k-range", required=True, help="a:b:n")
    p.add_argument("--lambda-range", required=True, help="a:b:n")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    args = dict(vars(ns))
    command = (args.pop("group"), args.pop("command"))
    digits = args.pop("digits")
    if digits is None:
        digits = int(os.environ.get("TENSOR_PRECISION_DIGITS", qg.DEFAULT_DIGITS))
    return RunConfig(
        command,
        args,
        out=args.pop("out"),
        fmt=args.pop("fmt"),
        edge_cap=args.pop("cap"),
        pairing_cap=args.pop("pairing_cap"),
        digits=digits,
    )


# -- rendering ---------------------------------------------------------------


def _render(result, fmt: str) -> str:
    if isinstance(result, tuple) and result and result[0] == "csv":
        _, header, rows = result
        if fmt == "json":
            return json.dumps(rows, indent=2) + "\n"
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "human":
        return "".join(f"{k}: {json.dumps(v)}\n" for k, v in result.items())
    return json.dumps(result, indent=2) + "\n"


def dispatch(cfg: RunConfig) -> str:
    handler = HANDLERS.get(cfg.command)
    if handler is None:
        raise cg.GraphError(f"unknown command {' '.join(cfg.command)}")
    text = _render(handler(cfg), cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return ""
    return text


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        text = dispatch(cfg)
    except (cg.GraphError, ValueError, ZeroDivisionError, OSError, KeyError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        sys.stderr.write(json.dumps(err) + "\n")
        return 1
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
