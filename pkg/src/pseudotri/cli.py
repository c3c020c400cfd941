"""Command line interface.

Exit codes: 0 success (or the checked property holds), 1 the property
fails, 2 input or usage error, 3 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict

from . import errors
from .config import METHODS, WEIGHT_MODES, RunConfig
from .cpt import assign_cpt
from .henneberg import reverse_sequence, reverse_sequence_plus_one
from .incremental import embed_plane_laman
from .io import GraphDocument, generate_plane_laman, load, serialize
from .rigidity import Rigidity, classify
from .stretch import stretch_cpt
from .svg import render_svg
from .verify_geom import derive_labeling, geometric_report

OK, FAILS, USAGE, INTERNAL = 0, 1, 2, 3

log = logging.getLogger("pseudotri")


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> RunConfig:
    try:
        return RunConfig(
            seed=getattr(args, "seed", 0),
            weights=getattr(args, "weights", "unit"),
            tolerance=getattr(args, "tolerance", 1e-10),
            method=getattr(args, "method", "tutte"),
        )
    except ValueError as exc:
        raise _Exit(USAGE, str(exc)) from None


# -- subcommands ---------------------------------------------------------------


def cmd_check(args) -> int:
    g = load(args.file).graph()
    cls = classify(g)
    info = {"class": cls.kind.value, "n": g.order, "m": g.m}
    if cls.circuit_vertices:
        info["circuit_vertices"] = sorted(cls.circuit_vertices)
    print(json.dumps(info))
    return OK if cls.kind in (Rigidity.LAMAN, Rigidity.LAMAN_PLUS_ONE, Rigidity.CIRCUIT) else FAILS


def cmd_henneberg(args) -> int:
    g = load(args.file).graph()
    try:
        if classify(g).is_plus_one:
            seq = reverse_sequence_plus_one(g)
        else:
            seq = reverse_sequence(g, args.keep)
    except (errors.NotLaman, errors.NotLamanPlusOne) as exc:
        print(str(exc), file=sys.stderr)
        return FAILS
    out = {
        "base": list(seq.base),
        "base_rotations": {str(v): list(r) for v, r in seq.base_rotations},
        "outer_dart": list(seq.outer_dart),
        "steps": [
            {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(s).items()} for s in seq.steps
        ],
    }
    _emit(json.dumps(out, indent=1) + "\n", args.output)
    return OK


def _prescribed(args, doc: GraphDocument):
    v = getattr(args, "nonpointed", None)
    return doc.prescribed_nonpointed if v is None else v


def _labeling(doc: GraphDocument, g, prescribed):
    lab = doc.labeling(g)
    if lab is not None and (prescribed is None or lab.non_pointed == [prescribed]):
        return lab
    return assign_cpt(g, prescribed)


def cmd_cpt(args) -> int:
    doc = load(args.file)
    g = doc.graph()
    prescribed = _prescribed(args, doc)
    try:
        lab = assign_cpt(g, prescribed)
    except (errors.NoPerfectMatching, errors.BadEdgeCount) as exc:
        print(str(exc), file=sys.stderr)
        return FAILS
    _emit(serialize(GraphDocument.from_graph(g, doc.embedding(), lab, prescribed, doc.comments)), args.output)
    return OK


def _stretch(args, doc: GraphDocument, cfg: RunConfig) -> str:
    g = doc.graph()
    prescribed = _prescribed(args, doc)
    lab = _labeling(doc, g, prescribed)
    emb = stretch_cpt(g, lab, cfg.stretch_config())
    return serialize(GraphDocument.from_graph(g, emb, lab, prescribed, doc.comments))


def cmd_stretch(args) -> int:
    doc = load(args.file)
    try:
        text = _stretch(args, doc, _config(args))
    except (errors.NoPerfectMatching, errors.BadEdgeCount) as exc:
        print(str(exc), file=sys.stderr)
        return FAILS
    _emit(text, args.output)
    return OK


def cmd_embed(args) -> int:
    cfg = _config(args)
    doc = load(args.file)
    try:
        if cfg.method == "tutte":
            text = _stretch(args, doc, cfg)
        else:
            g = doc.graph()
            if classify(g).kind is not Rigidity.LAMAN:
                print("the incremental method needs a Laman graph", file=sys.stderr)
                return FAILS
            emb = embed_plane_laman(g, cfg.effective_seed)
            rep = geometric_report(emb, g)
            if not rep.pointed_pseudo_triangulation:
                raise errors.LabelMismatch("incremental embedding failed verification: " + "; ".join(rep.notes))
            text = serialize(GraphDocument.from_graph(g, emb, rep.labeling, None, doc.comments))
    except (errors.NoPerfectMatching, errors.BadEdgeCount) as exc:
        print(str(exc), file=sys.stderr)
        return FAILS
    _emit(text, args.output)
    return OK


def cmd_verify(args) -> int:
    doc = load(args.file)
    g = doc.graph()
    emb = doc.embedding()
    if emb is None:
        raise _Exit(USAGE, "document has no coords")
    rep = geometric_report(emb, g)
    info = {
        "non_crossing": rep.non_crossing,
        "rotation_consistent": rep.rotation_consistent,
        "non_pointed": rep.non_pointed,
        "degenerate_vertices": list(rep.degenerate_vertices),
        "outer_convex": rep.outer_convex,
        "edge_count_ok": rep.edge_count_ok,
        "pseudo_triangulation": rep.pseudo_triangulation,
        "pointed_pseudo_triangulation": rep.pointed_pseudo_triangulation,
        "notes": list(rep.notes),
    }
    lab = doc.labeling(g)
    if lab is not None and rep.labeling is not None:
        info["matches_cpt"] = rep.labeling.big == lab.big
    print(json.dumps(info))
    ok = rep.pseudo_triangulation and info.get("matches_cpt", True)
    return OK if ok else FAILS


def cmd_gen(args) -> int:
    try:
        doc = generate_plane_laman(args.n, args.seed, args.kind)
    except errors.BadSize as exc:
        raise _Exit(USAGE, str(exc)) from None
    _emit(serialize(doc), args.output)
    return OK


def cmd_svg(args) -> int:
    doc = load(args.file)
    g = doc.graph()
    emb = doc.embedding()
    if emb is None:
        raise _Exit(USAGE, "document has no coords")
    lab = None
    if not args.plain:
        lab = doc.labeling(g)
        if lab is None:
            try:
                lab = derive_labeling(emb, g)
            except errors.FacesMismatch:
                lab = None
    _emit(render_svg(emb, g, lab), args.output)
    return OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pseudotri", description="Pointed pseudo-triangulations of plane Laman graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file=True, output=True):
        sp = sub.add_parser(name, help=help_)
        if file:
            sp.add_argument("file")
        if output:
            sp.add_argument("-o", "--output")
        sp.set_defaults(func=func)
        return sp

    add("check", cmd_check, "rigidity class of the graph", output=False)
    sp = add("henneberg", cmd_henneberg, "plane Henneberg sequence as JSON")
    sp.add_argument("--keep", type=int, nargs="+", help="base edge (two ids) or base triangle (three ids)")
    sp = add("cpt", cmd_cpt, "assign a combinatorial pseudo-triangulation")
    sp.add_argument("--nonpointed", type=int)
    for name, func in (("stretch", cmd_stretch), ("embed", cmd_embed)):
        sp = add(name, func, "straight-line pseudo-triangulation" if name == "stretch" else "embed by either method")
        sp.add_argument("--nonpointed", type=int)
        sp.add_argument("--weights", choices=WEIGHT_MODES, default="unit")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tolerance", type=float, default=1e-10)
        if name == "embed":
            sp.add_argument("--method", choices=METHODS, default="tutte")
    add("verify", cmd_verify, "geometric report of a document with coords", output=False)
    sp = add("gen", cmd_gen, "generate a plane Laman graph or circuit", file=False)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--kind", choices=("laman", "circuit"), default="laman")
    sp = add("svg", cmd_svg, "draw a document with coords")
    sp.add_argument("--plain", action="store_true", help="omit angle marks")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except _Exit as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except (errors.LabelMismatch, errors.SolverFailure, errors.NotThreeConnected, errors.NoPlacement,
            errors.NoValidExtension) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return INTERNAL
    except (errors.ParseError, OSError, errors.PrescriptionInvalid, errors.PrescribedVertexOnOuterFace) as exc:
        print(str(exc), file=sys.stderr)
        return USAGE
    except errors.PseudoTriError as exc:
        print(str(exc), file=sys.stderr)
        return USAGE if isinstance(exc, ValueError) else FAILS


if __name__ == "__main__":
    sys.exit(main())
