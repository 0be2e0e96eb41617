"""Command-line entry point: ``cdgakit <command> ...``.

Exit codes: 0 success, 1 negative verdict (obstruction found, check failed),
2 input error, 64 internal invariant breach.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .cdga import check_d_squared, is_minimal, sullivan_filtration
from .cohomology import InvariantError, cohomology_table, extract_ring
from .dsl import ParseError, parse, parse_element, render_cdga
from .graded import render
from .obstructions import (
    BettiVector,
    c_splitting_betti,
    fatness_weight_certificate,
    gysin_betti,
    hard_lefschetz_check,
    sasaki_parity_test,
)
from .ring import FiniteRing
from .spaces import catalog, k_contact_pipeline, lookup, weinstein_example
from .sullivan import minimal_model, sphere_bundle_model

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 64


class InputError(Exception):
    pass


class Result:
    def __init__(self, results: dict, text: list[str], negative: bool = False):
        self.results = results
        self.text = text
        self.negative = negative


# -- input helpers ----------------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_cdga(source: str, validate: bool = True):
    """A DSL file path, or a catalog name of a CDGA entry."""
    if os.path.exists(source):
        text = _read(source)
        return parse(text, validate=validate), text
    try:
        entry = lookup(source)
    except KeyError:
        raise InputError(f"{source!r} is neither a file nor a catalog entry") from None
    if entry.model is None:
        raise InputError(f"catalog entry {source!r} has no CDGA model")
    model = entry.model()
    return model, render_cdga(model)


def _load_ring(path: str) -> tuple[FiniteRing, str]:
    text = _read(path)
    return FiniteRing.from_json(text), text


def _int_list(text: str, allow_unknown: bool = False) -> list:
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if allow_unknown and piece in ("?", "unknown"):
            out.append(None)
            continue
        try:
            out.append(int(piece))
        except ValueError:
            raise InputError(f"expected integers separated by commas, got {text!r}") from None
    return out


def _betti(text: str, dim: int | None) -> BettiVector:
    values = _int_list(text, allow_unknown=True)
    return BettiVector(tuple(values), len(values) - 1 if dim is None else dim)


# -- commands ---------------------------------------------------------------------


def cmd_cohomology(args) -> Result:
    cdga, _ = _load_cdga(args.file)
    table = cohomology_table(cdga, args.max_degree)
    reps = [[render(r) for r in rs] for rs in table.representatives]
    text = [f"max degree {table.max_degree}", "betti " + " ".join(map(str, table.betti))]
    for p, rs in enumerate(reps):
        if rs:
            text.append(f"H^{p}: " + ", ".join(f"[{r}]" for r in rs))
    return Result({"max_degree": table.max_degree, "betti": list(table.betti), "representatives": reps}, text)


def cmd_check(args) -> Result:
    cdga, _ = _load_cdga(args.file, validate=False)
    d2 = check_d_squared(cdga)
    minimal = is_minimal(cdga)
    filt = sullivan_filtration(cdga)
    res = {
        "d_squared_zero": d2.passed,
        "d_squared_witness": None if d2.passed else {"generator": d2.witness, "dd": render(d2.value)},
        "minimal": minimal.minimal,
        "minimality_witness": None if minimal else {"generator": minimal.witness, "linear_term": minimal.linear_term},
        "filtration": None if filt is None else [list(s) for s in filt.stages],
    }
    text = [
        "d^2 = 0: " + ("yes" if d2 else f"NO (generator {d2.witness}: d(d{d2.witness}) = {render(d2.value)})"),
        "minimal: " + ("yes" if minimal else f"no (d{minimal.witness} has linear term {minimal.linear_term})"),
        "sullivan filtration: " + ("none" if filt is None else " < ".join("{" + ", ".join(s) + "}" for s in filt.stages)),
    ]
    return Result(res, text, negative=not d2.passed)


def cmd_sphere_bundle(args) -> Result:
    base, _ = _load_cdga(args.file)
    euler = parse_element(args.euler, base.algebra)
    model = sphere_bundle_model(base, euler, args.fiber_dim)
    table = cohomology_table(model, args.max_degree)
    dsl = render_cdga(model, name=f"{base.name or 'A'}_bundle")
    return Result(
        {"model": dsl, "betti": list(table.betti), "max_degree": args.max_degree},
        [dsl.rstrip(), "betti " + " ".join(map(str, table.betti))],
    )


def cmd_minimal_model(args) -> Result:
    cdga, _ = _load_cdga(args.file)
    mm = minimal_model(cdga, args.max_degree)
    if not mm.certified:
        raise InvariantError("minimal model certificate failed")
    dsl = render_cdga(mm.model, name=f"{cdga.name or 'A'}_minimal")
    cert = [
        {"degree": e.degree, "model_betti": e.model_betti, "input_betti": e.input_betti,
         "induced_rank": e.induced_rank, "status": "iso" if e.isomorphism else ("mono" if e.injective else "fail")}
        for e in mm.certificate
    ]
    images = {g.name: render(img) for g, img in zip(mm.model.generators, mm.morphism.images)}
    text = [dsl.rstrip(), "morphism:"] + [f"  {k} -> {v}" for k, v in images.items()] + ["certificate:"]
    text += [f"  H^{c['degree']}: {c['model_betti']} -> {c['input_betti']} rank {c['induced_rank']} {c['status']}"
             for c in cert]
    return Result({"model": dsl, "morphism": images, "certificate": cert, "minimal": True}, text)


def cmd_sasaki(args) -> Result:
    verdict = sasaki_parity_test(_betti(args.betti, args.dim))
    text = [f"dimension {verdict.dimension}, checked odd degrees {list(verdict.checked_degrees)}"]
    for p, b in verdict.offending:
        text.append(f"  b_{p} = {b} is odd")
    if verdict.unknown_degrees:
        text.append(f"  unknown: {list(verdict.unknown_degrees)}")
    text.append(verdict.verdict)
    return Result(verdict.to_dict(), text, negative=verdict.obstructed)


def cmd_lefschetz(args) -> Result:
    ring, _ = _load_ring(args.ring)
    v = ring.parse_combination(args.cls)
    report = hard_lefschetz_check(ring, v)
    text = [f"class {ring.render(v)}, n = {report.n}"]
    for s in report.steps:
        text.append(f"  p={s.p}: H^{report.n - s.p} ({s.source_dim}) -> H^{report.n + s.p} ({s.target_dim}) "
                    f"rank {s.rank} {'iso' if s.isomorphism else 'NOT iso'}")
    text.append("lefschetz" if report.is_lefschetz else "not lefschetz")
    res = report.to_dict()
    res["class"] = ring.render(v)
    return Result(res, text, negative=not report.is_lefschetz)


def cmd_gysin(args) -> Result:
    ring, _ = _load_ring(args.ring)
    e = ring.parse_combination(args.euler)
    b = gysin_betti(ring, e, args.max_degree)
    vals = [b[p] for p in range(args.max_degree + 1)]
    return Result({"euler": ring.render(e), "dimension": b.dim, "betti": vals},
                  [f"total space dimension {b.dim}", "betti " + " ".join(map(str, vals))])


def cmd_csplit(args) -> Result:
    fiber = _betti(args.fiber, args.fiber_dim)
    base = _betti(args.base, args.base_dim)
    value = c_splitting_betti(fiber, base, args.k)
    return Result({"k": args.k, "betti": value}, [str(value)])


def cmd_fat(args) -> Result:
    cert = fatness_weight_certificate(_int_list(args.weights))
    text = [f"{'certified' if cert.certified else 'not certified'}, moment lower bound {cert.moment_lower_bound}"]
    return Result(cert.to_dict(), text, negative=not cert.certified)


def cmd_pipeline(args) -> Result:
    weights = _int_list(args.weights)
    source = args.base
    entry = None
    if not os.path.exists(source):
        try:
            entry = lookup(source)
        except KeyError:
            raise InputError(f"{source!r} is neither a file nor a catalog entry") from None
    if entry is not None and entry.betti is not None:
        report = k_contact_pipeline(entry.betti, None, weights, base_name=entry.name)
    else:
        base, _ = _load_cdga(source)
        if args.omega is None:
            raise InputError("--omega is required for a CDGA base")
        if args.max_degree is None:
            raise InputError("--max-degree is required for a CDGA base")
        omega = parse_element(args.omega, base.algebra)
        report = k_contact_pipeline(
            base, omega, weights, args.max_degree,
            base_name=entry.name if entry else (base.name or source),
            base_dimension=args.base_dim if args.base_dim is not None else (entry.dimension if entry else None),
        )
    res = report.to_dict()
    b = report.betti
    text = [
        f"base {report.base_name} ({report.mode}), fiber S^{report.fiber_dimension}, euler {report.euler_class}",
        f"dim M = {report.dimension}",
        "betti " + " ".join("?" if x is None else str(x) for x in b.values),
    ]
    if report.lemma is not None:
        text.append(f"b3 before/after extension: {report.lemma.b3_before}/{report.lemma.b3_after}")
    text.append(f"fatness: {'certified' if report.fatness.certified else 'not certified'}, "
                f"bound {report.fatness.moment_lower_bound}")
    text.append(report.sasakian.verdict)
    return Result(res, text, negative=report.sasakian.obstructed)


def cmd_catalog(args) -> Result:
    entries = []
    text = []
    for name, e in catalog().items():
        item = {"name": name, "kind": e.kind, "dimension": e.dimension, "description": e.description}
        if e.betti is not None:
            item["betti"] = e.betti.to_list()
            item["citation"] = e.citation
        entries.append(item)
        text.append(f"{name:20s} {e.kind:6s} dim {e.dimension:2d}  {e.description}")
    return Result({"entries": entries}, text)


def cmd_ring(args) -> Result:
    cdga, _ = _load_cdga(args.file)
    ring = extract_ring(cdga, args.max_degree)
    return Result(ring.to_dict(), [ring.to_json()])


def cmd_weinstein(args) -> Result:
    rep = weinstein_example(args.k)
    text = [f"b_{rep.degree} = {rep.betti}" + (" (odd: total space is not Kähler)" if rep.kahler_obstructed else "")]
    return Result(rep.to_dict(), text)


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdgakit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit a JSON result document")
        p.set_defaults(func=func)
        return p

    p = add("cohomology", cmd_cohomology, "Betti numbers and representative cocycles")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, required=True)

    p = add("check", cmd_check, "d^2 = 0 and minimality report")
    p.add_argument("file")

    p = add("sphere-bundle", cmd_sphere_bundle, "adjoin an odd sphere with the given Euler class")
    p.add_argument("file")
    p.add_argument("--euler", required=True)
    p.add_argument("--fiber-dim", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)

    p = add("minimal-model", cmd_minimal_model, "minimal Sullivan model up to a degree")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, required=True)

    p = add("sasaki-check", cmd_sasaki, "odd-degree Betti parity test")
    p.add_argument("--betti", required=True, help="b0,b1,...; '?' marks unknown entries")
    p.add_argument("--dim", type=int, required=True)

    p = add("lefschetz", cmd_lefschetz, "hard Lefschetz check on a ring JSON")
    p.add_argument("ring")
    p.add_argument("--class", dest="cls", required=True)

    p = add("gysin", cmd_gysin, "Betti numbers of a circle bundle from the Gysin sequence")
    p.add_argument("ring")
    p.add_argument("--euler", required=True)
    p.add_argument("--max-degree", type=int, required=True)

    p = add("csplit", cmd_csplit, "Betti number of a c-split total space")
    p.add_argument("--fiber", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--fiber-dim", type=int)
    p.add_argument("--base-dim", type=int)

    p = add("fat-weights", cmd_fat, "positivity certificate for circle weights")
    p.add_argument("weights")

    p = add("pipeline", cmd_pipeline, "K-contact sphere bundle pipeline")
    p.add_argument("--base", required=True)
    p.add_argument("--omega")
    p.add_argument("--weights", default="1,1")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--base-dim", type=int)

    add("catalog", cmd_catalog, "list catalog entries")

    p = add("ring", cmd_ring, "export the cohomology ring as JSON")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, required=True)

    p = add("weinstein", cmd_weinstein, "b_k of the fat bundle over S^2 with blown-up CP^6 fiber")
    p.add_argument("--k", type=int, default=3)
    return parser


def _digest(argv: list[str], args) -> str:
    h = hashlib.sha256()
    h.update("\0".join(argv).encode())
    for attr in ("file", "ring"):
        path = getattr(args, attr, None)
        if path and os.path.exists(path):
            h.update(b"\0")
            h.update(_read(path).encode())
    base = getattr(args, "base", None)
    if getattr(args, "command", None) == "pipeline" and base and os.path.exists(base):
        h.update(_read(base).encode())
    return h.hexdigest()


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        result = args.func(args)
    except (InvariantError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, ParseError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        doc = {
            "command": argv,
            "inputs_digest": _digest(argv, args),
            "results": result.results,
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(result.text))
    return EXIT_NEGATIVE if result.negative else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
