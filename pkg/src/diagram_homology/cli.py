"""Command-line interface.

Exit codes: 0 success, 1 internal assertion failure, 2 parse or
validation failure, 3 ``lefschetz`` found a nonzero coordinate.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from typing import List, Optional, TextIO, Tuple

from .chains import CONSTANT, ISOTROPY, CoefficientSystem, build_chain_complex, delta_homology, homology
from .document import Document, DocumentError, document_to_json, dumps, load
from .dspace import euler_class, orbit_point, subdivide, subdivide_map, total_space
from .isotropy import IsotropyRing
from .lefschetz import theorem_check
from .validation import ValidationError

EXIT_OK, EXIT_ASSERT, EXIT_INVALID, EXIT_NONZERO = 0, 1, 2, 3


def _table(header: List[str], rows: List[List]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _emit(out: TextIO, args, data: dict, text: str) -> None:
    out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n" if args.json else text + "\n")


def cmd_validate(doc: Document, args, out) -> int:
    x = doc.space
    data = {
        "valid": True,
        "objects": len(doc.category.objects),
        "morphisms": len(doc.category.morphisms),
        "orbits": list(doc.oc.names),
        "iso_classes": list(doc.oc.ud_labels),
        "simplices": [len(d) for d in x.dims],
        "map": doc.map is not None,
    }
    lines = [
        f"category: {data['objects']} objects, {data['morphisms']} morphisms",
        f"orbits: {', '.join(data['orbits'])} ({len(data['iso_classes'])} iso classes)",
        f"space: simplices per dimension {data['simplices']}",
    ]
    if doc.map is not None:
        lines.append("map: valid")
    lines.append("valid")
    _emit(out, args, data, "\n".join(lines))
    return EXIT_OK


def cmd_euler(doc: Document, args, out) -> int:
    chi = euler_class(doc.space)
    _emit(out, args, {"euler": chi.as_dict()}, str(chi))
    return EXIT_OK


def cmd_homology(doc: Document, args, out) -> int:
    kind = args.coefficients or doc.options.get("coefficients", CONSTANT)
    if kind == CONSTANT:
        system = CoefficientSystem.constant(doc.oc)
    elif kind == ISOTROPY:
        system = CoefficientSystem.isotropy(IsotropyRing(doc.oc))
    else:
        raise ValidationError(f"unknown coefficient system {kind!r}", "options")
    h = homology(build_chain_complex(doc.space, system))
    grading = h.grading or {}
    header = ["degree", "chains", "betti", "torsion", "group"] + [f"rank[{t}]" for t in grading]
    rows = []
    for n in range(len(h.betti)):
        tors = ",".join(map(str, h.torsion[n])) or "-"
        rows.append([n, h.chain_ranks[n], h.betti[n], tors, h.group(n)] + [g[n] for g in grading.values()])
    data = {
        "coefficients": kind,
        "degrees": [
            {
                "degree": n,
                "chain_rank": h.chain_ranks[n],
                "betti": h.betti[n],
                "torsion": list(h.torsion[n]),
                **({"grading": {t: g[n] for t, g in grading.items()}} if grading else {}),
            }
            for n in range(len(h.betti))
        ],
        "euler_characteristic": h.euler_characteristic(),
    }
    _emit(out, args, data, f"coefficients: {kind}\n" + _table(header, rows))
    return EXIT_OK


def cmd_lefschetz(doc: Document, args, out) -> int:
    if doc.map is None:
        raise ValidationError("document has no map section", "map")
    k = args.subdivisions if args.subdivisions is not None else int(doc.options.get("subdivisions", 0))
    check = theorem_check(doc.map, subdivisions=k)
    rep = check.report
    rows = [
        [label, value, ", ".join(rep.invariant[label]) or "-", "yes" if rep.disjoint[label] else "no"]
        for label, value in zip(rep.lambda_.labels, rep.lambda_.entries)
    ]
    data = {
        "lambda": rep.lambda_.as_dict(),
        "ordinary": rep.ordinary,
        "invariant": rep.invariant,
        "disjoint_certified": rep.disjoint,
        "nonzero": rep.nonzero_classes(),
        "subdivisions": k,
        "violations": check.violations,
    }
    lines = [
        f"Lambda: {rep.lambda_}",
        f"ordinary Lefschetz number: {rep.ordinary}",
        _table(["class", "lambda", "invariant simplices", "disjoint image"], rows),
    ]
    if rep.nonzero_classes():
        lines.append("invariant orbit types: " + ", ".join(rep.nonzero_classes()))
    lines.extend(f"violation: {v}" for v in check.violations)
    _emit(out, args, data, "\n".join(lines))
    if check.violations:
        return EXIT_ASSERT
    return EXIT_NONZERO if rep.nonzero_classes() else EXIT_OK


def cmd_subdivide(doc: Document, args, out) -> int:
    x, f = doc.space, doc.map
    for _ in range(args.times):
        sub = subdivide(x)
        f = subdivide_map(f, sub) if f is not None else None
        x = sub
    text = dumps(document_to_json(doc.oc, x, f, doc.options))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        data = {"out": args.out, "times": args.times, "simplices": [len(d) for d in x.dims]}
        _emit(out, args, data, f"wrote {args.out}: simplices per dimension {data['simplices']}")
    else:
        out.write(text)
    return EXIT_OK


def _cell_report(dc, title: str, args, out) -> int:
    betti, torsion = delta_homology(dc)
    counts = dc.cell_counts()
    rows = [[n, counts[n], betti[n], ",".join(map(str, torsion[n])) or "-"] for n in range(len(counts))]
    data = {
        "title": title,
        "cells": counts,
        "betti": betti,
        "torsion": [list(t) for t in torsion],
    }
    _emit(out, args, data, f"{title}\n" + _table(["degree", "cells", "betti", "torsion"], rows))
    return EXIT_OK


def cmd_orbit_point(doc: Document, args, out) -> int:
    return _cell_report(orbit_point(doc.space, args.orbit), f"orbit point at {args.orbit}", args, out)


def cmd_total_space(doc: Document, args, out) -> int:
    return _cell_report(total_space(doc.space, args.object), f"total space at {args.object}", args, out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("document", help="path to a JSON document")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="diagram-homology", description="Equivariant homology of finite diagrams of spaces.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="run all validators").set_defaults(run=cmd_validate)
    sub.add_parser("euler", parents=[common], help="equivariant Euler class").set_defaults(run=cmd_euler)
    h = sub.add_parser("homology", parents=[common], help="homology table")
    h.add_argument("--coefficients", choices=[CONSTANT, ISOTROPY])
    h.set_defaults(run=cmd_homology)
    lf = sub.add_parser("lefschetz", parents=[common], help="equivariant Lefschetz number of the map")
    lf.add_argument("--subdivisions", type=int, help="subdivide before certifying invariant orbits")
    lf.set_defaults(run=cmd_lefschetz)
    s = sub.add_parser("subdivide", parents=[common], help="barycentric subdivision")
    s.add_argument("--times", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(run=cmd_subdivide)
    o = sub.add_parser("orbit-point", parents=[common], help="cells of maps from an orbit")
    o.add_argument("--orbit", required=True)
    o.set_defaults(run=cmd_orbit_point)
    t = sub.add_parser("total-space", parents=[common], help="cells of the diagram at an object")
    t.add_argument("--object", required=True)
    t.set_defaults(run=cmd_total_space)
    return p


def main(argv: Optional[List[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = load(args.document)
        return args.run(doc, args, out)
    except OSError as e:
        err.write(f"error: cannot read {args.document}: {e.strerror}\n")
        return EXIT_INVALID
    except DocumentError as e:
        err.write(f"parse error: {e}\n")
        return EXIT_INVALID
    except ValidationError as e:
        err.write(f"invalid: {e}\n")
        return EXIT_INVALID
    except AssertionError as e:
        err.write(f"internal assertion failed: {e}\n")
        return EXIT_ASSERT


def run(command: str, document: str, *flags: str) -> Tuple[str, int]:
    """Run one command and return its combined output and exit code."""
    out, err = io.StringIO(), io.StringIO()
    code = main([command, document, *flags], out, err)
    return out.getvalue() + err.getvalue(), code


if __name__ == "__main__":
    sys.exit(main())
