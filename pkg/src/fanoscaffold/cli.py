"""Command-line interface producing deterministic JSON reports.

Every subcommand reads JSON files (or a bundled fixture, with --fixtures),
runs one library operation, and prints a single JSON line with sorted keys,
so identical inputs give byte-identical output.  Domain failures exit with
code 1 and an {"error": {"kind", "detail"}} object; malformed input or
usage exits with code 2.
"""

import argparse
import json
import sys
from fractions import Fraction
from functools import cmp_to_key

from . import jsonio
from .amenable import amenable_binomials, tower_from_amenable, validate_amenable
from .errors import DomainError
from .fixtures import fixture, fixture_names
from .forward import przyjalkowski
from .inversion import (
    anticanonical_scaffolding,
    ci_data,
    laurent_inversion,
    verify_embedding,
)
from .laurent import LaurentPolynomial, algebraic_mutation, classical_period
from .mutations import mutate_polytope, mutate_scaffolding, strut_mutability
from .nefpart import (
    cayley,
    check_fano_nef_partition,
    check_nef_partition,
    fano_nef_partition_from_inversion,
    p_s_polytope,
)
from .scaffolding import dual_cone_check, validate_scaffolding
from .toric import secondary_fan

_FILE_FLAGS = {
    "laurent": "--f",
    "git": "--git",
    "partition": "--partition",
    "scaffolding": "--scaffolding",
    "polytope": "--polytope",
    "mutation": "--mutation",
    "polytopes": "--polytopes",
}


def _decode_polytope_list(obj):
    if not isinstance(obj, list):
        raise ValueError("expected a JSON list of polytopes")
    return [jsonio.decode_polytope(entry) for entry in obj]


_DECODERS = {
    "laurent": jsonio.decode_laurent,
    "git": jsonio.decode_git,
    "partition": jsonio.decode_partition,
    "scaffolding": jsonio.decode_scaffolding,
    "polytope": jsonio.decode_polytope,
    "mutation": jsonio.decode_mutation,
    "polytopes": _decode_polytope_list,
}


def _parse_omega(text):
    try:
        return tuple(Fraction(piece.strip()) for piece in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ValueError("bad stability vector %r" % (text,))


def _parse_int_rows(text, what):
    try:
        rows = json.loads(text)
    except ValueError:
        raise ValueError("bad %s: not valid JSON" % (what,))
    if not isinstance(rows, list):
        raise ValueError("bad %s: expected a list of integer lists" % (what,))
    out = []
    for row in rows:
        if not isinstance(row, list) or any(
            isinstance(x, bool) or not isinstance(x, int) for x in row
        ):
            raise ValueError("bad %s: expected a list of integer lists" % (what,))
        out.append(tuple(row))
    return tuple(out)


def _indicator_polynomial(polytope):
    """The sum of one monomial per lattice point of the polytope."""
    points = polytope.integral_points()
    return LaurentPolynomial(polytope.dim, {p: 1 for p in points})


def _tikz_cycle(polytope):
    """Vertices of a polygon as a plot-ready boundary cycle."""
    if polytope.dim != 2 or not polytope.is_full_dimensional():
        raise DomainError(
            "dimension_mismatch", "tikz output needs a full-dimensional polygon"
        )
    vertices = list(polytope.vertices)
    n = len(vertices)
    cx = sum(Fraction(v[0]) for v in vertices) / n
    cy = sum(Fraction(v[1]) for v in vertices) / n

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def compare(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return -1 if hp < hq else 1
        cross = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        if cross == 0:
            return 0
        return -1 if cross > 0 else 1

    vertices.sort(key=cmp_to_key(compare))

    def fmt(x):
        x = Fraction(x)
        if x.denominator == 1:
            return "%d" % x.numerator
        return "%d/%d" % (x.numerator, x.denominator)

    corners = " -- ".join("(%s,%s)" % (fmt(v[0]), fmt(v[1])) for v in vertices)
    return corners + " -- cycle"


# ---------------------------------------------------------------------------
# subcommand handlers: (parsed args, input dict) -> JSON object or tikz text
# ---------------------------------------------------------------------------

def _cmd_period(args, data):
    coeffs = classical_period(data["laurent"], args.max_degree)
    return {"coeffs": list(coeffs)}


def _cmd_newton(args, data):
    polytope = data["laurent"].newton_polytope()
    if args.emit_tikz:
        return _tikz_cycle(polytope)
    return jsonio.encode_polytope(polytope)


def _cmd_forward(args, data):
    f = przyjalkowski(data["git"], data["partition"])
    if args.drop_constant:
        zero = (0,) * f.nvars
        f = LaurentPolynomial(f.nvars, {e: c for e, c in f.terms.items() if e != zero})
    return jsonio.encode_laurent(f)


def _cmd_invert(args, data):
    omega = _parse_omega(args.omega) if args.omega else None
    inv = laurent_inversion(data["scaffolding"], omega)
    return {
        "matrix": [list(row) for row in inv.matrix],
        "git": jsonio.encode_git(inv.git),
        "theta": [list(row) for row in inv.theta],
        "recovered": (
            jsonio.encode_partition(inv.recovered) if inv.recovered else None
        ),
    }


def _cmd_scaffold_validate(args, data):
    ok, report = validate_scaffolding(data["scaffolding"])
    basis = report["unit_basis"]
    return {
        "ok": ok,
        "failures": list(report["failures"]),
        "vertexless_struts": list(report["vertexless_struts"]),
        "unit_basis": None if basis is None else list(basis),
    }


def _cmd_dual_check(args, data):
    return {"ok": dual_cone_check(data["scaffolding"])}


def _cmd_embed_check(args, data):
    ok, report = verify_embedding(data["scaffolding"])
    return {
        "ok": ok,
        "ambient_rays": report["ambient_rays"],
        "restricted_fan": report["restricted_fan"],
        "face_cones": report["face_cones"],
    }


def _cmd_ci_data(args, data):
    info = ci_data(data["scaffolding"])
    return {
        "functionals": [list(row) for row in info["functionals"]],
        "degrees": [list(row) for row in info["degrees"]],
        "degrees_nonnegative": info["degrees_nonnegative"],
        "lattice_ok": info["lattice_ok"],
    }


def _cmd_secondary_fan(args, data):
    chambers = secondary_fan(data["git"])
    return {"chambers": [jsonio.encode_cone(c) for c in chambers]}


def _cmd_mutate_polytope(args, data):
    w, factor = data["mutation"]
    out = mutate_polytope(data["polytope"], w, factor)
    if args.emit_tikz:
        return _tikz_cycle(out)
    return jsonio.encode_polytope(out)


def _cmd_mutate_laurent(args, data):
    w, factor = data["mutation"]
    out = algebraic_mutation(data["laurent"], w, _indicator_polynomial(factor))
    return jsonio.encode_laurent(out)


def _cmd_mutate_scaffolding(args, data):
    w, factor = data["mutation"]
    out = mutate_scaffolding(data["scaffolding"], w, factor)
    return jsonio.encode_scaffolding(out)


def _cmd_nef_partition(args, data):
    parts = _parse_int_rows(args.parts, "parts")
    report = check_nef_partition(data["polytope"], parts)
    return {
        "valid": report["valid"],
        "pl_ok": report["pl_ok"],
        "cartier": report["cartier"],
        "minkowski_ok": report["minkowski_ok"],
        "nablas": [jsonio.encode_polytope(p) for p in report["nablas"]],
        "points": [list(p) for p in report["points"]],
    }


def _cmd_fano_nef_partition(args, data):
    inv = laurent_inversion(data["scaffolding"])
    partition = fano_nef_partition_from_inversion(inv)
    report = check_fano_nef_partition(partition)
    return {
        "e_parts": [list(g) for g in partition.e_parts],
        "f_part": list(partition.f_part),
        "ample_base": report["ample_base"],
        "nef_parts": report["nef_parts"],
        "gorenstein_cone": report["gorenstein_cone"],
        "valid": report["valid"],
    }


def _cmd_cayley(args, data):
    polytope, cone = cayley(data["polytopes"])
    return {"polytope": jsonio.encode_polytope(polytope), "cone": jsonio.encode_cone(cone)}


def _cmd_p_s(args, data):
    out = p_s_polytope(data["scaffolding"])
    if args.emit_tikz:
        return _tikz_cycle(out)
    return jsonio.encode_polytope(out)


def _cmd_amenable_validate(args, data):
    ok, report = validate_amenable(data["git"], data["partition"], data["vectors"])
    return {
        "ok": ok,
        "failures": list(report["failures"]),
        "pairings": [list(row) for row in report["pairings"]],
    }


def _cmd_amenable_tower(args, data):
    tower = tower_from_amenable(data["git"], data["partition"], data["vectors"])
    return jsonio.encode_fan(tower)


def _cmd_amenable_binomials(args, data):
    pairs = amenable_binomials(data["git"], data["partition"], data["vectors"])
    return {"binomials": [{"plus": list(p), "minus": list(m)} for p, m in pairs]}


def _cmd_anticanonical(args, data):
    return jsonio.encode_scaffolding(anticanonical_scaffolding(data["polytope"]))


def _cmd_mutability(args, data):
    ok, report = strut_mutability(data["scaffolding"], data["weights"])
    return {"ok": ok, "struts": [list(pair) for pair in report]}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fanoscaffold",
        description="Exact tools for scaffolded Fano polytopes and their mirrors.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, handler, help_text, files=(), inline=(), fixture_keys=None,
            tikz=False, extra=None):
        sub = subs.add_parser(name, help=help_text)
        for key in files:
            sub.add_argument(_FILE_FLAGS[key], dest=key + "_path", metavar="FILE",
                             help="path to %s JSON" % key)
        for key in inline:
            sub.add_argument("--" + key, metavar="JSON",
                             help="inline JSON list of integer vectors")
        if fixture_keys is not None:
            sub.add_argument("--fixtures", action="store_true",
                             help="run over the bundled example corpus instead")
        if tikz:
            sub.add_argument("--emit-tikz", action="store_true", dest="emit_tikz",
                             help="print a 2D polygon as a boundary cycle")
        if extra is not None:
            extra(sub)
        sub.set_defaults(handler=handler, files=tuple(files), inline=tuple(inline),
                         fixture_keys=fixture_keys)

    add("period", _cmd_period, "classical period coefficients",
        files=("laurent",), fixture_keys=("laurent",),
        extra=lambda s: s.add_argument("--max-degree", type=int, required=True,
                                       metavar="D", help="last coefficient degree"))
    add("newton", _cmd_newton, "Newton polytope of a Laurent polynomial",
        files=("laurent",), fixture_keys=("laurent",), tikz=True)
    add("forward", _cmd_forward, "Laurent model of quotient data with a partition",
        files=("git", "partition"), fixture_keys=("git", "partition"),
        extra=lambda s: s.add_argument("--drop-constant", action="store_true",
                                       dest="drop_constant",
                                       help="remove the constant term"))
    add("invert", _cmd_invert, "weight matrix and quotient data of a scaffolding",
        files=("scaffolding",), fixture_keys=("scaffolding",),
        extra=lambda s: s.add_argument("--omega", metavar="VEC",
                                       help="override stability, e.g. 3,2"))
    add("scaffold-validate", _cmd_scaffold_validate, "check the covering conditions",
        files=("scaffolding",), fixture_keys=("scaffolding",))
    add("scaffold-dual-check", _cmd_dual_check, "dual-cone form of the covering check",
        files=("scaffolding",), fixture_keys=("scaffolding",))
    add("embed-check", _cmd_embed_check, "verify the induced toric embedding",
        files=("scaffolding",), fixture_keys=("scaffolding",))
    add("ci-data", _cmd_ci_data, "complete-intersection degrees of the embedding",
        files=("scaffolding",), fixture_keys=("scaffolding",))
    add("secondary-fan", _cmd_secondary_fan, "maximal chambers of the character cone",
        files=("git",), fixture_keys=("git",))
    add("mutate-polytope", _cmd_mutate_polytope, "mutate a polytope by weight and factor",
        files=("polytope", "mutation"), tikz=True)
    add("mutate-laurent", _cmd_mutate_laurent, "mutate a Laurent polynomial",
        files=("laurent", "mutation"))
    add("mutate-scaffolding", _cmd_mutate_scaffolding, "transport a scaffolding",
        files=("scaffolding", "mutation"))
    add("nef-partition", _cmd_nef_partition, "check a nef partition of a polytope",
        files=("polytope",),
        extra=lambda s: s.add_argument("--parts", required=True, metavar="JSON",
                                       help="ray index groups, e.g. [[0,1],[2,3]]"))
    add("fano-nef-partition", _cmd_fano_nef_partition,
        "nef partition with ample residual induced by a scaffolding",
        files=("scaffolding",), fixture_keys=("scaffolding",))
    add("cayley", _cmd_cayley, "Cayley polytope and cone of a list of polytopes",
        files=("polytopes",))
    add("p-s", _cmd_p_s, "polytope spanning the ambient fan of a scaffolding",
        files=("scaffolding",), fixture_keys=("scaffolding",), tikz=True)
    add("amenable-validate", _cmd_amenable_validate,
        "check the sign conditions of a dual-vector collection",
        files=("git", "partition"), inline=("vectors",),
        fixture_keys=("git", "partition", "vectors"))
    add("amenable-tower", _cmd_amenable_tower,
        "bundle tower fan carried by a dual-vector collection",
        files=("git", "partition"), inline=("vectors",),
        fixture_keys=("git", "partition", "vectors"))
    add("amenable-binomials", _cmd_amenable_binomials,
        "binomial equations cut out by a dual-vector collection",
        files=("git", "partition"), inline=("vectors",),
        fixture_keys=("git", "partition", "vectors"))
    add("anticanonical", _cmd_anticanonical,
        "boundary scaffolding of a reflexive polytope",
        files=("polytope",), fixture_keys=("polytope",))
    add("mutability", _cmd_mutability, "check strut transport along weight vectors",
        files=("scaffolding",), inline=("weights",),
        fixture_keys=("scaffolding", "weights"))
    return parser


def _load_inputs(args):
    data = {}
    for key in args.files:
        path = getattr(args, key + "_path")
        if path is None:
            raise ValueError("missing required %s" % (_FILE_FLAGS[key],))
        data[key] = _DECODERS[key](jsonio.read_json(path))
    for key in args.inline:
        text = getattr(args, key)
        if text is None:
            raise ValueError("missing required --%s" % (key,))
        data[key] = _parse_int_rows(text, key)
    return data


def _dispatch(args):
    if getattr(args, "fixtures", False):
        if getattr(args, "emit_tikz", False):
            raise ValueError("--emit-tikz cannot be combined with --fixtures")
        results = {}
        for name in fixture_names():
            fx = fixture(name)
            if not all(key in fx for key in args.fixture_keys):
                continue
            try:
                results[name] = args.handler(args, fx)
            except DomainError as exc:
                results[name] = {"error": {"kind": exc.kind, "detail": exc.detail}}
        return {"fixtures": results}
    return args.handler(args, _load_inputs(args))


def run(argv):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        out = _dispatch(args)
    except DomainError as exc:
        print(jsonio.dumps({"error": {"kind": exc.kind, "detail": exc.detail}}))
        return 1
    except (ValueError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if isinstance(out, str):
        print(out)
    else:
        print(jsonio.dumps(out))
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
