"""Command-line surface: constructions, verifications, certificates, golden corpus.

Exit codes: 0 = success / all checks passed, 1 = a verification check
failed, 2 = invalid input or configuration.  All serialized numbers are
exact (integers, or rationals as "num/den" strings); reports carry timing
as integer milliseconds; certificates carry no timing at all and are
byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import cmbuild, hodgecalc, pipeline, polygons
from .cyclochar import CharRep

REPORT_SCHEMA = "hodge-asym/report/v1"
GOLDEN_DIR = Path(__file__).parent / "golden"


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _print(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# small parsers / renderers


def parse_hodge_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as e:
        raise ValueError(f"bad hodge vector {text!r}") from e


def parse_newton(text: str) -> dict[Fraction, int]:
    out: dict[Fraction, int] = {}
    text = text.strip()
    if not text:
        return out
    for item in text.split(","):
        slope_s, _, mult_s = item.partition(":")
        slope = Fraction(slope_s.strip())
        out[slope] = out.get(slope, 0) + int(mult_s)
    return out


def parse_coeff_table(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    data = json.loads(text)
    return hodgecalc.HodgePolynomial.create(
        {(int(i), int(j)): int(c) for i, j, c in data["coeffs"]}
    )


def coeff_list(table) -> list:
    return [[i, j, c] for (i, j), c in sorted(table.as_dict().items())]


def render_table(table) -> str:
    """Aligned h^{i,j} table; rows are i (form degree), columns are j."""
    d = table.as_dict()
    if not d:
        return "h^{i,j}: (zero table)\n"
    imax = max(i for i, _ in d)
    jmax = max(j for _, j in d)
    width = max(len(str(c)) for c in d.values())
    width = max(width, len(str(jmax)), 1)
    lines = ["h^{i,j}: rows i = form degree, columns j"]
    lines.append("  i\\j " + " ".join(f"{j:>{width}}" for j in range(jmax + 1)))
    for i in range(imax + 1):
        cells = " ".join(
            f"{d.get((i, j), 0) or '.':>{width}}" for j in range(jmax + 1)
        )
        lines.append(f"  {i:>3} " + cells)
    return "\n".join(lines) + "\n"


def render_checks(checks: list[dict]) -> str:
    lines = [
        f"  [{'PASS' if c['passed'] else 'FAIL'}] {c['name']}" for c in checks
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def report(command: str, inputs: dict, results: dict, checks: list[dict], t0: float) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "command": command,
        "inputs": inputs,
        "results": results,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
        "timing_ms": int((time.monotonic() - t0) * 1000),
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_find_l(args) -> int:
    t0 = time.monotonic()
    ctx = cmbuild.find_l(args.p, args.bound)
    if args.format == "json":
        _print(dumps(report(
            "find-l", {"p": args.p, "bound": args.bound},
            {"l": ctx.l, "ord": ctx.ord}, [], t0,
        )))
    else:
        _print(f"l={ctx.l} ord={ctx.ord}")
    return 0


def _cm_payload(z: cmbuild.CMData, search) -> dict:
    diamond = cmbuild.equivariant_diamond(z)
    slice3 = cmbuild.degree_slice(diamond, 3)
    slice3_pre = tuple(reversed(slice3)) if z.oriented else slice3
    return {
        "p": z.ctx.p,
        "l": z.ctx.l,
        "ord": z.ctx.ord,
        "V": z.V.to_text(),
        "U_layers": [u.to_text() for u in z.U_layers()],
        "phi_per_layer": [sorted(phi) for phi in z.phi_per_layer()],
        "W_omega": z.W_omega.to_text(),
        "W_o": z.W_o.to_text(),
        "oriented": z.oriented,
        "degree3_slice": list(slice3),
        "degree3_slice_pre_orientation": list(slice3_pre),
        "search": {
            "layer_count": search.layer_count,
            "candidate_index": search.candidate_index,
            "r0": search.r0,
            "r1": search.r1,
        },
    }


def cmd_build_cm(args) -> int:
    z, search = cmbuild.build_cm(
        args.p, l=args.l, selector=args.selector, max_layers=args.max_layers
    )
    payload = _cm_payload(z, search)
    if args.format == "json":
        _print(dumps(payload))
    else:
        for key in ("p", "l", "ord", "V", "W_omega", "W_o", "oriented"):
            _print(f"{key:>10} = {payload[key]}")
        _print(f"{'U_layers':>10} = {', '.join(payload['U_layers'])}")
        _print(f"{'phi':>10} = {payload['phi_per_layer']}")
        _print(f"{'slice3':>10} = {tuple(payload['degree3_slice'])}")
    return 0


def cmd_search_typical(args) -> int:
    if args.V is not None:
        v = CharRep.from_text(args.V)
        ctx = cmbuild.PrimeContext.create(args.p, v.l)
    else:
        ctx = (
            cmbuild.find_l(args.p)
            if args.l is None
            else cmbuild.PrimeContext.create(args.p, args.l)
        )
        v = cmbuild.build_V(ctx, args.selector)
    rows = cmbuild.search_table(v, ctx, args.layer_count)
    table = [
        {"U": u.to_text(), "r0": r0, "r1": r1, "hit": r0 != r1}
        for u, r0, r1 in rows
    ]
    if args.format == "json":
        _print(dumps({
            "p": ctx.p, "l": ctx.l, "V": v.to_text(),
            "layer_count": args.layer_count, "candidates": table,
        }))
    else:
        _print(f"V = {v.to_text()}   ({len(table)} candidates, {args.layer_count} layer(s))")
        for row in table:
            mark = "*" if row["hit"] else " "
            _print(f"  {mark} {row['U']:<24} r0={row['r0']} r1={row['r1']}")
    return 0


def cmd_verify_polygon(args) -> int:
    t0 = time.monotonic()
    hodge = parse_hodge_vector(args.hodge)
    newton = parse_newton(args.newton)
    pd = polygons.PolygonData.create(args.n, hodge, newton)
    checks = [
        {"name": "degree-relation", "passed": polygons.check_degree_relation(pd)},
        {
            "name": "weak-admissibility-endpoints",
            "passed": polygons.check_weak_admissibility_endpoints(pd),
        },
        {"name": "slope-symmetry", "passed": polygons.check_slope_symmetry(pd)},
        {"name": "newton-above-hodge", "passed": polygons.newton_above_hodge(pd)},
    ]
    if args.n % 2 == 1:
        checks.append({"name": "odd-degree-parity", "passed": polygons.check_parity(pd)})
    rep = report(
        "verify-polygon",
        {"n": args.n, "hodge": list(hodge), "newton": args.newton},
        {
            "t_H": polygons.t_H(pd),
            "t_N": str(polygons.t_N(pd.newton_dict())),
            "rank": pd.rank,
        },
        checks,
        t0,
    )
    if args.format == "json":
        _print(dumps(rep))
    else:
        _print(f"n={args.n} rank={pd.rank} t_H={rep['results']['t_H']} t_N={rep['results']['t_N']}")
        _print(render_checks(checks))
    return 0 if rep["passed"] else 1


def cmd_hodge(args) -> int:
    if args.hodge_op == "hypersurface":
        table = hodgecalc.hypersurface(args.d, args.n)
    elif args.hodge_op == "blowup-tower":
        dims = (
            tuple(int(x) for x in args.ambient_dims.split(","))
            if args.ambient_dims
            else None
        )
        table = hodgecalc.blow_up_tower(args.d, args.n, args.s, dims)
    elif args.hodge_op == "stack":
        table = hodgecalc.stack_series(args.kind, args.bound)
    else:  # product
        table = hodgecalc.product(
            parse_coeff_table(args.left), parse_coeff_table(args.right)
        )
    if args.format == "json":
        _print(dumps({"coeffs": coeff_list(table)}))
    else:
        _print(render_table(table))
    return 0


def cmd_construct(args) -> int:
    embellishments = [e for e in (args.embellish or "").split(",") if e]
    for e in embellishments:
        if e not in pipeline.EMBELLISHMENTS:
            raise ValueError(f"unknown embellishment {e!r}")
    try:
        cert = pipeline.construct(
            args.p, args.i, args.j,
            embellishments=embellishments,
            l=args.l, selector=args.selector, max_layers=args.max_layers,
        )
    except pipeline.CertificateFailure as fail:
        _print(dumps({"schema": "hodge-asym/failure/v1", "certificate": fail.report}))
        return 1
    payload = pipeline.serialize_certificate(cert)
    text = dumps(payload)
    if args.out:
        Path(args.out).write_text(text)
    if args.format == "json":
        _print(text)
    else:
        aux = payload["aux_case"]
        aux_text = aux["kind"]
        if aux["kind"] == "tower":
            aux_text = f"tower(n={aux['n']}, s={aux['s']}, ambient_dims={aux['ambient_dims']})"
        _print(f"target h^{{{args.i},{args.j}}} != h^{{{args.j},{args.i}}}  (p={args.p}, l={cert.cm.ctx.l})")
        _print(f"degree-3 slice: {tuple(cert.slice3)}   oriented={cert.cm.oriented}")
        _print(f"aux case: {aux_text}")
        _print(f"delta result: {cert.delta_result.display()}")
        if "statement" in cert.d_policy:
            _print(f"d policy: {cert.d_policy['statement']}")
        _print(render_checks(payload["checks"]))
    return 0


def regenerate(stored: dict) -> dict:
    """Re-run the pipeline from a certificate's recorded inputs."""
    inp = stored["inputs"]
    cert = pipeline.construct(
        inp["p"], inp["i"], inp["j"],
        embellishments=inp.get("embellish", []),
        l=inp.get("l"), selector=inp.get("selector", "default"),
        max_layers=inp.get("max_layers", 3), bound=inp.get("bound", 1000),
    )
    return pipeline.serialize_certificate(cert)


def cmd_certify(args) -> int:
    t0 = time.monotonic()
    stored_text = Path(args.certificate).read_text()
    stored = json.loads(stored_text)
    fresh = regenerate(stored)
    match = dumps(fresh) == stored_text or fresh == stored
    checks = [dict(c) for c in fresh["checks"]]
    checks.append({"name": "stored-matches-recomputation", "passed": match})
    rep = report("certify", {"certificate": args.certificate}, {}, checks, t0)
    if args.format == "json":
        _print(dumps(rep))
    else:
        _print(render_checks(checks))
    return 0 if rep["passed"] else 1


def cmd_golden(args) -> int:
    corpus = Path(args.corpus) if args.corpus else GOLDEN_DIR
    if not corpus.is_dir():
        _print(f"error: corpus directory {corpus} not found")
        return 2
    files = sorted(corpus.glob("*.json"))
    if not files:
        _print(f"warning: corpus {corpus} is empty")
        return 0
    failures = []
    for path in files:
        stored_text = path.read_text()
        try:
            fresh_text = dumps(regenerate(json.loads(stored_text)))
        except Exception as e:  # regeneration itself failed
            failures.append((path.name, f"regeneration error: {e}"))
            continue
        if fresh_text != stored_text:
            old, new = stored_text.splitlines(), fresh_text.splitlines()
            line = next(
                (t for t, (a, b) in enumerate(zip(old, new)) if a != b),
                min(len(old), len(new)),
            )
            failures.append((path.name, f"first difference at line {line + 1}"))
    for name, why in failures:
        _print(f"MISMATCH {name}: {why}")
    _print(f"golden: {len(files) - len(failures)}/{len(files)} certificates match")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodge-asym",
        description="Exact bookkeeping for products violating Hodge symmetry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("find-l", help="smallest companion prime for p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--bound", type=int, default=1000)
    add_format(p)
    p.set_defaults(func=cmd_find_l)

    p = sub.add_parser("build-cm", help="character data of the oriented product")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--selector", choices=cmbuild.SELECTORS, default="default")
    p.add_argument("--max-layers", type=int, default=3)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(func=cmd_build_cm)

    p = sub.add_parser("search-typical", help="typical candidates and their rank pairs")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--selector", choices=cmbuild.SELECTORS, default="default")
    p.add_argument("--V", type=str, default=None,
                   help='override the coset module, e.g. "l=5; 1:1,4:1"')
    p.add_argument("--layer-count", type=int, default=1)
    add_format(p)
    p.set_defaults(func=cmd_search_typical)

    p = sub.add_parser("verify-polygon", help="polygon-level checks for one degree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--hodge", type=str, required=True, help="h^{n,0},...,h^{0,n}")
    p.add_argument("--newton", type=str, required=True, help="slope:mult,...")
    add_format(p)
    p.set_defaults(func=cmd_verify_polygon)

    p = sub.add_parser("hodge", help="coefficient-table calculators")
    hodge_sub = p.add_subparsers(dest="hodge_op", required=True)
    q = hodge_sub.add_parser("hypersurface")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    add_format(q)
    q.set_defaults(func=cmd_hodge)
    q = hodge_sub.add_parser("blowup-tower")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--ambient-dims", type=str, default=None)
    add_format(q)
    q.set_defaults(func=cmd_hodge)
    q = hodge_sub.add_parser("stack")
    q.add_argument("--kind", choices=("mu_p", "Z_mod_p"), required=True)
    q.add_argument("--bound", type=int, default=12)
    add_format(q)
    q.set_defaults(func=cmd_hodge)
    q = hodge_sub.add_parser("product")
    q.add_argument("--left", type=str, required=True, help='{"coeffs": [[i,j,c],...]} or @file')
    q.add_argument("--right", type=str, required=True)
    add_format(q)
    q.set_defaults(func=cmd_hodge)

    p = sub.add_parser("construct", help="emit a construction certificate")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--selector", choices=cmbuild.SELECTORS, default="default")
    p.add_argument("--max-layers", type=int, default=3)
    p.add_argument("--embellish", type=str, default="",
                   help="comma-separated: special-fiber,polarization")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="re-run all checks of a stored certificate")
    p.add_argument("certificate", type=str)
    add_format(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("golden", help="regenerate and byte-compare the corpus")
    p.add_argument("--corpus", type=str, default=None)
    add_format(p)
    p.set_defaults(func=cmd_golden)

    return parser


def main(argv=None) -> int:
    if os.environ.get("HODGE_ASYM_SEED") is not None:
        sys.stderr.write(
            "error: HODGE_ASYM_SEED is set but this tool uses no randomness; "
            "unset it to proceed\n"
        )
        return 2
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except pipeline.CertificateFailure as fail:
        _print(dumps({"schema": "hodge-asym/failure/v1", "certificate": fail.report}))
        return 1
    except (ValueError, OSError, json.JSONDecodeError,
            cmbuild.NotFoundWithinBound, cmbuild.SearchExhausted,
            pipeline.InvalidTarget, pipeline.ScopeViolation,
            polygons.EvenDegree, polygons.RelationViolated,
            hodgecalc.NonSymmetricFactor, hodgecalc.NonNegativeDelta) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
