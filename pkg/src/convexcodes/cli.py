"""Command-line front end.

Subcommands: analyze, realize, cover-code, verify-paper.  Exit codes are a
stable contract: 0 success, 1 domain verdict (realization not applicable or
a failing verification row), 2 parse error, 3 capability error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .codes import (
    Code,
    CodeParseError,
    classify_completeness,
    code_from_text,
    simplicial_complex,
    simplicial_violators,
    word_key,
    word_label,
)
from .geometry import (
    BallConstraintError,
    CoverParseError,
    MixedRelationsError,
    NonFullDimensionalRegionError,
    TransformError,
    check_nondegeneracy,
    code_of_cover,
    cover_from_text,
    cover_to_text,
    sample_code,
    verify_closure_interior_invariance,
)
from .realization import (
    NotApplicable,
    MonotoneExtendError,
    RealizationCertificate,
    max_int_realization,
    potential_cover,
    realize,
    replay_certificate,
)
from .topology import local_obstructions, nonlocal_obstructions
from .verification import all_rows, run_suite

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_PARSE = 2
EXIT_CAPABILITY = 3


def _load_code(path: str) -> Code:
    text = Path(path).read_text()
    return code_from_text(text)


def _profile_json(profile) -> dict:
    return {"minus_one": profile.minus_one, "reduced": list(profile.reduced)}


def _profile_text(profile) -> str:
    if profile.minus_one:
        return "(-1:1)"
    return "(" + ",".join(str(b) for b in profile.reduced) + ")"


def analysis_report(code: Code, nonlocal_budget: int) -> dict:
    """All analysis facts in one dictionary; text output renders it 1:1."""
    lab = lambda w: word_label(w, code.n)
    complex_ = simplicial_complex(code)
    violators = sorted(simplicial_violators(code), key=word_key)
    scan = local_obstructions(code)
    nonlocal_ = nonlocal_obstructions(code, max_pair_budget=nonlocal_budget)
    completeness = classify_completeness(code)
    ra = realize(code)
    if isinstance(ra, NotApplicable):
        realization = {
            "applicable": False,
            "missing": lab(ra.missing),
            "witness": ra.describe(code.n),
        }
    else:
        realization = {
            "applicable": True,
            "method": ra.method,
            "dimension": ra.dimension,
            "ambient": ra.ambient,
            "valid": ra.valid,
        }
    return {
        "n": code.n,
        "words": [lab(w) for w in code.sorted_words()],
        "delta_facets": [lab(f) for f in sorted(complex_.facets, key=word_key)],
        "violators": [lab(v) for v in violators],
        "local_obstructions": [
            {
                "sigma": lab(o.sigma),
                "degree": o.verdict.degree,
                "betti": o.verdict.betti,
                "link_facets": [lab(f) for f in sorted(o.link_facets, key=word_key)],
            }
            for o in scan.found
        ],
        "undecided_violators": [lab(s) for s in scan.undecided],
        "nonlocal_obstructions": [
            {
                "sigma1": lab(o.sigma1),
                "sigma2": lab(o.sigma2),
                "profile1": _profile_json(o.profile1),
                "profile2": _profile_json(o.profile2),
            }
            for o in nonlocal_
        ],
        "intersection_complete": completeness.intersection_complete,
        "max_intersection_complete": completeness.max_intersection_complete,
        "realization": realization,
    }


def render_analysis(report: dict) -> str:
    lines = [
        f"n: {report['n']}",
        "words: " + " ".join(report["words"]),
        "delta-facets: " + " ".join(report["delta_facets"]),
        "violators: " + (" ".join(report["violators"]) or "-"),
    ]
    for o in report["local_obstructions"]:
        lines.append(
            f"local-obstruction: sigma={o['sigma']} degree={o['degree']} "
            f"betti={o['betti']} link-facets=" + ",".join(o["link_facets"])
        )
    lines.append(
        "undecided-violators: " + (" ".join(report["undecided_violators"]) or "-")
    )
    for o in report["nonlocal_obstructions"]:
        p1 = f"(-1:{o['profile1']['minus_one']})" if o["profile1"]["minus_one"] else "(" + ",".join(map(str, o["profile1"]["reduced"])) + ")"
        p2 = f"(-1:{o['profile2']['minus_one']})" if o["profile2"]["minus_one"] else "(" + ",".join(map(str, o["profile2"]["reduced"])) + ")"
        lines.append(
            f"nonlocal-obstruction: sigma1={o['sigma1']} sigma2={o['sigma2']} "
            f"profile1={p1} profile2={p2}"
        )
    lines.append(f"intersection-complete: {str(report['intersection_complete']).lower()}")
    lines.append(
        f"max-intersection-complete: {str(report['max_intersection_complete']).lower()}"
    )
    r = report["realization"]
    if r["applicable"]:
        lines.append(
            f"realization: method={r['method']} dimension={r['dimension']} "
            f"ambient={r['ambient']} valid={str(r['valid']).lower()}"
        )
    else:
        lines.append(f"realization: not-applicable missing={r['missing']} ({r['witness']})")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    try:
        code = _load_code(args.code_file)
    except CodeParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report = analysis_report(code, args.nonlocal_budget)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(render_analysis(report), end="")
    return EXIT_OK


def _certificate_text(cert: RealizationCertificate) -> str:
    n = cert.target.n
    lines = [
        f"method: {cert.method}",
        f"dimension: {cert.dimension}",
        f"ambient: {cert.ambient}",
        "target: " + " ".join(word_label(w, n) for w in cert.target.sorted_words()),
        "achieved: " + " ".join(word_label(w, n) for w in cert.achieved.sorted_words()),
        f"valid: {str(cert.valid).lower()}",
    ]
    for c in cert.checks:
        lines.append(f"check {c.name}: {'pass' if c.passed else 'FAIL'} {c.detail}".rstrip())
    return "\n".join(lines) + "\n"


def _abstract_cover_text(cover) -> str:
    names = {p: f"p{i}" for i, p in enumerate(cover.points)}
    lines = [f"n={cover.n}", "points: " + " ".join(names[p] for p in cover.points)]
    if cover.ambient is None:
        lines.append("ambient: all")
    else:
        lines.append(
            "ambient: " + " ".join(names[p] for p in cover.points if p in cover.ambient)
        )
    for i in range(1, cover.n + 1):
        members = cover.membership.get(i, frozenset())
        lines.append(
            f"{i}: " + " ".join(names[p] for p in cover.points if p in members)
        )
    return "\n".join(lines) + "\n"


def _potential_text(realz, n: int) -> str:
    lines = [f"dimension: {realz.dimension}"]
    for w, pos in sorted(realz.basis_index.items(), key=lambda kv: word_key(kv[0])):
        lines.append(f"vertex e{pos}: word {word_label(w, n)}")
    for i in range(1, n + 1):
        verts = realz.vertex_sets.get(i, ())
        lines.append(f"set {i}: " + " ".join(f"e{p}" for p in verts))
    for w in sorted(realz.witnesses, key=word_key):
        coords = " ".join(
            f"{c.numerator}/{c.denominator}" for c in realz.witnesses[w]
        )
        lines.append(f"witness {word_label(w, n)}: {coords}")
    return "\n".join(lines) + "\n"


def cmd_realize(args) -> int:
    try:
        code = _load_code(args.code_file)
    except CodeParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    geometric_cover = None
    potential_realz = None
    if args.method == "potential":
        potential_realz, cert = potential_cover(code)
    else:
        try:
            result = realize(code, ambient=args.ambient)
        except MonotoneExtendError as exc:
            print(f"not realizable under the requested ambient: {exc}", file=sys.stderr)
            return EXIT_VERDICT
        if isinstance(result, NotApplicable):
            print(f"not applicable: {result.describe(code.n)}")
            return EXIT_VERDICT
        cert = result
        realz, _ = max_int_realization(code, cert.ambient)
        geometric_cover = realz.geometric

    ok = cert.valid and (cert.cover is None or replay_certificate(cert))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "certificate.txt").write_text(_certificate_text(cert))
        if cert.cover is not None:
            (out / "abstract_cover.txt").write_text(_abstract_cover_text(cert.cover))
        if geometric_cover is not None:
            (out / "cover.txt").write_text(cover_to_text(geometric_cover))
        if potential_realz is not None:
            (out / "potential_cover.txt").write_text(
                _potential_text(potential_realz, code.n)
            )
    print(_certificate_text(cert), end="")
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_cover_code(args) -> int:
    try:
        cover = cover_from_text(Path(args.cover_file).read_text())
    except CoverParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    if args.sample is not None:
        try:
            report = sample_code(cover, args.sample, args.seed)
        except ValueError as exc:
            print(f"cannot sample: {exc}", file=sys.stderr)
            return EXIT_CAPABILITY
        print("sampled code estimate")
        print(report.render(), end="")
        return EXIT_OK

    try:
        code, atlas = code_of_cover(cover)
    except BallConstraintError:
        print(
            "cover carries ball constraints; exact mode unavailable, rerun with --sample N",
            file=sys.stderr,
        )
        return EXIT_CAPABILITY
    print("code: " + " ".join(word_label(w, code.n) for w in code.sorted_words()))
    for w in code.sorted_words():
        print(f"cells {word_label(w, code.n)}: {len(atlas[w])}")
    if args.nondegen:
        try:
            rep = check_nondegeneracy(cover)
        except (NonFullDimensionalRegionError, BallConstraintError) as exc:
            print(f"cannot check non-degeneracy: {exc}", file=sys.stderr)
            return EXIT_CAPABILITY
        print(f"cond_i: {str(rep.cond_i).lower()}")
        print(f"cond_ii: {str(rep.cond_ii).lower()}")
        for off in rep.offenders:
            print(
                f"offender: condition={off.condition} sigma="
                f"{word_label(off.sigma, code.n)} cell-signs={list(off.cell.signs)}"
            )
    if args.invariance:
        try:
            inv = verify_closure_interior_invariance(cover)
        except (MixedRelationsError, TransformError, BallConstraintError) as exc:
            print(f"cannot check invariance: {exc}", file=sys.stderr)
            return EXIT_CAPABILITY
        if inv.code_equal_cl is not None:
            print(f"code-equal-closure: {str(inv.code_equal_cl).lower()}")
        if inv.code_equal_int is not None:
            print(f"code-equal-interior: {str(inv.code_equal_int).lower()}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    if args.list:
        for name, _ in all_rows():
            print(name)
        return EXIT_OK
    results = run_suite()
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}")
        if not r.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} rows passed")
    return EXIT_OK if failed == 0 else EXIT_VERDICT


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="convexcodes",
        description="Convexity analysis and verified realizations of neural codes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="obstructions and completeness of a code file")
    p.add_argument("code_file")
    p.add_argument("--nonlocal-budget", type=int, default=2000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("realize", help="construct a verified convex realization")
    p.add_argument("code_file")
    p.add_argument("--method", choices=["chamber", "potential", "auto"], default="auto")
    p.add_argument("--ambient", choices=["whole", "union"], default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_realize)

    p = sub.add_parser("cover-code", help="exact or sampled code of a cover file")
    p.add_argument("cover_file")
    p.add_argument("--nondegen", action="store_true")
    p.add_argument("--invariance", action="store_true")
    p.add_argument("--sample", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_cover_code)

    p = sub.add_parser("verify-paper", help="run the bundled verification suite")
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=cmd_verify_paper)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
