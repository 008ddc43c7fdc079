"""Command-line front end: label sets, checks, growing, theorem verification, export.

Exit codes: 0 pass, 1 verification failure, 2 budget exhausted, 3 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .equiv import canonical_form
from .families import FamilyError, SPORADIC_RINGS, catalogue, entry_filename, sporadic
from .grow import GrowConfig, cyclotomic_instances_of_form, grow_closure, heavy_seeds, is_maximal, seed_pairs
from .lgraph import ANY_CHARGE, CHARGED, FormPattern, LGraph, LGraphError
from .ring import SUPPORTED_D, RingError, get_ring, label_set, render
from .spectra import char_poly, eigenvalues_all_pm2, is_cyclotomic

EXIT_PASS, EXIT_FAIL, EXIT_BUDGET, EXIT_BAD_INPUT = 0, 1, 2, 3

log = logging.getLogger("cyclotomic_lgraphs")


class BadInput(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    ring: int
    bounds: dict = field(default_factory=dict)
    seed: str = ""
    outputs: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    digest: str = ""

    def write(self, path: Path) -> None:
        path.write_text(json.dumps(asdict(self), indent=1) + "\n")


def keys_digest(keys) -> str:
    h = hashlib.sha256()
    for k in sorted(keys):
        h.update(k)
        h.update(b"|")
    return h.hexdigest()


def _ring_arg(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return d


def _check_ring(d: int) -> None:
    if d not in SUPPORTED_D:
        raise BadInput(f"unsupported ring d={d}; expected one of {', '.join(map(str, SUPPORTED_D))}")


def _int_set(text: str) -> frozenset[int]:
    try:
        return frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pm_render(p: tuple[int, int]) -> str:
    body = render(p)
    return f"±{body}" if ("+" not in body and "-" not in body[1:]) else f"±({body})"


def format_label_sets(d: int) -> list[str]:
    ls = label_set(d)
    lines = []
    for k in range(5):
        elems = [x.pair for x in ls.of_norm(k)]
        if k == 0:
            lines.append("L0: 0")
            continue
        reps = []
        for p in elems:
            q = (-p[0], -p[1])
            rep = p if p > q else q
            if rep not in reps:
                reps.append(rep)
        reps.sort(key=lambda p: (abs(p[1]), abs(p[0]), -p[0], -p[1]))
        text = ", ".join(_pm_render(p) for p in reps) if reps else "∅"
        lines.append(f"L{k}: {text}")
    return lines


def cmd_lnsets(args) -> int:
    _check_ring(args.d)
    print(f"d={args.d}  ({get_ring(args.d).legend})")
    for line in format_label_sets(args.d):
        print(line)
    return EXIT_PASS


def _load_graphs(path: str) -> list[LGraph]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read {path}: {exc}")
    if isinstance(data, dict) and "entries" in data:
        data = [e["graph"] for e in data["entries"]]
    if isinstance(data, dict):
        data = [data]
    try:
        return [LGraph.from_dict(x) for x in data]
    except (LGraphError, RingError, TypeError, KeyError) as exc:
        raise BadInput(f"invalid L-graph JSON in {path}: {exc}")


def check_report(g: LGraph) -> dict:
    cyc = is_cyclotomic(g)
    return {
        "d": g.d,
        "n": g.n,
        "connected": g.is_connected(),
        "cyclotomic": cyc,
        "maximal": bool(cyc and g.is_connected() and is_maximal(g)),
        "all_pm2": eigenvalues_all_pm2(g),
        "char_poly": char_poly(g).format("x"),
        "canonical_key": canonical_form(g, max(g.n, 14)).key.hex(),
    }


def cmd_check(args) -> int:
    graphs = _load_graphs(args.file)
    reports = [check_report(g) for g in graphs]
    print(json.dumps(reports[0] if len(reports) == 1 else reports, indent=1))
    return EXIT_PASS


NAMED_SEEDS = {
    "weight3": "all 2-vertex graphs with one weight-3 edge",
    "charged-weight2": "a charged vertex joined by a weight-2 edge",
    "l1l2l1-path": "a-b weight 1, c-d weight 1, b-d weight 2, a-c weight 0 or 1",
    "heavy": "all 2-vertex graphs with an edge of weight at least 2",
}


def named_seeds(name: str, d: int) -> list[LGraph]:
    if name == "weight3":
        return seed_pairs(d, [3])
    if name == "charged-weight2":
        return cyclotomic_instances_of_form(FormPattern.build(2, [CHARGED, ANY_CHARGE], {(0, 1): 2}), d)
    if name == "l1l2l1-path":
        return cyclotomic_instances_of_form(FormPattern.build(4, None, {(0, 1): 1, (2, 3): 1, (1, 3): 2, (0, 2): {0, 1}}), d)
    if name == "heavy":
        return heavy_seeds(d)
    if name in SPORADIC_RINGS:
        return [sporadic(name, d)]
    raise BadInput(f"unknown seed {name!r}; named seeds: {', '.join(NAMED_SEEDS)} or a sporadic name or a JSON file")


def _catalogue_names(d: int, n_limit: int = 17) -> dict[bytes, str]:
    return {canonical_form(e.graph, n_limit).key: e.label for e in catalogue(d, 8)}


def cmd_grow(args) -> int:
    _check_ring(args.d)
    t0 = time.time()
    if Path(args.seed).suffix == ".json" or Path(args.seed).exists():
        seeds = _load_graphs(args.seed)
    else:
        seeds = named_seeds(args.seed, args.d)
    if not seeds:
        raise BadInput("no cyclotomic seeds of that form exist over this ring")
    try:
        cfg = GrowConfig(
            args.d,
            allowed_edge_norms=args.norms,
            allowed_charges=args.charges,
            max_rounds=args.max_rounds,
            max_vertices=args.max_vertices,
            jobs=args.jobs,
        )
    except ValueError as exc:
        raise BadInput(str(exc))
    try:
        report = grow_closure(seeds, cfg, progress=lambda r, new, tot: log.info("round %d: %d new, %d total", r, new, tot))
    except ValueError as exc:
        raise BadInput(str(exc))
    names = _catalogue_names(args.d)
    print(f"rounds executed: {report.rounds_executed}; new classes per round: {report.new_per_round}")
    print(f"terminated: {report.terminated}; classes: {len(report.classes)}")
    for k in report.maximal_keys:
        g = report.classes[k]
        print(f"maximal: n={g.n} {names.get(k, 'not in catalogue')}  key={k.hex()[:16]}")
    outputs = []
    if args.json_out:
        out = Path(args.json_out)
        out.write_text(report.to_json(indent=1) + "\n")
        outputs.append(str(out))
        man = RunManifest(
            "grow", args.d, cfg.to_dict(), args.seed, outputs, round(time.time() - t0, 3), report.digest()
        )
        man.write(out.with_suffix(".manifest.json"))
    if not report.terminated:
        return EXIT_BUDGET
    return EXIT_PASS


def cmd_verify_theorem(args) -> int:
    from .verify import verify_theorem

    _check_ring(args.d)
    if not 2 <= args.max_n <= 16:
        raise BadInput("--max-n must lie in 2..16")
    t0 = time.time()
    rep = verify_theorem(
        args.d, args.max_n, jobs=args.jobs, node_budget=args.budget,
        progress=lambda r, new, tot: log.info("round %d: %d new, %d total", r, new, tot),
    )
    counts = ", ".join(f"n={k}: {v}" for k, v in sorted(rep.counts_by_n.items()))
    print(f"d={args.d} max-n={args.max_n}: {rep.class_count} classes ({counts})")
    ok_max = not rep.unknown_maximal
    print(f"[{'PASS' if ok_max else 'FAIL'}] every maximal graph is a catalogue entry: {', '.join(rep.maximal_found)}")
    for g in rep.unknown_maximal:
        print(f"  counterexample (maximal, not in catalogue): {g.to_json()}")
    ok_ext = not rep.unreachable and not rep.incomplete
    status = "PASS" if ok_ext else ("INCOMPLETE" if rep.incomplete else "FAIL")
    print(f"[{status}] every nonmaximal graph extends to a catalogue entry")
    for g in rep.unreachable:
        print(f"  counterexample (no maximal catalogue supergraph found): {g.to_json()}")
    print(f"digest: {rep.digest}")
    if args.json_out:
        out = Path(args.json_out)
        out.write_text(json.dumps(rep.to_dict(), indent=1) + "\n")
        RunManifest(
            "verify-theorem", args.d, {"max_n": args.max_n, "budget": args.budget}, "heavy",
            [str(out)], round(time.time() - t0, 3), rep.digest,
        ).write(out.with_suffix(".manifest.json"))
    if rep.incomplete:
        return EXIT_BUDGET
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_export(args) -> int:
    _check_ring(args.d)
    if not (args.dot or args.json):
        raise BadInput("choose --dot and/or --json")
    t0 = time.time()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = catalogue(args.d, args.kmax)
    outputs = []
    if args.dot:
        for e in entries:
            p = out_dir / f"{entry_filename(e)}.dot"
            p.write_text(e.graph.to_dot(e.label))
            outputs.append(str(p))
    if args.json:
        p = out_dir / f"catalogue_d{-args.d}.json"
        p.write_text(json.dumps({"d": args.d, "kmax": args.kmax, "entries": [e.to_dict() for e in entries]}, indent=1) + "\n")
        outputs.append(str(p))
    digest = keys_digest(canonical_form(e.graph, 17).key for e in entries)
    RunManifest("export", args.d, {"kmax": args.kmax}, "catalogue", outputs, round(time.time() - t0, 3), digest).write(
        out_dir / f"export_d{-args.d}.manifest.json"
    )
    print(f"wrote {len(outputs)} files to {out_dir}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclotomic-lgraphs", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lnsets", help="print the label sets L0..L4")
    p.add_argument("--d", type=_ring_arg, required=True)
    p.set_defaults(func=cmd_lnsets)

    p = sub.add_parser("check", help="cyclotomic / maximal / eigenvalue report for a JSON graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("grow", help="grow a seed set to closure")
    p.add_argument("--d", type=_ring_arg, required=True)
    p.add_argument("--seed", required=True, help=f"JSON file, sporadic name, or one of: {', '.join(NAMED_SEEDS)}")
    p.add_argument("--norms", type=_int_set, default=frozenset({1, 2, 3, 4}))
    p.add_argument("--charges", type=_int_set, default=frozenset({-1, 0, 1}))
    p.add_argument("--max-rounds", type=int, default=16)
    p.add_argument("--max-vertices", type=int, default=16)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_grow)

    p = sub.add_parser("verify-theorem", help="check the classification up to a vertex bound")
    p.add_argument("--d", type=_ring_arg, required=True)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=200_000, help="extension-search node budget")
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("export", help="write the catalogue as DOT and/or JSON")
    p.add_argument("--d", type=_ring_arg, required=True)
    p.add_argument("--dot", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--out-dir", default="catalogue")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_BAD_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (BadInput, FamilyError, RingError, LGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
