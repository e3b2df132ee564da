"""Command-line front end binding the modules into reproducible runs.

Exit codes: 0 = pass, 1 = mathematical failure (counterexample or negative
charge), 2 = usage or parse error.  Reports go to stdout and are
byte-identical for identical inputs and flags, independent of job count;
progress lines go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field

from .configs import SpecError, build_configuration, catalog, expand_spec, \
    parse_spec
from .discharge import check_large_faces, check_unavoidability
from .engine import ColorProblem, EngineError, RootColoring, \
    chromatic_number_upto, verify_all
from .graphs import GraphError, format_graph_text, parse_graph_text, square
from .reduce import verify_configuration

PASS, FAIL, USAGE = 0, 1, 2


@dataclass
class RunManifest:
    command: str
    inputs: tuple = ()
    k: int | None = None
    t: int | None = None
    root_depth: int | None = None
    jobs: int | None = None
    wall_seconds: float = 0.0
    cpu_seconds: float = 0.0
    verdicts: list = field(default_factory=list)  # (label, verdict) pairs
    precolorings: int = 0
    nodes: int = 0

    def text(self):
        lines = [f"command={self.command}",
                 "inputs=" + ",".join(self.inputs)]
        for name in ("k", "t", "root_depth", "jobs"):
            value = getattr(self, name)
            lines.append(f"{name}={'-' if value is None else value}")
        lines.append(f"wall_seconds={self.wall_seconds:.2f}")
        lines.append(f"cpu_seconds={self.cpu_seconds:.2f}")
        lines.append("verdicts=" +
                     ",".join(f"{n}:{v}" for n, v in self.verdicts))
        lines.append(f"precolorings={self.precolorings}")
        lines.append(f"nodes={self.nodes}")
        return "\n".join(lines) + "\n"

    def write(self, path):
        with open(path, "w") as fh:
            fh.write(self.text())


def _progress(msg):
    print(msg, file=sys.stderr, flush=True)


def _default_root_depth(t):
    # mirror the cluster strategy: serial for small prefixes, split the
    # largest searches three levels deep
    return 0 if t < 21 else 3


def _write_report_figure(path, names, precolorings, nodes):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8, max(3, 0.3 * len(names) + 1)))
    ypos = range(len(names))
    ax.barh([y + 0.2 for y in ypos], precolorings, height=0.4,
            label="precolorings", color="#4477aa")
    ax.barh([y - 0.2 for y in ypos], nodes, height=0.4,
            label="extension nodes", color="#ee6677")
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xscale("symlog")
    ax.set_xlabel("count")
    ax.set_title("reducibility search effort per configuration")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _write_discharge_figure(path, reports):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    lengths = [r.length for r in reports]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.bar(lengths, [r.scenarios for r in reports], color="#cccccc",
            label="scenarios")
    ax1.bar(lengths, [r.survivors for r in reports], color="#4477aa",
            label="survivors")
    ax1.set_yscale("symlog")
    ax1.set_xlabel("face length")
    ax1.set_ylabel("count")
    ax1.legend(fontsize=8)
    ax2.plot(lengths, [float(r.min_charge) for r in reports], "o-",
             color="#ee6677")
    ax2.axhline(0.0, color="black", linewidth=0.8)
    ax2.set_xlabel("face length")
    ax2.set_ylabel("minimum final charge")
    fig.suptitle("discharging case analysis")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _expand_arg(text):
    return [s.name() for s in expand_spec(parse_spec(text))]


def cmd_verify(args):
    try:
        names = _expand_arg(args.spec)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    status = PASS
    for name in names:
        cfg = build_configuration(name)
        depth = args.root_depth if args.root_depth is not None else \
            _default_root_depth(len(cfg.whites))
        _progress(f"# verifying {name} (|white|={len(cfg.whites)}, "
                  f"root_depth={depth}, jobs={args.jobs})")
        rec = verify_configuration(cfg, k=args.k, jobs=args.jobs,
                                   root_depth=depth)
        print(rec.report())
        if not rec.reducible:
            status = FAIL
    return status


def cmd_verify_all(args):
    entries = list(catalog())
    if args.only:
        try:
            wanted = set(_expand_arg(args.only))
        except SpecError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return USAGE
        entries = [e for e in entries if e.name in wanted]
        if not entries:
            print(f"error: no catalog entry matches {args.only!r}",
                  file=sys.stderr)
            return USAGE
    manifest = RunManifest(command="verify-all",
                           inputs=tuple(e.name for e in entries),
                           k=args.k, root_depth=args.root_depth,
                           jobs=args.jobs)
    t_wall, t_cpu = time.monotonic(), time.process_time()
    rows = []
    status = PASS
    print("spec\twhites\tblacks\tprecolorings\tnodes\tseconds\tstatus")
    for entry in entries:
        cfg = entry.build()
        depth = args.root_depth if args.root_depth is not None else \
            _default_root_depth(len(cfg.whites))
        _progress(f"# verifying {entry.name} (|white|={len(cfg.whites)}, "
                  f"root_depth={depth}, jobs={args.jobs})")
        rec = verify_configuration(cfg, k=args.k, jobs=args.jobs,
                                   root_depth=depth)
        verdict = "PASS" if rec.reducible else "FAIL"
        row = (entry.name, len(cfg.whites), len(cfg.black),
               rec.precolorings, rec.nodes, rec.seconds, verdict)
        rows.append(row)
        print(f"{row[0]}\t{row[1]}\t{row[2]}\t{row[3]}\t{row[4]}"
              f"\t{row[5]:.2f}\t{row[6]}", flush=True)
        manifest.verdicts.append((entry.name, verdict))
        manifest.precolorings += rec.precolorings
        manifest.nodes += rec.nodes
        if not rec.reducible:
            status = FAIL
    manifest.wall_seconds = time.monotonic() - t_wall
    manifest.cpu_seconds = time.process_time() - t_cpu
    if args.manifest:
        manifest.write(args.manifest)
    if args.report:
        os.makedirs(args.report, exist_ok=True)
        with open(os.path.join(args.report, "verify_all.tsv"), "w") as fh:
            fh.write("spec\twhites\tblacks\tprecolorings\tnodes"
                     "\tseconds\tstatus\n")
            for row in rows:
                fh.write(f"{row[0]}\t{row[1]}\t{row[2]}\t{row[3]}\t{row[4]}"
                         f"\t{row[5]:.2f}\t{row[6]}\n")
        _write_report_figure(os.path.join(args.report, "verify_all.png"),
                             [r[0] for r in rows], [r[3] for r in rows],
                             [r[4] for r in rows])
    return status


def _parse_problem_file(text):
    """Problem file: header line `k=<int> t=<int>`, then the graph text."""
    lines = text.splitlines()
    header = None
    rest = []
    for line in lines:
        stripped = line.strip()
        if header is None and stripped and not stripped.startswith("#"):
            header = stripped
            continue
        if header is not None:
            rest.append(line)
    if header is None:
        raise GraphError("empty problem file")
    parts = dict(item.split("=", 1) for item in header.split())
    if set(parts) != {"k", "t"}:
        raise GraphError(f"malformed problem header {header!r}")
    return int(parts["k"]), int(parts["t"]), parse_graph_text("\n".join(rest))


def cmd_precolor_extend(args):
    try:
        with open(args.file) as fh:
            k, t, g = _parse_problem_file(fh.read())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    if args.k is not None:
        k = args.k
    if args.t is not None:
        t = args.t
    root = None
    if args.root:
        root = RootColoring(tuple(int(c) for c in args.root.split(",")))
    try:
        p = ColorProblem(g, k=k, t=t)
        result = verify_all(p, root=root, jobs=args.jobs,
                            root_depth=args.root_depth or 0)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    print(result.report())
    return PASS if result.ok else FAIL


def cmd_discharge_check(args):
    drop = tuple(args.drop_rule or ())
    try:
        reports = check_unavoidability(drop=drop)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    status = PASS
    for r in reports:
        print(r.line())
        if not r.passed:
            status = FAIL
    large = check_large_faces(r_max=args.max)
    print(large.text())
    if not large.passed:
        status = FAIL
    if args.report:
        os.makedirs(args.report, exist_ok=True)
        with open(os.path.join(args.report, "discharge.tsv"), "w") as fh:
            fh.write("length\tscenarios\tsurvivors\tmin_charge\tstatus\n")
            for r in reports:
                fh.write(f"{r.length}\t{r.scenarios}\t{r.survivors}"
                         f"\t{r.min_charge.numerator}/"
                         f"{r.min_charge.denominator}"
                         f"\t{'PASS' if r.passed else 'FAIL'}\n")
        _write_discharge_figure(os.path.join(args.report, "discharge.png"),
                                reports)
    return status


def cmd_square(args):
    try:
        with open(args.file) as fh:
            g = parse_graph_text(fh.read())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    print(format_graph_text(square(g)), end="")
    return PASS


def cmd_chi(args):
    try:
        with open(args.file) as fh:
            g = parse_graph_text(fh.read())
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    chi = chromatic_number_upto(g, args.max)
    if chi is None:
        print(f"chi > {args.max}")
        return FAIL
    print(chi)
    return PASS


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="subcubic7",
        description="verify that squares of subcubic planar graphs are "
                    "7-colorable: reducible configurations + discharging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k_default=7):
        p.add_argument("-k", type=int, default=k_default,
                       help="number of colors (default %(default)s)")
        p.add_argument("--jobs", type=int, default=os.cpu_count(),
                       help="parallel tasks (default: CPU count)")
        p.add_argument("--root-depth", type=int, default=None,
                       help="partition depth (default: by prefix size)")

    p = sub.add_parser("verify", help="prove one configuration (or family) "
                                      "reducible")
    p.add_argument("spec", help="configuration spec, e.g. 3c3 or 3D3-3")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-all", help="run the whole 31-entry catalog")
    p.add_argument("--only", help="restrict to one spec or family")
    p.add_argument("--manifest", help="write a run manifest to this path")
    p.add_argument("--report", metavar="DIR",
                   help="write TSV + figure into DIR")
    common(p)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("precolor-extend",
                       help="raw engine access for a problem file")
    p.add_argument("file", help="problem file: `k=.. t=..` header + graph")
    p.add_argument("-k", type=int, default=None, help="override header k")
    p.add_argument("-t", type=int, default=None, help="override header t")
    p.add_argument("--root", help="root coloring, e.g. 0,1,0")
    p.add_argument("--jobs", type=int, default=os.cpu_count())
    p.add_argument("--root-depth", type=int, default=0)
    p.set_defaults(func=cmd_precolor_extend)

    p = sub.add_parser("discharge-check",
                       help="check the discharging case analysis")
    p.add_argument("--max", type=int, default=20,
                   help="largest face length for the general bound "
                        "(default %(default)s)")
    p.add_argument("--drop-rule", action="append", metavar="SPEC",
                   help="mutation mode: drop an exclusion rule (or ALL)")
    p.add_argument("--report", metavar="DIR",
                   help="write TSV + figure into DIR")
    p.set_defaults(func=cmd_discharge_check)

    p = sub.add_parser("square", help="print the square of a graph file")
    p.add_argument("file")
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("chi", help="exact chromatic number up to a bound")
    p.add_argument("file")
    p.add_argument("--max", type=int, default=7)
    p.set_defaults(func=cmd_chi)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return exc.code
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
