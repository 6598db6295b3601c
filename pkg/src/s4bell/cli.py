"""Command-line front end.

Every command builds a RunReport: the computed results plus a list of named
checks. The exit status is 0 when all checks pass, 1 when any fails and 2 on
usage or I/O errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import bell, classical, decomp, fixtures, game, group, orbit

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    passed: bool


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.ok else EXIT_FAIL

    def check(self, name: str, expected, fn: Callable[[], Any], compare=None) -> Check:
        """Run ``fn`` and record whether its value matches ``expected``.

        ``compare(actual, expected)`` defaults to equality. An exception counts
        as a failure and its message becomes the actual value.
        """
        compare = compare or (lambda a, e: a == e)
        try:
            actual = fn()
            passed = bool(compare(actual, expected))
        except Exception as exc:  # noqa: BLE001 - a failing check, not a crash
            actual, passed = f"{type(exc).__name__}: {exc}", False
        c = Check(name, expected, actual, passed)
        self.checks.append(c)
        return c

    def to_json(self) -> str:
        # elapsed is left out so payloads are identical across runs
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": [
                {"name": c.name, "expected": c.expected, "actual": c.actual, "passed": c.passed}
                for c in self.checks
            ],
            "ok": self.ok,
        }
        return json.dumps(payload, indent=2, default=_jsonable)

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        for k, v in self.inputs.items():
            lines.append(f"  {k}: {_fmt(v)}")
        for k, v in self.results.items():
            if isinstance(v, str) and "\n" in v:
                lines.append(f"{k}:")
                lines.extend("  " + row for row in v.rstrip("\n").split("\n"))
            else:
                lines.append(f"{k}: {_fmt(v)}")
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            lines.append(f"[{flag}] {c.name}: expected {_fmt(c.expected)}, got {_fmt(c.actual)}")
        lines.append(f"elapsed: {self.elapsed:.3f} s")
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines) + "\n"


def _jsonable(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, (np.ndarray, tuple, set, frozenset)):
        return list(x)
    return str(x)


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return f"{v:.9f}"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _within(tol):
    return lambda a, e: abs(a - e) <= tol


def _timed(report: RunReport, t0: float) -> RunReport:
    report.elapsed = time.perf_counter() - t0
    return report


def cmd_verify(fixture=None) -> RunReport:
    """Invariant suite for the group, orbits and Clebsch-Gordan structure.

    ``fixture`` replaces the reference orbit table (used to inject faults).
    """
    t0 = time.perf_counter()
    r = RunReport("verify-group")
    G = group.symmetric_group()
    classes = group.conjugacy_classes(G)
    r.results["group_order"] = len(G)
    r.results["class_sizes"] = sorted(len(c) for c in classes)
    r.check("group order", group.GROUP_ORDER, lambda: len(G))
    r.check("conjugacy class sizes", [1, 3, 6, 6, 8], lambda: sorted(len(c) for c in classes))

    rep = group.build_representation()
    mats = rep.matrices()
    r.check("homomorphism defect <= 1e-10", 0.0, rep.homomorphism_defect, _within(1e-10))
    r.check(
        "orthogonality defect <= 1e-12",
        0.0,
        lambda: float(np.abs(mats @ mats.transpose(0, 2, 1) - np.eye(3)).max()),
        _within(1e-12),
    )
    r.check(
        "det = sign(g)",
        0.0,
        lambda: max(abs(np.linalg.det(rep[g]) - g.sign) for g in rep),
        _within(1e-12),
    )
    r.check(
        "faithful (min pairwise max-abs difference > 0.1)",
        True,
        lambda: min(
            float(np.abs(mats[a] - mats[b]).max()) for a in range(24) for b in range(a + 1, 24)
        )
        > 0.1,
    )
    r.check(
        "characters constant on classes",
        0.0,
        lambda: max(np.ptp([rep.character(g) for g in c]) for c in classes),
        _within(1e-10),
    )

    def tetrahedron():
        verts = orbit.generate_orbit(rep, [1.0, 0.0, 0.0])
        ref = np.array(list(fixtures.TETRAHEDRON.values()))
        if len(verts) != 4:
            return f"{len(verts)} vertices"
        unmatched = sum(np.abs(ref - v).max(axis=1).min() > 1e-12 for v in verts)
        dots = np.array(verts) @ np.array(verts).T
        off = dots[~np.eye(4, dtype=bool)]
        return "ok" if unmatched == 0 and np.abs(off + 1 / 3).max() <= 1e-12 else "mismatch"

    r.check("tetrahedron orbit of (1,0,0)", "ok", tetrahedron)

    labeled = {}

    def labeling():
        labeled["orbit"] = orbit.standard_orbit(rep, fixture)
        return 24

    r.check("generic orbit labeled against reference table", 24, labeling)

    def stabilizers():
        for v in ([1.0, 0.0, 0.0], np.ones(3) / np.sqrt(3.0)):
            st = orbit.stabilizer(rep, v)
            if len(orbit.generate_orbit(rep, v)) * st.order != 24 or not st.is_subgroup():
                return False
        return True

    r.check("orbit-stabilizer", True, stabilizers)

    C = decomp.cg_matrix()
    r.check(
        "CG matrix orthogonal", 0.0, lambda: float(np.abs(C @ C.T - np.eye(9)).max()), _within(1e-12)
    )
    r.check("CG block structure (3,3,2,1)", 0.0, lambda: decomp.off_block_defect(rep), _within(1e-10))
    r.check(
        "CG block assignment",
        {"D": [0, 3], "D~": [3, 6], "D2": [6, 8], "D0": [8, 9]},
        lambda: {k: [s.start, s.stop] for k, s in decomp.match_blocks(rep).items()},
    )

    def projections():
        rng = np.random.default_rng(0)
        worst = 0.0
        for _ in range(1000):
            m, n = rng.normal(size=(2, 3))
            m, n = m / np.linalg.norm(m), n / np.linalg.norm(n)
            a, b = decomp.project_closed_form(m, n), decomp.project_via_cg(m, n)
            worst = max(worst, max(abs(a.norms_squared[k] - b.norms_squared[k]) for k in decomp.IRREPS))
        return worst

    r.check("closed-form vs CG projections (1000 pairs)", 0.0, projections, _within(1e-12))

    def terms():
        if "orbit" not in labeled:
            raise RuntimeError("orbit labeling failed")
        return len(classical.inequality_terms(labeled["orbit"], rep))

    r.check("inequality terms regenerate from orbits", 48, terms)
    r.check(
        "constraint graph: 8 six-cycles",
        [6] * 8,
        lambda: [len(c) for c in classical.constraint_graph_cycles()],
    )
    r.check("win table matches reference", 48, lambda: game.build_win_table().winning_pairs())
    return _timed(r, t0)


def cmd_orbit() -> RunReport:
    t0 = time.perf_counter()
    r = RunReport("orbit")
    rep = group.build_representation()
    lo = orbit.standard_orbit(rep)
    r.results["csv"] = lo.to_csv()
    r.check("orbit size", 24, lambda: len(lo))
    return _timed(r, t0)


def cmd_bound(mode: str) -> RunReport:
    t0 = time.perf_counter()
    r = RunReport("bound", inputs={"mode": mode})
    if mode == "quantum":
        rep = group.build_representation()
        lo = orbit.standard_orbit(rep)
        seeds = bell.seeds_from_labels(lo, bell.ORBIT_SEED_PAIRS)
        schur = bell.quantum_bound(lo, rep)
        op = bell.build_X(seeds, rep)
        dense = bell.eigenvalues_dense(op)
        closed = bell.closed_form_lambda_max()
        rho_a, rho_b = bell.reduced_densities(schur.optimal_state)
        r.results.update(
            lambda_max=schur.lambda_max,
            lambda_max_dense=dense.lambda_max,
            closed_form=closed,
            optimal_component=schur.optimal_component,
            per_component=schur.per_component,
            dims=decomp.DIMS,
        )
        r.check("Schur route vs closed form", closed, lambda: schur.lambda_max, _within(1e-9))
        r.check("dense route vs closed form", closed, lambda: dense.lambda_max, _within(1e-9))
        r.check("optimal component", "D0", lambda: schur.optimal_component)
        r.check("weighted trace = 24 x seeds", 48.0, schur.trace, _within(1e-8))
        r.check(
            "reduced densities = I/3",
            0.0,
            lambda: float(max(np.abs(rho_a - np.eye(3) / 3).max(), np.abs(rho_b - np.eye(3) / 3).max())),
            _within(1e-10),
        )
    else:
        res = classical.enumerate_strategies(workers=1)
        r.results.update(max_c=res.histogram.max_c, argmax_count=len(res.maximizers))
        r.check("classical bound", fixtures.CLASSICAL_BOUND, lambda: res.histogram.max_c)
        r.check("number of optimal strategies", 144, lambda: len(res.maximizers))
    return _timed(r, t0)


def cmd_histogram(threads: int, out: Path | None = None) -> RunReport:
    """Full enumeration; the CSV goes to ``out`` if given. Raises OSError on write failure."""
    t0 = time.perf_counter()
    r = RunReport("histogram", inputs={"threads": threads, "out": str(out) if out else None})
    if out is not None:
        Path(out).touch()  # fail on an unwritable path before enumerating
    hist = classical.enumerate_strategies(workers=threads).histogram
    text = hist.to_csv()
    if out is not None:
        Path(out).write_text(text)
    r.results["histogram"] = text
    r.check("total = 3^16", classical.N_STRATEGIES, lambda: hist.total)
    for c, published, computed, _ in hist.compare_table_1():
        label = f"bin {c} (implied by table)" if c == 0 else f"bin {c}"
        r.check(label, published, lambda computed=computed: computed)
    return _timed(r, t0)


def cmd_game(what: str, threads: int = 1) -> RunReport:
    t0 = time.perf_counter()
    r = RunReport("game", inputs={"what": what})
    table = game.build_win_table()
    if what == "table":
        r.results["table"] = table.to_text()
        r.check("winning pairs", 48, table.winning_pairs)
        r.check("question pairs with a win", 32, lambda: len(table.nonempty_keys()))
    elif what == "optimize":
        res = classical.enumerate_strategies(workers=threads)
        best = res.optimal_strategies
        published = classical.Strategy(**fixtures.OPTIMAL_STRATEGY)
        p_best = max(game.classical_win_probability(s, table) for s in best)
        r.results.update(
            classical_win_probability=str(p_best),
            optimal_strategies=len(best),
            reference_strategy_probability=str(game.classical_win_probability(published, table)),
        )
        r.check("classical optimum", "7/32", lambda: str(p_best))
        r.check("number of optimal strategies", 144, lambda: len(best))
        r.check("reference strategy is optimal", True, lambda: published in best)
    else:
        rep = group.build_representation()
        lo = orbit.standard_orbit(rep)
        p = game.quantum_win_probability(bell.scalar_state(), lo, table)
        expected = bell.closed_form_lambda_max() / 64
        r.results.update(quantum_win_probability=p, classical_win_probability=14 / 64, ratio=p * 64 / 14)
        r.check("quantum win probability", expected, lambda: p, _within(1e-9 / 64))
        r.check("beats classical 14/64", True, lambda: p > 14 / 64)
    return _timed(r, t0)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="s4bell", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify-group", help="run the group/orbit/CG invariant suite")
    fmt(p)
    p.add_argument(
        "--perturb-fixture",
        nargs=3,
        metavar=("I", "ALPHA", "DELTA"),
        help=argparse.SUPPRESS,
    )

    p = sub.add_parser("orbit", help="print the labeled 24-vector orbit")
    p.add_argument("--export", choices=("csv",))
    p.add_argument("--out", type=Path)

    p = sub.add_parser("bound", help="quantum or classical bound")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--quantum", action="store_const", dest="mode", const="quantum")
    g.add_argument("--classical", action="store_const", dest="mode", const="classical")
    fmt(p)

    p = sub.add_parser("histogram", help="exact histogram of c over all strategies")
    p.add_argument("--threads", type=int, default=classical.default_workers())
    p.add_argument("--out", type=Path)
    fmt(p)

    p = sub.add_parser("game", help="nonlocal game quantities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--table", action="store_const", dest="what", const="table")
    g.add_argument("--optimize", action="store_const", dest="what", const="optimize")
    g.add_argument("--quantum", action="store_const", dest="what", const="quantum")
    p.add_argument("--threads", type=int, default=classical.default_workers())
    fmt(p)
    return ap


def _emit(report: RunReport, fmt: str) -> int:
    sys.stdout.write(report.to_json() + "\n" if fmt == "json" else report.to_text())
    return report.exit_code


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    if args.command == "verify-group":
        fixture = None
        if args.perturb_fixture:
            i, alpha, delta = int(args.perturb_fixture[0]), int(args.perturb_fixture[1]), float(args.perturb_fixture[2])
            fixture = dict(fixtures.APPENDIX_A)
            v = list(fixture[(i, alpha)])
            v[0] += delta
            fixture[(i, alpha)] = tuple(v)
        return _emit(cmd_verify(fixture), args.format)

    if args.command == "orbit":
        report = cmd_orbit()
        csv_text = report.results["csv"]
        if args.out:
            try:
                args.out.write_text(csv_text)
            except OSError as exc:
                print(f"s4bell: cannot write {args.out}: {exc}", file=sys.stderr)
                return EXIT_USAGE
        elif args.export == "csv":
            sys.stdout.write(csv_text)
            return report.exit_code
        return _emit(report, "text")

    if args.command == "bound":
        return _emit(cmd_bound(args.mode), args.format)

    if args.command == "histogram":
        if args.threads < 1:
            print("s4bell: --threads must be >= 1", file=sys.stderr)
            return EXIT_USAGE
        try:
            report = cmd_histogram(args.threads, args.out)
        except OSError as exc:
            print(f"s4bell: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        return _emit(report, args.format)

    if args.threads < 1:
        print("s4bell: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    return _emit(cmd_game(args.what, args.threads), args.format)


if __name__ == "__main__":
    sys.exit(main())
