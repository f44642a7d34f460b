"""Command-line driver: profile, partition, run, serve, bench and inspection dumps.

Every failure prints exactly one line ``error: <code>: <message>`` on stderr
and exits with the status listed in ``EXIT_CODES``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .codegen import Bundle, dump_blocks
from .frontend import DslError, dump_ast, format_program, parse
from .interp import InterpError, MiniDb, Profile, Workload, profile, run_reference
from .optimizer import InfeasibleError
from .pipeline import (Compiled, Config, classify, compile_budgets, compile_program,
                       read_program)
from .report import BenchReport, BenchRow
from .runtime import AppDriver, Cluster, EventLog, HostRuntime, SessionError
from .runtime.adaptive import HIGH, LOW, AdaptiveState, LoadTrace, Poller, ScriptedSampler, run_adaptive
from .runtime.wire import WireError
from .values import EvalError, render

EXIT_CODES = {
    "internal": 1,
    "usage": 2,
    "dsl": 3,
    "interp": 4,
    "infeasible": 5,
    "runtime": 6,
    "bundle": 7,
}


class CliError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # single-line diagnostic instead of usage dump
        raise CliError("usage", message)


# ------------------------------------------------------------------ inputs


def _config(args) -> Config:
    cfg = Config.load(args.config) if args.config else Config()
    overrides = {
        "lat": "lat", "bw": "bw", "alpha": "alpha", "threshold": "threshold",
        "poll_ms": "poll_ms", "channel": "channel", "instr_ms": "instr_ms",
        "db_slowdown": "db_slowdown", "host": "host", "port": "port", "seed": "seed",
    }
    for attr, key in overrides.items():
        v = getattr(args, attr, None)
        if v is not None:
            setattr(cfg, key, v)
    if getattr(args, "budgets", None):
        cfg.budgets = [b for b in args.budgets.split(",") if b.strip()]
    return cfg.validate()


def _workload(spec: str, seed: int) -> Workload:
    if spec.startswith("corpus:"):
        name = spec.split(":", 1)[1]
        try:
            return corpus.workload(name, seed)
        except KeyError as e:
            raise CliError("usage", str(e.args[0])) from None
    return Workload.load(spec)


def _bundle(path: str) -> Bundle:
    try:
        return Bundle.load(path)
    except FileNotFoundError:
        raise
    except (ValueError, KeyError, TypeError) as e:
        raise CliError("bundle", f"{path}: {e}") from None


def _compiled(args, cfg: Config) -> Compiled:
    text, name = read_program(args.program)
    prof = Profile.load(args.profile) if getattr(args, "profile", None) else None
    w = _workload(args.workload, cfg.seed) if getattr(args, "workload", None) else None
    if prof is None and w is None:
        raise CliError("usage", "either --profile or --workload is required")
    return compile_program(name, text, w, cfg.net(), prof)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------- commands


def cmd_parse(args, cfg: Config) -> int:
    text, name = read_program(args.program)
    prog = parse(text, name)
    if args.normal:
        from .frontend import normalize

        prog = normalize(prog)
    _write(args.out, dump_ast(prog) if args.dump_ast else format_program(prog))
    return 0


def cmd_profile(args, cfg: Config) -> int:
    text, name = read_program(args.program)
    from .frontend import load

    prog = load(text, name)
    prof, _ = profile(prog, _workload(args.workload, cfg.seed))
    _write(args.out, prof.to_text())
    return 0


def cmd_partition(args, cfg: Config) -> int:
    c = _compiled(args, cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    index = []
    for part in compile_budgets(c, cfg.budgets):
        d = out / f"{c.name}-b{part.label}"
        d.mkdir(exist_ok=True)
        part.artifact.bundle.save(d / "bundle.json")
        (d / "program.pyxil").write_text(part.artifact.pyxil_text())
        (d / "placement.txt").write_text(part.placed.report())
        kind = classify(part.placed, c.program)
        index.append({"budget": part.label, "dir": d.name, "partition": kind,
                      "objective": str(part.placed.objective_value),
                      "sha256": part.artifact.bundle.hash})
        print(f"budget {part.label}: {kind} objective {part.placed.objective_value} "
              f"-> {d}")
    (out / "index.json").write_text(json.dumps(index, indent=1) + "\n")
    return 0


def _budget_order(b: Bundle) -> float:
    label = b.meta.get("budget", "inf")
    return float("inf") if label == "inf" else float(label)


def cmd_run(args, cfg: Config) -> int:
    bundles = [_bundle(p) for p in args.bundles]
    w = _workload(args.workload, cfg.seed)
    calls = list(w.calls) * args.repeat
    log = EventLog()
    report = BenchReport()
    if cfg.channel == "tcp":
        if args.load_trace:
            raise CliError("usage", "adaptive runs need the sim channel")
        lines, stats = _run_tcp(bundles[0], calls, cfg, log)
        _emit_run(args, lines, None, log)
        report.rows.append(BenchRow.of(bundles[0].meta.get("program", "?"),
                                       bundles[0].meta.get("budget", "?"), "-", stats))
        _emit_report(args, report)
        return 0
    db = MiniDb.from_spec(w.tables)
    cl = Cluster(bundles, db, cfg.cost(), log, check_freshness=args.check_freshness)
    if args.load_trace:
        if len(bundles) < 2:
            raise CliError("usage", "adaptive runs need at least two bundles")
        ordered = sorted(bundles, key=_budget_order)
        pick = {LOW: ordered[0], HIGH: ordered[-1]}
        state = AdaptiveState({k: b.hash for k, b in pick.items()}, cfg.alpha, cfg.threshold)
        poller = Poller(state, ScriptedSampler(LoadTrace.load(args.load_trace)), cfg.poll_ms)
        run = run_adaptive(cl, pick, calls, poller, args.think_ms, log)
        for regime, b in pick.items():
            st = [s for c, s in zip(run.choices, run.stats) if c.regime == regime]
            report.rows.append(BenchRow.of(b.meta.get("program", "?"), b.meta.get("budget", "?"),
                                           regime, st))
        shares = ["window_ms,low,high"] + [f"{t:g},{lo},{hi}"
                                          for t, lo, hi in run.shares(args.window_ms)]
        _emit_run(args, cl.lines, db.snapshot(), log)
        print("# partition share per window")
        print("\n".join(shares))
    else:
        if len(bundles) > 1:
            raise CliError("usage", "several bundles need --load-trace")
        stats = [cl.call(c.entry, c.args)[1] for c in calls]
        b = bundles[0]
        report.rows.append(BenchRow.of(b.meta.get("program", "?"), b.meta.get("budget", "?"),
                                       "-", stats))
        _emit_run(args, cl.lines, db.snapshot(), log)
    _emit_report(args, report)
    return 0


def _run_tcp(bundle: Bundle, calls, cfg: Config, log: EventLog):
    from .runtime.tcp import TcpChannel

    ch = TcpChannel(cfg.host, cfg.port, cfg.cost())
    try:
        drv = AppDriver(HostRuntime("APP", bundle), ch, cfg.cost(), log)
        lines, stats = [], []
        for c in calls:
            result, s, out = drv.call(c.entry, c.args)
            s.compute_ms = cfg.cost().compute_ms(s.app_instr, 0)
            lines += out + [f"=> {render(result)}"]
            stats.append(s)
    finally:
        ch.shutdown()
    return lines, stats


def _emit_run(args, lines: list[str], db: dict | None, log: EventLog) -> None:
    trace = "".join(line + "\n" for line in lines)
    if args.trace_out:
        Path(args.trace_out).write_text(trace)
    else:
        sys.stdout.write(trace)
    if args.db_out and db is not None:
        Path(args.db_out).write_text(json.dumps(db, indent=1, sort_keys=True) + "\n")
    if args.event_log:
        Path(args.event_log).write_text(log.text())


def _emit_report(args, report: BenchReport) -> None:
    if args.report_csv:
        Path(args.report_csv).write_text(report.csv())
    print("# report")
    sys.stdout.write(report.table())


def cmd_serve(args, cfg: Config) -> int:
    from .runtime.tcp import serve

    bundles = [_bundle(p) for p in args.bundles]
    w = _workload(args.workload, cfg.seed)
    srv = serve(cfg.host, cfg.port, bundles, MiniDb.from_spec(w.tables))
    host, port = srv.server_address[:2]
    print(f"listening on {host}:{port}", flush=True)
    try:
        srv.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        srv.server_close()
    return 0


def cmd_bench(args, cfg: Config) -> int:
    names = args.benchmarks or list(corpus.BENCHMARKS)
    report = BenchReport()
    for name in names:
        try:
            text = corpus.source(name)
        except OSError:
            raise CliError("usage", f"no corpus program {name!r}") from None
        loads = [corpus.workload(name, cfg.seed + k) for k in range(args.seeds)]
        c = compile_program(name, text, loads[0], cfg.net())
        for part in compile_budgets(c, cfg.budgets):
            stats = []
            for w in loads:
                cl = Cluster([part.artifact.bundle], MiniDb.from_spec(w.tables), cfg.cost())
                stats += [cl.call(call.entry, call.args)[1] for call in w.calls]
            report.rows.append(BenchRow.of(name, part.label, classify(part.placed, c.program), stats))
    if args.csv:
        Path(args.csv).write_text(report.csv())
    sys.stdout.write(report.table())
    return 0


def cmd_dump_graph(args, cfg: Config) -> int:
    _write(args.out, _compiled(args, cfg).graph.dump())
    return 0


def cmd_dump_blocks(args, cfg: Config) -> int:
    _write(args.out, dump_blocks(_bundle(args.bundle).lowered))
    return 0


def cmd_reference(args, cfg: Config) -> int:
    from .frontend import load

    text, name = read_program(args.program)
    tr = run_reference(load(text, name), _workload(args.workload, cfg.seed))
    sys.stdout.write(tr.text())
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration (overrides --config)")
    g.add_argument("--config", help="JSON config file")
    g.add_argument("--lat", type=float, help="network latency, ms per message")
    g.add_argument("--bw", type=float, help="bandwidth, bytes per ms")
    g.add_argument("--budgets", help="comma list of budgets: counts, N%% of the total, or inf")
    g.add_argument("--alpha", type=float, help="EWMA smoothing factor")
    g.add_argument("--threshold", type=float, help="load threshold in percent")
    g.add_argument("--poll-ms", dest="poll_ms", type=float, help="load poll interval")
    g.add_argument("--channel", choices=["sim", "tcp"])
    g.add_argument("--instr-ms", dest="instr_ms", type=float, help="virtual ms per statement")
    g.add_argument("--db-slowdown", dest="db_slowdown", type=float,
                   help="compute cost multiplier on the DB host")
    g.add_argument("--host")
    g.add_argument("--port", type=int)
    g.add_argument("--seed", type=int, help="seed for corpus: workloads")

    p = _Parser(prog="dbsplit", description="Partition DSL programs between an application "
                "host and a database host, then run them split.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("parse", cmd_parse, "parse a program and print it back")
    sp.add_argument("program", help="path or corpus:NAME")
    sp.add_argument("--dump-ast", action="store_true", help="indented AST listing")
    sp.add_argument("--normal", action="store_true", help="normalize first")
    sp.add_argument("-o", "--out")

    sp = add("profile", cmd_profile, "run a workload and write statement counts and sizes")
    sp.add_argument("program")
    sp.add_argument("--workload", required=True, help="workload JSON or corpus:NAME")
    sp.add_argument("-o", "--out")

    sp = add("partition", cmd_partition, "solve and generate one bundle per budget")
    sp.add_argument("program")
    sp.add_argument("--profile")
    sp.add_argument("--workload")
    sp.add_argument("-o", "--out", required=True, help="output directory")

    sp = add("run", cmd_run, "execute a workload over the two hosts")
    sp.add_argument("bundles", nargs="+")
    sp.add_argument("--workload", required=True)
    sp.add_argument("--load-trace", help="scripted DB load; enables adaptive switching")
    sp.add_argument("--think-ms", type=float, default=0.0, help="virtual pause between calls")
    sp.add_argument("--window-ms", type=float, default=1000.0, help="share report window")
    sp.add_argument("--repeat", type=int, default=1, help="run the call list this many times")
    sp.add_argument("--trace-out")
    sp.add_argument("--db-out", help="write the final tables as JSON")
    sp.add_argument("--event-log")
    sp.add_argument("--report-csv")
    sp.add_argument("--check-freshness", action="store_true")

    sp = add("serve", cmd_serve, "run the DB host on a TCP port")
    sp.add_argument("bundles", nargs="+")
    sp.add_argument("--workload", required=True, help="initial tables")

    sp = add("bench", cmd_bench, "profile, partition and run corpus benchmarks")
    sp.add_argument("benchmarks", nargs="*")
    sp.add_argument("--seeds", type=int, default=3)
    sp.add_argument("--csv")

    sp = add("dump-graph", cmd_dump_graph, "print the weighted partition graph")
    sp.add_argument("program")
    sp.add_argument("--profile")
    sp.add_argument("--workload")
    sp.add_argument("-o", "--out")

    sp = add("dump-blocks", cmd_dump_blocks, "print the execution blocks of a bundle")
    sp.add_argument("bundle")
    sp.add_argument("-o", "--out")

    sp = add("reference", cmd_reference, "run a workload on the single-host interpreter")
    sp.add_argument("program")
    sp.add_argument("--workload", required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "repeat", 1) < 1 or getattr(args, "seeds", 1) < 1:
            raise CliError("usage", "--repeat and --seeds must be >= 1")
        try:
            cfg = _config(args)
        except (ValueError, OSError) as e:
            raise CliError("usage", f"config: {e}") from None
        return args.fn(args, cfg)
    except CliError as e:
        return _fail(e.code, str(e))
    except FileNotFoundError as e:
        return _fail("usage", f"no such file: {e.filename or e}")
    except DslError as e:
        return _fail("dsl", str(e))
    except (InterpError, EvalError) as e:
        return _fail("interp", str(e))
    except InfeasibleError as e:
        return _fail("infeasible", str(e))
    except (SessionError, WireError) as e:
        return _fail("runtime", str(e))
    except (ValueError, OSError) as e:
        return _fail("usage", str(e))
    except Exception as e:  # noqa: BLE001
        return _fail("internal", f"{type(e).__name__}: {e}")


def _fail(code: str, message: str) -> int:
    one_line = " ".join(str(message).split())
    print(f"error: {code}: {one_line}", file=sys.stderr)
    return EXIT_CODES[code]


if __name__ == "__main__":
    sys.exit(main())
