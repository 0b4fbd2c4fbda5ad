"""Command line entry points.

    gazelab run     --task T --policy P --episodes N --seed S --out LOG
    gazelab serve   --port P --config FILE [--fovea nIn:nOut] [--privileged]
    gazelab analyze psychometric --log L --param KEY --chance C --csv OUT
    gazelab analyze rt --log L --csv OUT

`run` prints a deterministic JSON summary (trial counts, accuracy, and
the sha256 over every observation byte) so reruns can be diffed.
"""

import argparse
import json
import sys
from dataclasses import replace

from .analysis import bin_accuracy, fit_psychometric, rt_by_set_size, write_curve_csv, write_rt_csv
from .config import EnvConfig, load_config, parse_fovea
from .env import Environment
from .errors import GazeLabError
from .policies import make_policy
from .runner import run_episodes
from .server import Server
from .triallog import TrialLogWriter, read_trial_log


def _base_config(args) -> EnvConfig:
    cfg = load_config(args.config) if args.config else EnvConfig()
    if getattr(args, "task", None):
        cfg = replace(cfg, task=args.task)
    if getattr(args, "privileged", False):
        cfg = replace(cfg, privileged_info=True)
    if getattr(args, "fovea", None):
        cfg = replace(cfg, fovea=parse_fovea(args.fovea))
    return cfg.validate()


def _cmd_run(args) -> int:
    cfg = _base_config(args)
    env = Environment(cfg)
    policy = make_policy(args.policy, env)
    writer = TrialLogWriter(args.out) if args.out else None
    try:
        records, summary = run_episodes(
            env,
            policy,
            n_episodes=args.episodes,
            seed=args.seed,
            writer=writer,
            max_trials=args.max_trials,
        )
    finally:
        if writer is not None:
            writer.close()
    out = summary.as_dict()
    out.update({"task": cfg.task, "policy": args.policy, "seed": args.seed})
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def _cmd_serve(args) -> int:
    cfg = _base_config(args)
    server = Server(
        cfg,
        host=args.host,
        port=args.port,
        privileged=args.privileged or None,
        fovea=parse_fovea(args.fovea) if args.fovea else None,
    )
    print(f"serving {cfg.task} on {server.host}:{server.port}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


def _cmd_analyze(args) -> int:
    records = read_trial_log(args.log)
    if args.what == "psychometric":
        tasks = sorted({r.task_name for r in records})
        if len(tasks) > 1:
            records = [r for r in records if r.task_name == tasks[0]]
            print(f"multiple tasks in log; analyzing {tasks[0]!r}", file=sys.stderr)
        curve = bin_accuracy(records, args.param, chance_level=args.chance)
        curve = fit_psychometric(curve)
        if args.csv:
            write_curve_csv(curve, args.csv)
        out = {
            "points": [[p.param, p.n_trials, p.n_correct] for p in curve.points],
            "mu": curve.mu,
            "slope": curve.slope,
            "threshold75": curve.threshold75,
            "converged": curve.converged,
        }
    else:
        regression = rt_by_set_size(records)
        if args.csv:
            write_rt_csv(regression, args.csv)
        out = {
            "slope": regression.slope,
            "intercept": regression.intercept,
            "r2": regression.r2,
            "medians": regression.medians,
        }
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gazelab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="drive a scripted policy and log trials")
    run.add_argument("--task", help="task name (overrides config file)")
    run.add_argument("--policy", default="random",
                     help="random | randomwalk | oracle | scanner | noisy:LEVEL:EASY:HARD")
    run.add_argument("--episodes", type=int, default=1)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", help="trial log path (ndjson)")
    run.add_argument("--config", help="YAML config file")
    run.add_argument("--privileged", action="store_true")
    run.add_argument("--fovea", help="renderLines:keptLines")
    run.add_argument("--max-trials", type=int, default=None)
    run.set_defaults(func=_cmd_run)

    serve = sub.add_parser("serve", help="serve sessions over TCP/WebSocket")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8765)
    serve.add_argument("--config", help="YAML config file")
    serve.add_argument("--task", help="task name (overrides config file)")
    serve.add_argument("--privileged", action="store_true")
    serve.add_argument("--fovea", help="renderLines:keptLines")
    serve.set_defaults(func=_cmd_serve)

    analyze = sub.add_parser("analyze", help="psychometric curves and RT regressions")
    analyze.add_argument("what", choices=("psychometric", "rt"))
    analyze.add_argument("--log", required=True)
    analyze.add_argument("--param", default="coherence", help="stimulusDescriptor key")
    analyze.add_argument("--chance", type=float, default=0.5)
    analyze.add_argument("--csv")
    analyze.set_defaults(func=_cmd_analyze)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GazeLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
