"""beamctl command line: run experiments, sweep levels, serve the session API.

Configs are JSON files following the experiment schema, or one of the
bundled names (experiment1, experiment2).
"""

from __future__ import annotations

import argparse
import sys

from .errors import BeamctlError
from .experiments import load_experiment_config, run_experiment, run_sweep, write_exports, write_sweep


def _add_config_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True,
                        help="experiment config: JSON file path or bundled name "
                             "(experiment1, experiment2)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beamctl",
                                     description="Precise array response control toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a multi-step control experiment")
    _add_config_arg(run_p)
    run_p.add_argument("--out", required=True, help="output directory for exports")
    run_p.add_argument("--format", choices=["csv", "json", "both"], default="both")

    sweep_p = sub.add_parser("sweep", help="re-run an experiment over a level sweep")
    _add_config_arg(sweep_p)
    sweep_p.add_argument("--out", required=True, help="output directory for sweep.csv")

    serve_p = sub.add_parser("serve", help="host the HTTP session API and workbench")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--persist", default=None,
                         help="directory for write-through session records")

    val_p = sub.add_parser("validate", help="check a config without running it")
    _add_config_arg(val_p)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            config = load_experiment_config(args.config)
            record = run_experiment(config)
            formats = ("csv", "json") if args.format == "both" else (args.format,)
            written = write_exports(record, args.out, formats)
            for method in config.methods:
                last = record.steps[method][-1]
                print(f"{method}: {len(record.steps[method])} steps, "
                      f"final gain {last['gain_db']:.4f} dB")
            for path in written:
                print(f"wrote {path}")
        elif args.command == "sweep":
            config = load_experiment_config(args.config)
            rows = run_sweep(config)
            path = write_sweep(rows, args.out)
            print(f"{len(rows)} sweep rows")
            print(f"wrote {path}")
        elif args.command == "serve":
            import uvicorn

            from .service import create_app

            app = create_app(persist_dir=args.persist)
            uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        elif args.command == "validate":
            config = load_experiment_config(args.config)
            config.build_model()
            print(f"OK: {len(config.steps)} steps, methods {', '.join(config.methods)}")
    except BeamctlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
