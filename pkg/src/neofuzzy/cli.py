"""
Command line interface.

    neofuzzy generate --length 2500 --out synthetic.csv
    neofuzzy train [--config run.json] [--override alpha=0.9] --out-model m.json --out-report r.json
    neofuzzy predict --model m.json --data series.csv --out predictions.csv
    neofuzzy eval --model m.json --data series.csv --train-count 2000

Exit codes: 0 success, 2 configuration error, 3 data error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from .cascade import CascadeModel
from .data import gen_synthetic, load_csv
from .errors import DataError, InvalidArgument, SnapshotError
from .pipeline import RunConfig, evaluate, load_series, predict_rows, train

log = logging.getLogger("neofuzzy")

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_IO = 0, 2, 3, 4


def _override(cfg: dict, item: str):
    key, sep, value = item.partition("=")
    if not sep or not key:
        raise InvalidArgument(f"override must look like key=value, got {item!r}")
    try:
        cfg[key.strip()] = json.loads(value)
    except json.JSONDecodeError:
        cfg[key.strip()] = value


def cmd_generate(args):
    series = gen_synthetic(args.length)
    with open(args.out, "w", newline="", encoding="utf-8") as f:
        f.writelines(f"{v!r}\n" for v in series.values)
    log.info("wrote %d points to %s", len(series), args.out)


def cmd_train(args):
    base = RunConfig.from_file(args.config).to_dict() if args.config else RunConfig().to_dict()
    for item in args.override:
        _override(base, item)
    config = RunConfig.from_dict(base).validate()
    series = load_series(config)
    model, report = train(config, series)
    # nothing is written until training succeeded
    model.save(args.out_model)
    with open(args.out_report, "w", encoding="utf-8") as f:
        f.write(report.to_json())
    print(report.table())


def cmd_predict(args):
    model = CascadeModel.load(args.model)
    series = load_csv(args.data, _column(args.column))
    rows = predict_rows(model, series)
    with open(args.out, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["index", "actual", "predicted", "residual", "predicted_raw"])
        for index, actual, pred, resid, raw in rows:
            w.writerow([index, repr(actual), repr(pred), repr(resid), repr(raw)])


def cmd_eval(args):
    model = CascadeModel.load(args.model)
    series = load_csv(args.data, _column(args.column))
    report = evaluate(model, series, args.train_count)
    if args.out_report:
        with open(args.out_report, "w", encoding="utf-8") as f:
            f.write(report.to_json())
    print(report.to_json(), end="") if args.json else print(report.table())


def _column(value: str):
    return int(value) if value.lstrip("-").isdigit() else value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="neofuzzy", description=__doc__.split("\n")[1])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write the synthetic benchmark series as CSV")
    p.add_argument("--length", type=int, default=2500)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("train", help="single online pass, then frozen evaluation")
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--out-model", required=True)
    p.add_argument("--out-report", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="one-step-ahead predictions for a series")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--column", default="0", help="column index or header name")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("eval", help="train/test RMSE of a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--train-count", type=int, required=True)
    p.add_argument("--column", default="0")
    p.add_argument("--out-report")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        if args.command == "generate" and args.length < 1:
            raise InvalidArgument("--length must be >= 1")
        args.func(args)
    except (DataError, SnapshotError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InvalidArgument as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
