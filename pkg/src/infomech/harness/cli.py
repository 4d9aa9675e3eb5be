"""Command-line entry points.

Subcommands: ingest, pairs, score, transform, tournament, limits, report.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..adversary import (
    CollapseParams,
    indistinguishability_experiment,
    uniform_diagonal_joint,
)
from ..mechanism import build_pairs
from ..tamper import DEFAULT_MARKER, DEFAULT_PAD, TransformSpec, apply_transform
from .ingest import Dataset, ingest, save_jsonl
from .tournament import ALL_MECHANISMS, TournamentConfig, run_tournament


def _cmd_ingest(args: argparse.Namespace) -> int:
    dataset = ingest(args.dataset)
    print(f"records: {len(dataset.records)}")
    print(f"items: {len(dataset.item_ids)}")
    print(f"agents: {len(dataset.agent_ids)}")
    print(f"items with source: {len(dataset.sources)}")
    return 0


def _cmd_pairs(args: argparse.Namespace) -> int:
    dataset = ingest(args.dataset)
    pairs = build_pairs(dataset.records, args.negatives, args.seed)
    lines = [
        json.dumps(
            {
                "pair_id": p.pair_id,
                "kind": p.kind,
                "left": {"item_id": p.left.item_id, "agent_id": p.left.agent_id},
                "right": {"item_id": p.right.item_id, "agent_id": p.right.agent_id},
            },
            sort_keys=True,
        )
        for p in pairs
    ]
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {len(pairs)} pairs to {args.out}")
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    cfg = TournamentConfig(
        dataset_path=args.dataset,
        output_dir=args.out,
        seed=args.seed,
        mechanisms=(args.mechanism,),
        negatives_per_positive=args.negatives,
        bootstrap_iterations=args.bootstrap,
    )
    report = run_tournament(cfg)
    mech = report.mechanisms[args.mechanism]
    print(f"mechanism: {args.mechanism}")
    for agent in report.agents:
        print(f"  payment[{agent}] = {mech.payments[agent]:.6f}")
    print(f"reports written to {args.out}")
    return 0


def _cmd_transform(args: argparse.Namespace) -> int:
    spec = TransformSpec(kind=args.kind, marker=args.marker, pad=args.pad)
    dataset = ingest(getattr(args, "in"))
    out_records = [
        type(rec)(
            item_id=rec.item_id,
            agent_id=rec.agent_id,
            category=rec.category,
            text=apply_transform(spec, rec.text),
        )
        for rec in dataset.records
    ]
    save_jsonl(Dataset(records=out_records, sources=dataset.sources), args.out)
    print(f"wrote {len(out_records)} transformed records to {args.out}")
    return 0


def _cmd_tournament(args: argparse.Namespace) -> int:
    cfg = TournamentConfig.from_json(args.config)
    report = run_tournament(cfg)
    for mech in sorted(report.mechanisms):
        mr = report.mechanisms[mech]
        macro = "n/a" if mr.macro_auc is None else f"{mr.macro_auc:.4f}"
        d = "n/a" if mr.cohens_d is None else f"{mr.cohens_d:.4f}"
        print(f"{mech}: macro_auc={macro} cohens_d={d}")
    print(f"reports written to {cfg.output_dir}")
    return 0


def _cmd_limits(args: argparse.Namespace) -> int:
    params = CollapseParams(k=args.k, n=args.n, delta=args.delta)
    law = uniform_diagonal_joint(args.atoms)
    report = indistinguishability_experiment(law, params, args.trials, args.seed)
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote report to {args.out}")
    else:
        print(text)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    path = Path(args.dir) / "report.json"
    if not path.exists():
        print(f"no report.json under {args.dir}", file=sys.stderr)
        return 1
    obj = json.loads(path.read_text(encoding="utf-8"))
    print(f"items: {len(obj['items'])}  agents: {len(obj['agents'])}")
    print(f"pairs built: {obj['pairs_built']}")
    for mech, mr in sorted(obj["mechanisms"].items()):
        macro = mr["macro_auc"]
        d = mr["cohens_d"]
        print(
            f"{mech}: macro_auc="
            + ("n/a" if macro is None else f"{macro:.4f}")
            + " cohens_d="
            + ("n/a" if d is None else f"{d:.4f}")
            + f" excluded_items={len(mr['excluded_items'])}"
        )
    if obj["exclusions"]:
        print(f"exclusions: {len(obj['exclusions'])} (see excluded.log)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infomech",
        description="Information-theoretic peer evaluation tournaments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate a JSONL dataset")
    p.add_argument("dataset")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("pairs", help="build positive/negative pairs")
    p.add_argument("dataset")
    p.add_argument("--negatives", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="")
    p.set_defaults(func=_cmd_pairs)

    p = sub.add_parser("score", help="run one mechanism with the oracle backend")
    p.add_argument("dataset")
    p.add_argument("--mechanism", choices=ALL_MECHANISMS, required=True)
    p.add_argument("--negatives", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bootstrap", type=int, default=1000)
    p.add_argument("--out", default="out")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("transform", help="apply a tampering transform to a dataset")
    p.add_argument("--kind", required=True,
                   choices=("case_flip", "format_standardize", "pattern_inject", "constant_pad"))
    p.add_argument("--in", dest="in", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--marker", default=DEFAULT_MARKER)
    p.add_argument("--pad", default=DEFAULT_PAD)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("tournament", help="run the full tournament from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_tournament)

    p = sub.add_parser("limits", help="mode-collapse indistinguishability experiment")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--atoms", type=int, default=256)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="")
    p.set_defaults(func=_cmd_limits)

    p = sub.add_parser("report", help="summarize a completed tournament directory")
    p.add_argument("--dir", required=True)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
