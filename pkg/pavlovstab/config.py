import os
import sys
import json
import argparse
import polars as pl

from dataclasses import dataclass, field
from enum import StrEnum
from importlib.metadata import PackageNotFoundError, version
from typing import Any, Iterable, TextIO

from .errors import GraphError
from .graph.constants import FIXED_FAMILIES, GraphFamily
from .graph.generators import generate
from .graph.graph import Graph
from .graph.io import read_graph

ENV_SEED = "PAVLOV_SEED"
DIST_NAME = "PavlovStab"
HEADER_PREFIX = "#"

try:
    VERSION = version(DIST_NAME)
except PackageNotFoundError:
    VERSION = "0.0.0"


class OutputFormat(StrEnum):
    Text = "text"
    Json = "json"
    Csv = "csv"


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a command was run with. Echoed into every output.
    """

    command: str
    graph: str | None
    scheduler: str | None
    seed: int
    output_format: OutputFormat
    options: dict[str, Any] = field(default_factory=dict)

    def echo(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "graph": self.graph,
            "scheduler": self.scheduler,
            "seed": self.seed,
            "format": str(self.output_format),
            **{k: v for k, v in sorted(self.options.items())},
        }


def add_graph_source_args(ap: argparse.ArgumentParser, *, required: bool = True) -> None:
    group = ap.add_mutually_exclusive_group(required=required)
    group.add_argument(
        "--family",
        help="Named graph family.",
        choices=[str(f) for f in GraphFamily],
        type=str,
    )
    group.add_argument(
        "--file",
        help="Graph file: header 'n m', then one 'u v' edge per line. '#' starts a comment.",
        type=str,
    )
    ap.add_argument(
        "--n",
        help="Family size. Leaf count for star, ignored by k3, k4 and k3-merge.",
        type=int,
        default=None,
    )


def add_common_args(
    ap: argparse.ArgumentParser, *, default_format: OutputFormat = OutputFormat.Text
) -> None:
    ap.add_argument(
        "-o",
        "--output",
        help="Output file.",
        default=sys.stdout,
        type=argparse.FileType("wt"),
    )
    ap.add_argument(
        "--format",
        help="Output format.",
        choices=[str(f) for f in OutputFormat],
        default=str(default_format),
    )
    ap.add_argument(
        "--seed",
        help=f"Master seed. Falls back to ${ENV_SEED}, then 0.",
        type=int,
        default=None,
    )
    ap.add_argument(
        "--threads",
        help="Worker threads. Results do not depend on it.",
        type=int,
        default=1,
    )


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(ENV_SEED)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise ValueError(f"{ENV_SEED} must be an integer, got {env!r}.") from None


def load_graph(family: str | None, n: int | None, file: str | None) -> Graph:
    if (family is None) == (file is None):
        raise GraphError("Give exactly one of --family or --file.")
    if file is not None:
        return read_graph(file)
    assert family is not None
    if GraphFamily(family) not in FIXED_FAMILIES and n is None:
        raise GraphError(f"--family {family} needs --n.")
    return generate(family, n)


def graph_source(family: str | None, n: int | None, file: str | None) -> str:
    if file is not None:
        return f"file:{file}"
    return f"{family}" if n is None else f"{family}:{n}"


def run_config(args: argparse.Namespace, *, scheduler: str | None = None, **options: Any) -> RunConfig:
    family, n, file = (getattr(args, a, None) for a in ("family", "n", "file"))
    has_graph = family is not None or file is not None
    return RunConfig(
        command=args.cmd,
        graph=graph_source(family, n, file) if has_graph else None,
        scheduler=scheduler,
        seed=resolve_seed(args.seed),
        output_format=OutputFormat(args.format),
        options=options,
    )


def _header(config: RunConfig) -> str:
    return (
        f"{HEADER_PREFIX} pavlovstab {VERSION} seed={config.seed} "
        f"config={json.dumps(config.echo(), sort_keys=True)}"
    )


def _text_value(value: Any) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def write_report(
    fh: TextIO,
    config: RunConfig,
    report: dict[str, Any],
    *,
    table: pl.DataFrame | None = None,
    lines: Iterable[str] = (),
) -> None:
    """
    Write a command result in the configured format.

    * text: a `#` header, then `key<TAB>value` rows, extra `lines`, and the table as TSV.
    * json: one document with `version`, `seed`, `config` and the report. The table goes under
      `table` as a list of rows.
    * csv: a `#` header and the table.
    """
    match config.output_format:
        case OutputFormat.Json:
            doc = {"version": VERSION, "seed": config.seed, "config": config.echo(), **report}
            if table is not None:
                doc["table"] = table.to_dicts()
            fh.write(json.dumps(doc, sort_keys=True, indent=2))
            fh.write("\n")
        case OutputFormat.Csv:
            if table is None:
                raise ValueError(f"{config.command} has no tabular output, use --format text or json.")
            fh.write(_header(config) + "\n")
            table.write_csv(fh)
        case OutputFormat.Text:
            fh.write(_header(config) + "\n")
            for key, value in report.items():
                fh.write(f"{key}\t{_text_value(value)}\n")
            for line in lines:
                fh.write(f"{line}\n")
            if table is not None:
                table.write_csv(fh, separator="\t")
        case _:
            raise ValueError(f"Unknown output format: {config.output_format}")
