import argparse
from typing import Any, TYPE_CHECKING

from loguru import logger

from .dynamics.cli import add_simulate_cli, cmd_simulate
from .gf2.cli import add_analyze_cli, cmd_analyze
from .schedulers.cli import add_construct_cli, cmd_construct
from .strategies.cli import add_game_cli, cmd_game
from .verify.cli import add_experiment_cli, add_verify_cli, cmd_experiment, cmd_verify

if TYPE_CHECKING:
    SubArgumentParser = argparse._SubParsersAction[argparse.ArgumentParser]
else:
    SubArgumentParser = Any


def main() -> int:
    ap = argparse.ArgumentParser(
        description="Pavlov dynamics on graphs: schedulers, stabilization and scheduler-luck games."
    )
    sub_ap = ap.add_subparsers(dest="cmd", required=True)
    add_simulate_cli(sub_ap)
    add_analyze_cli(sub_ap)
    add_construct_cli(sub_ap)
    add_experiment_cli(sub_ap)
    add_game_cli(sub_ap)
    add_verify_cli(sub_ap)

    args = ap.parse_args()

    try:
        if args.cmd == "simulate":
            return cmd_simulate(args)
        elif args.cmd == "analyze":
            return cmd_analyze(args)
        elif args.cmd == "construct":
            return cmd_construct(args)
        elif args.cmd == "experiment":
            return cmd_experiment(args)
        elif args.cmd == "game":
            return cmd_game(args)
        elif args.cmd == "verify":
            return cmd_verify(args)
        else:
            raise ValueError(f"Unknown command: {args.cmd}")
    except Exception as err:
        logger.error(f"{type(err).__name__}: {err}")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
