"""
Command-line entry point.

    python cli.py run --config data/default.cfg --strategy mpra --seed 7
    python cli.py sweep --vendors 4,6,8,12 --strategies mpra,cdara,icaa --seeds 1..20 --out results

Exit codes: 0 success, 1 validation error, 2 runtime error.
"""
import argparse
import itertools
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from config import load_config
from data import update_manifest
from engine import run_scenario
from errors import ConfigError
from metrics import emit_report, summary_frame, tables_text
from strategies import StrategyKind
from utils import parse_int_list

logger = logging.getLogger(__name__)

DEFAULT_VENDORS = [4, 6, 8, 12]


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError("args", message)


@dataclass
class RunSpec:
    command: str
    config_path: Optional[str] = None
    overrides: dict = field(default_factory=dict)
    out_dir: str = "results"
    seeds: list = field(default_factory=list)
    vendors: list = field(default_factory=list)
    strategies: list = field(default_factory=list)
    format: str = "both"
    workers: int = 1

    def cells(self):
        """One validated ScenarioConfig per (strategy, vendors, seed), in report order."""
        configs = []
        for strategy, n_vendors, seed in itertools.product(self.strategies, self.vendors, self.seeds):
            overrides = {**self.overrides, "strategy": strategy, "n_vendors": n_vendors, "seed": seed}
            configs.append(load_config(self.config_path, overrides))
        return configs


def build_parser():
    parser = ArgumentParser(prog="cli.py", description="Reverse-auction market simulator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    for name, help_text in (("run", "run a single scenario"), ("sweep", "run strategy x vendors x seed cells")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="scenario config file (INI)")
        p.add_argument("--strategy", "--strategies", dest="strategies", help="mpra|cdara|icaa, comma separated")
        p.add_argument("--vendors", help="vendor count(s), e.g. 12 or 4,6,8,12")
        p.add_argument("--seed", "--seeds", dest="seeds", help="seed(s), e.g. 7, 1,2,3 or 1..20")
        p.add_argument("--episodes", help="episodes per scenario")
        p.add_argument("--out", default="results", help="output directory")
        p.add_argument("--format", choices=["csv", "text", "both"], default="both")
        p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def _int_arg(value, name):
    try:
        return int(value)
    except ValueError:
        raise ConfigError(name, f"expected an integer, got {value!r}") from None


def parse_and_validate(args) -> RunSpec:
    ns = build_parser().parse_args(args)
    base = load_config(ns.config)

    def as_list(text, name):
        try:
            return parse_int_list(text, name)
        except ValueError as e:
            raise ConfigError(name, str(e)) from None

    if ns.strategies:
        try:
            strategies = [StrategyKind.parse(s).value for s in ns.strategies.split(",") if s.strip()]
        except ValueError as e:
            raise ConfigError("strategy", str(e)) from None
    elif ns.command == "sweep":
        strategies = [k.value for k in StrategyKind]
    else:
        strategies = [base.strategy.value]

    if ns.vendors:
        vendors = as_list(ns.vendors, "n_vendors")
    elif ns.command == "sweep":
        vendors = list(DEFAULT_VENDORS)
    else:
        vendors = [base.n_vendors]

    seeds = as_list(ns.seeds, "seed") if ns.seeds else [base.seed]
    overrides = {}
    if ns.episodes is not None:
        overrides["episodes"] = _int_arg(ns.episodes, "episodes")
    if ns.workers < 1:
        raise ConfigError("workers", "must be >= 1")

    spec = RunSpec(ns.command, ns.config, overrides, ns.out, seeds, vendors, strategies, ns.format, ns.workers)
    # Validar todas las celdas antes de ejecutar nada
    spec.cells()
    return spec


def _run_cell(config):
    started = time.perf_counter()
    stats = run_scenario(config)
    logger.info("%s done in %.1fs (%d auctions)", config.cell_name(), time.perf_counter() - started, stats.auctions_held)
    return stats


def execute(spec: RunSpec) -> int:
    configs = spec.cells()
    logger.info("%s: %d cells -> %s", spec.command, len(configs), spec.out_dir)
    results, failed, status = [], None, 0
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            futures = [pool.submit(_run_cell, c) for c in configs]
            for config, future in zip(configs, futures):
                try:
                    results.append(future.result())
                except Exception:
                    logger.exception("cell %s failed", config.cell_name())
                    failed, status = config.cell_name(), 2
                    for pending in futures:
                        pending.cancel()
                    break
    else:
        for config in configs:
            try:
                results.append(_run_cell(config))
            except Exception:
                logger.exception("cell %s failed", config.cell_name())
                failed, status = config.cell_name(), 2
                break

    try:
        emit_report(results, spec.out_dir, spec.format)
        update_manifest(spec.out_dir, [s.cell for s in results], failed)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(tables_text(summary_frame(results)))
    return status


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    logging.basicConfig(level=logging.DEBUG if ("-v" in argv or "--verbose" in argv) else logging.INFO,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        spec = parse_and_validate(argv)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return execute(spec)


if __name__ == "__main__":
    sys.exit(main())
