"""
Scenario metrics and reports.

average_revenue, fairness and payment_ratio are the three evaluation
quantities of the market (vendor revenue, share of vendors that ever won,
paid price over the highest offer); service_rate adds the buyer side.
emit_report writes the per-auction, per-vendor and summary CSVs and the
plain-text tables aggregated over seeds.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from data import update_data, update_text
from errors import NoAuctionsError

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ["strategy", "n_vendors", "seed", "avg_revenue", "fairness", "payment_ratio",
                   "service_rate", "auctions", "rejects", "fallbacks"]
AUCTION_COLUMNS = ["auction_seq", "episode", "time", "request_id", "vendor_id", "sp", "pr", "q",
                   "won", "payment", "max_sp", "fallback"]
VENDOR_COLUMNS = ["vendor_id", "wins", "revenue", "win_share"]
TABLES = [("avg_revenue", "Revenue of vendors"), ("fairness", "Fairness"), ("payment_ratio", "Payment ratio")]


@dataclass
class ScenarioStats:
    strategy: str
    n_vendors: int
    seed: int
    episodes: int = 0
    payments: dict = field(default_factory=dict)  # vendor_id -> payments in auction order
    wins: dict = field(default_factory=dict)
    auctions: list = field(default_factory=list)  # AuctionRecords with a winner
    auctions_held: int = 0
    rejects: int = 0
    arrivals: int = 0
    allocated: int = 0
    fallbacks: int = 0

    @property
    def cell(self):
        return f"{self.strategy}_v{self.n_vendors}_s{self.seed}"

    @property
    def revenue(self):
        return {vendor_id: math.fsum(paid) for vendor_id, paid in self.payments.items()}

    @property
    def total_revenue(self):
        # Una sola suma corregida sobre todos los pagos
        return math.fsum(itertools.chain.from_iterable(self.payments.values()))


def average_revenue(stats: ScenarioStats) -> float:
    if not stats.payments:
        raise ValueError("average revenue needs at least one vendor")
    return stats.total_revenue / len(stats.payments)


def fairness(stats: ScenarioStats) -> float:
    """Share of vendors that won at least one auction."""
    if not stats.wins:
        raise ValueError("fairness needs at least one vendor")
    return sum(1 for w in stats.wins.values() if w >= 1) / len(stats.wins)


def payment_ratio(stats: ScenarioStats) -> float:
    if not stats.auctions:
        raise NoAuctionsError(f"{stats.cell}: no completed auctions")
    ratios = [r.payment / r.max_sp for r in stats.auctions]
    return math.fsum(ratios) / len(ratios)


def service_rate(stats: ScenarioStats) -> float:
    return stats.allocated / stats.arrivals if stats.arrivals else 0.0


def summary_row(stats: ScenarioStats) -> dict:
    return {
        "strategy": stats.strategy,
        "n_vendors": stats.n_vendors,
        "seed": stats.seed,
        "avg_revenue": average_revenue(stats),
        "fairness": fairness(stats),
        "payment_ratio": payment_ratio(stats) if stats.auctions else float("nan"),
        "service_rate": service_rate(stats),
        "auctions": stats.auctions_held,
        "rejects": stats.rejects,
        "fallbacks": stats.fallbacks,
    }


def summary_frame(stats_list) -> pd.DataFrame:
    return pd.DataFrame([summary_row(s) for s in stats_list], columns=SUMMARY_COLUMNS)


def auction_frame(stats: ScenarioStats) -> pd.DataFrame:
    # Una fila por participante y subasta
    rows = []
    for record in stats.auctions:
        max_sp = record.max_sp
        for vendor_id in record.participants:
            snap = record.snapshots[vendor_id]
            rows.append({
                "auction_seq": record.auction_seq,
                "episode": record.episode,
                "time": record.time,
                "request_id": record.request_id,
                "vendor_id": vendor_id,
                "sp": snap.sp,
                "pr": snap.pr,
                "q": snap.q,
                "won": int(vendor_id == record.winner),
                "payment": record.payment,
                "max_sp": max_sp,
                "fallback": int(record.fallback),
            })
    return pd.DataFrame(rows, columns=AUCTION_COLUMNS)


def vendor_frame(stats: ScenarioStats) -> pd.DataFrame:
    total = sum(stats.wins.values())
    rows = [{
        "vendor_id": vendor_id,
        "wins": wins,
        "revenue": stats.revenue.get(vendor_id, 0.0),
        "win_share": wins / total if total else 0.0,
    } for vendor_id, wins in sorted(stats.wins.items())]
    return pd.DataFrame(rows, columns=VENDOR_COLUMNS)


def tables_text(summary: pd.DataFrame) -> str:
    """Vendor count by strategy tables, one per metric, averaged over seeds."""
    blocks = []
    for column, title in TABLES:
        blocks.append(title)
        if summary.empty:
            blocks.append("(no runs)")
        else:
            table = summary.pivot_table(index="n_vendors", columns="strategy", values=column, aggfunc="mean")
            table.columns.name = None
            table.index.name = "# vendors"
            blocks.append(table.to_string(float_format=lambda v: f"{v:.6g}"))
        blocks.append("")
    return "\n".join(blocks)


def emit_report(stats_list, out_dir, format="both"):
    """Write reports for a list of ScenarioStats; returns the paths written."""
    out_dir = Path(out_dir)
    paths = {}
    summary = summary_frame(stats_list)
    if format in ("csv", "both"):
        for stats in stats_list:
            paths[f"auctions_{stats.cell}"] = out_dir / f"auctions_{stats.cell}.csv"
            update_data(auction_frame(stats), paths[f"auctions_{stats.cell}"])
            paths[f"vendors_{stats.cell}"] = out_dir / f"vendors_{stats.cell}.csv"
            update_data(vendor_frame(stats), paths[f"vendors_{stats.cell}"])
        paths["summary"] = out_dir / "summary.csv"
        update_data(summary, paths["summary"])
    if format in ("text", "both"):
        paths["tables"] = out_dir / "tables.txt"
        update_text(tables_text(summary), paths["tables"])
    logger.info("wrote %d report files to %s", len(paths), out_dir)
    return paths
