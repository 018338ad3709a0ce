#!/usr/bin/env python3
"""Gap statistics and staking replay for a pick-3 hit sequence.

Defaults to the reference sequence of ten jackpot hits; pass --indices to
analyze another one.  Prints the gaps, the short/long stretch labels, and
the quarterly staking ledger each gap implies.
"""

import argparse

from cdmlotto.backtest import ALTERNATION_NOTE, classify_stretches, gap_stats
from cdmlotto.strategy import (
    StrategyConfig,
    format_cents,
    render_ledger,
    required_budget,
    simulate_streams,
)

REFERENCE_HITS = "0,44,659,1357,1369,1915,2039,3449,3685,4285"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--indices", default=REFERENCE_HITS,
                        help="comma-separated hit draw indices (default: the reference sequence)")
    parser.add_argument("--cutoff", type=int, default=500, help="short/long stretch cutoff in draws")
    args = parser.parse_args()

    indices = [int(tok) for tok in args.indices.replace(",", " ").split()]
    stats = gap_stats(indices)
    print(f"hits: {indices}")
    print(f"gaps: {list(stats.gaps)}")
    if stats.average is None:
        print("fewer than two hits, no gap statistics")
        return
    print(f"average gap: {stats.average:.3f} draws (rounded {round(stats.average)}), max {stats.max_gap}")

    summary = classify_stretches(stats.gaps, cutoff=args.cutoff)
    print(f"stretch labels (cutoff {args.cutoff}): {' '.join(summary.labels)}")
    if summary.alternation_fraction is not None:
        print(f"alternation fraction: {summary.alternation_fraction:.4f}")
        print(f"note: {ALTERNATION_NOTE}")

    config = StrategyConfig()
    streams = simulate_streams(stats.gaps, config)
    print()
    for i, ledger in enumerate(streams.streams):
        for line in render_ledger(ledger, title=f"stream {i + 1}: gap {stats.gaps[i]} draws"):
            print(line)
        print()
    print(
        f"aggregate: spend {format_cents(streams.total_spend_cents)},"
        f" payout {format_cents(streams.total_payout_cents)},"
        f" profit {format_cents(streams.profit_cents)},"
        f" max drawdown {format_cents(streams.max_drawdown_cents)}"
    )
    print(f"budget to survive the longest gap ({stats.max_gap} draws): "
          f"{format_cents(required_budget(stats.max_gap, config))}")


if __name__ == "__main__":
    main()
