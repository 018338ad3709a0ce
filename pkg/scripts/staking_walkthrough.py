#!/usr/bin/env python3
"""Quarter-by-quarter arithmetic of the escalation staking plan.

Walks the win-in-quarter scenarios for the scheduled quarters, the
no-win horizon, and the budget needed to survive progressively longer
droughts under the min-recover extension rule.
"""

import argparse

from cdmlotto.strategy import (
    StrategyConfig,
    format_cents,
    render_ledger,
    required_budget,
    simulate_stream,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quarter-days", type=int, default=60)
    parser.add_argument("--payout", type=float, default=500.0)
    parser.add_argument("--ticket-price", type=float, default=1.0)
    args = parser.parse_args()

    config = StrategyConfig(
        ticket_price_cents=round(args.ticket_price * 100),
        payout_per_ticket_cents=round(args.payout * 100),
        quarter_days=args.quarter_days,
    )
    draws_per_quarter = config.draws_per_day * config.quarter_days

    for quarter in range(1, len(config.schedule) + 1):
        offset = quarter * draws_per_quarter - 1  # last draw of the quarter
        ledger = simulate_stream(offset, config)
        print(f"win in quarter {quarter}:")
        for line in render_ledger(ledger):
            print(line)
        print()

    horizon = len(config.schedule) * config.quarter_days
    open_stream = simulate_stream(None, config, horizon_days=horizon)
    print(f"no win through {horizon} days:")
    for line in render_ledger(open_stream):
        print(line)
    print()

    print("budget needed if the win only arrives after a gap of:")
    for gap in (120, 480, 960, 1410, 2000):
        print(f"  {gap:>5} draws -> {format_cents(required_budget(gap, config))}")


if __name__ == "__main__":
    main()
