"""Quarterly player-escalation staking simulation driven by hit gaps.

One stream plays a fixed combination every draw, escalating the number of
paying players quarter by quarter until the combination hits.  The first
quarters follow a fixed schedule (default 1, 2, 5, 12 players); beyond it
an explicit extension rule takes over, either the smallest player count
that recovers all losses while at least matching the previous quarter's
would-be profit (MIN_RECOVER) or a fixed multiplicative step
(FIXED_RATIO).

Two accounting modes are first class.  FULL_QUARTER charges every started
quarter in full, which reproduces round-number hand arithmetic exactly;
EXACT_DAY charges only elapsed days and therefore never spends more than
FULL_QUARTER, with equality exactly when the win lands on a quarter's
last day.

All money is integer cents so the accounting identity
``profit == payout - spend`` holds exactly, never approximately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence

__all__ = [
    "AccountingMode",
    "ExtensionKind",
    "ExtensionRule",
    "StrategyConfig",
    "CapExceededError",
    "QuarterRecord",
    "StreamLedger",
    "StreamsSummary",
    "quarter_net",
    "next_player_count",
    "simulate_stream",
    "simulate_streams",
    "required_budget",
    "format_cents",
    "ledger_to_dict",
    "render_ledger",
]


class AccountingMode(Enum):
    FULL_QUARTER = "paper"
    EXACT_DAY = "exact"


class ExtensionKind(Enum):
    MIN_RECOVER = "min-recover"
    FIXED_RATIO = "ratio"


class CapExceededError(RuntimeError):
    """No admissible player count exists below the configured cap."""


@dataclass(frozen=True)
class ExtensionRule:
    """How player counts continue past the fixed schedule."""

    kind: ExtensionKind = ExtensionKind.MIN_RECOVER
    ratio: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind is ExtensionKind.FIXED_RATIO:
            if self.ratio is None or self.ratio <= 0:
                raise ValueError("fixed-ratio extension needs a positive ratio")
        elif self.ratio is not None:
            raise ValueError("min-recover extension takes no ratio")

    @staticmethod
    def min_recover() -> "ExtensionRule":
        return ExtensionRule(ExtensionKind.MIN_RECOVER)

    @staticmethod
    def fixed_ratio(ratio) -> "ExtensionRule":
        # Ratios arrive as decimal text like "2.4"; going through str keeps
        # them exact (Fraction(2.4) would carry float noise and 2.4 * 5
        # would ceil to 13 instead of 12).
        frac = ratio if isinstance(ratio, Fraction) else Fraction(str(ratio))
        return ExtensionRule(ExtensionKind.FIXED_RATIO, frac)


@dataclass(frozen=True)
class StrategyConfig:
    ticket_price_cents: int = 100
    draws_per_day: int = 2
    payout_per_ticket_cents: int = 50_000
    quarter_days: int = 60
    schedule: tuple[int, ...] = (1, 2, 5, 12)
    extension: ExtensionRule = ExtensionRule()
    accounting: AccountingMode = AccountingMode.FULL_QUARTER
    player_cap: int = 1_000_000

    def __post_init__(self) -> None:
        for name in ("ticket_price_cents", "draws_per_day", "payout_per_ticket_cents", "quarter_days", "player_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        schedule = tuple(int(p) for p in self.schedule)
        if not schedule:
            raise ValueError("schedule must be nonempty")
        if any(p <= 0 for p in schedule):
            raise ValueError("player counts must be positive")
        if any(b < a for a, b in zip(schedule, schedule[1:])):
            raise ValueError("schedule must be nondecreasing")
        object.__setattr__(self, "schedule", schedule)

    @property
    def quarter_cost_per_player_cents(self) -> int:
        """One player's tickets for a full quarter."""
        return self.ticket_price_cents * self.draws_per_day * self.quarter_days


@dataclass(frozen=True)
class QuarterRecord:
    """One quarter of one stream.

    ``payout_cents`` is the payout actually received in the quarter (zero
    unless it is the winning quarter); ``net_cents`` is the net profit a
    win in this quarter yields given the recorded spend and the loss
    carried in.
    """

    quarter: int
    players: int
    spend_cents: int
    payout_cents: int
    net_cents: int
    cumulative_loss_cents: int


@dataclass(frozen=True)
class StreamLedger:
    quarters: tuple[QuarterRecord, ...]
    outcome: str  # "win" or "open"
    win_quarter: int | None
    win_day: int | None
    total_spend_cents: int
    total_payout_cents: int
    profit_cents: int

    @property
    def drawdown_cents(self) -> int:
        """Deepest out-of-pocket point: everything spent before the winning
        quarter, or all spend for a stream still open."""
        if self.win_quarter is None:
            return self.total_spend_cents
        return self.quarters[self.win_quarter - 1].cumulative_loss_cents


@dataclass(frozen=True)
class StreamsSummary:
    streams: tuple[StreamLedger, ...]
    total_spend_cents: int
    total_payout_cents: int
    profit_cents: int
    max_drawdown_cents: int


def next_player_count(
    cumulative_loss_cents: int,
    previous_net_cents: int,
    previous_players: int,
    config: StrategyConfig,
) -> int:
    """Player count for the next quarter under the configured extension rule.

    MIN_RECOVER returns the smallest count whose win recovers the losses
    so far and still nets at least the previous quarter's would-be profit;
    FIXED_RATIO scales the previous count and rounds up.  Counts above the
    cap raise :class:`CapExceededError`.
    """
    if config.extension.kind is ExtensionKind.FIXED_RATIO:
        players = max(1, math.ceil(config.extension.ratio * previous_players))
    else:
        margin = config.payout_per_ticket_cents - config.quarter_cost_per_player_cents
        if margin <= 0:
            raise CapExceededError("a quarter costs at least the payout per player; no count recovers losses")
        required = cumulative_loss_cents + previous_net_cents
        players = max(1, -(-required // margin))
    if players > config.player_cap:
        raise CapExceededError(f"required player count {players} exceeds the cap {config.player_cap}")
    return int(players)


def _quarter_rows(config: StrategyConfig, quarters: int) -> list[tuple[int, int, int, int, int]]:
    """(quarter, players, full spend, net if win, loss before) per quarter.

    Spends here are always full quarters; day-exact proration happens in
    :func:`simulate_stream` for the final quarter only, which is the only
    quarter that can end mid-way.
    """
    rows = []
    loss = 0
    previous_players = 0
    previous_net = 0
    for q in range(1, quarters + 1):
        if q <= len(config.schedule):
            players = config.schedule[q - 1]
        else:
            players = next_player_count(loss, previous_net, previous_players, config)
        spend = config.quarter_cost_per_player_cents * players
        net = config.payout_per_ticket_cents * players - spend - loss
        rows.append((q, players, spend, net, loss))
        previous_players, previous_net = players, net
        loss += spend
    return rows


def quarter_net(quarter_index: int, config: StrategyConfig) -> int:
    """Net profit in cents if the first win lands in the given 1-based quarter.

    Full-quarter accounting: the winning quarter's payout minus its spend
    minus everything spent in earlier quarters.
    """
    if quarter_index < 1:
        raise ValueError(f"quarter_index must be >= 1, got {quarter_index}")
    return _quarter_rows(config, quarter_index)[-1][3]


def simulate_stream(
    win_draw_offset: int | None,
    config: StrategyConfig,
    horizon_days: int | None = None,
) -> StreamLedger:
    """Play one stream until the combination hits or the horizon runs out.

    ``win_draw_offset`` is the 0-based index of the winning draw counted
    from the stream's first draw, or None for a stream that never hits;
    open streams run for ``horizon_days`` (default: the scheduled
    quarters).  FULL_QUARTER accounting charges the winning quarter in
    full; EXACT_DAY charges it only through the winning day.
    """
    if win_draw_offset is not None:
        if win_draw_offset < 0:
            raise ValueError(f"win_draw_offset must be >= 0, got {win_draw_offset}")
        win_day = win_draw_offset // config.draws_per_day
        win_quarter = win_day // config.quarter_days + 1
        quarters = win_quarter
    else:
        if horizon_days is None:
            horizon_days = len(config.schedule) * config.quarter_days
        if horizon_days < 1:
            raise ValueError(f"horizon_days must be positive, got {horizon_days}")
        win_day = None
        win_quarter = None
        quarters = -(-horizon_days // config.quarter_days)

    daily_cost = config.ticket_price_cents * config.draws_per_day
    records = []
    total_spend = 0
    for q, players, full_spend, _, loss in _quarter_rows(config, quarters):
        spend = full_spend
        if config.accounting is AccountingMode.EXACT_DAY:
            if win_quarter is not None and q == win_quarter:
                elapsed = win_day - (q - 1) * config.quarter_days + 1
                spend = daily_cost * elapsed * players
            elif win_quarter is None and q == quarters:
                elapsed = horizon_days - (q - 1) * config.quarter_days
                spend = daily_cost * elapsed * players
        payout = config.payout_per_ticket_cents * players if q == win_quarter else 0
        net = config.payout_per_ticket_cents * players - spend - loss
        records.append(QuarterRecord(q, players, spend, payout, net, loss))
        total_spend += spend

    total_payout = records[-1].payout_cents if win_quarter is not None else 0
    return StreamLedger(
        quarters=tuple(records),
        outcome="win" if win_quarter is not None else "open",
        win_quarter=win_quarter,
        win_day=win_day,
        total_spend_cents=total_spend,
        total_payout_cents=total_payout,
        profit_cents=total_payout - total_spend,
    )


def simulate_streams(gaps: Sequence[int], config: StrategyConfig) -> StreamsSummary:
    """One stream per hit gap; the winning draw is the gap-th draw of its stream."""
    ledgers = []
    for i, gap in enumerate(gaps):
        g = int(gap)
        if g < 1:
            raise ValueError(f"gap {i} must be a positive draw count, got {gap}")
        try:
            ledgers.append(simulate_stream(g - 1, config))
        except CapExceededError as exc:
            raise CapExceededError(f"stream {i} (gap {g} draws): {exc}") from exc
    total_spend = sum(ledger.total_spend_cents for ledger in ledgers)
    total_payout = sum(ledger.total_payout_cents for ledger in ledgers)
    return StreamsSummary(
        streams=tuple(ledgers),
        total_spend_cents=total_spend,
        total_payout_cents=total_payout,
        profit_cents=total_payout - total_spend,
        max_drawdown_cents=max((ledger.drawdown_cents for ledger in ledgers), default=0),
    )


def required_budget(max_gap_draws: int, config: StrategyConfig) -> int:
    """Cents needed when the win arrives only at the end of the longest gap.

    Always uses full-quarter accounting, whatever the configured mode.
    """
    if max_gap_draws < 1:
        raise ValueError(f"max_gap_draws must be positive, got {max_gap_draws}")
    full_quarter = replace(config, accounting=AccountingMode.FULL_QUARTER)
    return simulate_stream(max_gap_draws - 1, full_quarter).total_spend_cents


def format_cents(cents: int) -> str:
    sign = "-" if cents < 0 else ""
    magnitude = abs(cents)
    return f"{sign}${magnitude // 100}.{magnitude % 100:02d}"


def ledger_to_dict(ledger: StreamLedger) -> dict:
    return {
        "quarters": [
            {
                "quarter": r.quarter,
                "players": r.players,
                "spend_cents": r.spend_cents,
                "payout_cents": r.payout_cents,
                "net_cents": r.net_cents,
                "cumulative_loss_cents": r.cumulative_loss_cents,
            }
            for r in ledger.quarters
        ],
        "outcome": ledger.outcome,
        "win_quarter": ledger.win_quarter,
        "win_day": ledger.win_day,
        "total_spend_cents": ledger.total_spend_cents,
        "total_payout_cents": ledger.total_payout_cents,
        "profit_cents": ledger.profit_cents,
        "drawdown_cents": ledger.drawdown_cents,
    }


def render_ledger(ledger: StreamLedger, title: str = "") -> list[str]:
    """Plain-text table for one stream."""
    lines = []
    if title:
        lines.append(title)
    lines.append("  quarter  players       spend      payout         net  loss_before")
    for r in ledger.quarters:
        lines.append(
            f"  {r.quarter:7d}  {r.players:7d}  {format_cents(r.spend_cents):>10}"
            f"  {format_cents(r.payout_cents):>10}  {format_cents(r.net_cents):>10}"
            f"  {format_cents(r.cumulative_loss_cents):>11}"
        )
    if ledger.outcome == "win":
        lines.append(f"  outcome: win on day {ledger.win_day} (quarter {ledger.win_quarter})")
    else:
        lines.append("  outcome: open (no win within the horizon)")
    lines.append(
        f"  totals: spend {format_cents(ledger.total_spend_cents)},"
        f" payout {format_cents(ledger.total_payout_cents)},"
        f" profit {format_cents(ledger.profit_cents)}"
    )
    return lines
