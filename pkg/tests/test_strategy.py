"""Staking simulator tests: the quarterly escalation arithmetic in exact
cents, extension rules, accounting modes, and the ledger identities."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdmlotto.strategy import (
    AccountingMode,
    CapExceededError,
    ExtensionRule,
    StrategyConfig,
    ledger_to_dict,
    next_player_count,
    quarter_net,
    render_ledger,
    required_budget,
    simulate_stream,
    simulate_streams,
)

DEFAULTS = StrategyConfig()
REFERENCE_GAPS = (44, 615, 698, 12, 546, 124, 1410, 236, 600)


class TestQuarterNet:
    @pytest.mark.parametrize("quarter,expected_dollars", [
        (1, 380), (2, 640), (3, 1540), (4, 3600),
    ])
    def test_scheduled_quarters(self, quarter, expected_dollars):
        assert quarter_net(quarter, DEFAULTS) == expected_dollars * 100

    def test_rejects_nonpositive_quarter(self):
        with pytest.raises(ValueError):
            quarter_net(0, DEFAULTS)


class TestNextPlayerCount:
    def test_min_recover_solves_the_inequality(self):
        # 500p - 120p - 960 >= 1540 forces p >= 6.58, so 7 players.
        assert next_player_count(96_000, 154_000, 12, DEFAULTS) == 7

    def test_first_quarter_needs_one_player(self):
        assert next_player_count(0, 0, 0, DEFAULTS) == 1

    def test_fixed_ratio_rounds_up_exactly(self):
        config = StrategyConfig(extension=ExtensionRule.fixed_ratio("2.4"))
        assert next_player_count(0, 0, 5, config) == 12

    def test_fixed_ratio_with_fractional_step(self):
        config = StrategyConfig(extension=ExtensionRule.fixed_ratio("1.5"))
        assert next_player_count(0, 0, 5, config) == 8

    def test_unwinnable_margin_exceeds_cap(self):
        # A quarter costs $120 per player; a $100 payout can never recover.
        config = StrategyConfig(payout_per_ticket_cents=10_000)
        with pytest.raises(CapExceededError):
            next_player_count(1, 0, 1, config)

    def test_cap_enforced(self):
        config = StrategyConfig(player_cap=5)
        with pytest.raises(CapExceededError):
            next_player_count(10_000_000, 0, 5, config)


class TestSimulateStream:
    def test_first_quarter_win(self):
        ledger = simulate_stream(118, DEFAULTS)  # day 59, still quarter 1
        assert ledger.win_quarter == 1
        assert ledger.profit_cents == 38_000

    def test_fourth_quarter_win_totals(self):
        ledger = simulate_stream(479, DEFAULTS)  # day 239, quarter 4
        assert ledger.total_spend_cents == 240_000
        assert ledger.total_payout_cents == 600_000
        assert ledger.profit_cents == 360_000

    def test_open_stream_spends_the_full_schedule(self):
        ledger = simulate_stream(None, DEFAULTS, horizon_days=240)
        assert ledger.outcome == "open"
        assert ledger.total_spend_cents == 240_000
        assert ledger.total_payout_cents == 0
        assert ledger.profit_cents == -240_000

    def test_scheduled_quarter_records(self):
        """(players, spend, win payout, net) per quarter, exact in cents."""
        ledger = simulate_stream(479, DEFAULTS)
        rows = [
            (r.players, r.spend_cents, DEFAULTS.payout_per_ticket_cents * r.players, r.net_cents)
            for r in ledger.quarters
        ]
        assert rows == [
            (1, 12_000, 50_000, 38_000),
            (2, 24_000, 100_000, 64_000),
            (5, 60_000, 250_000, 154_000),
            (12, 144_000, 600_000, 360_000),
        ]
        assert [r.cumulative_loss_cents for r in ledger.quarters] == [0, 12_000, 36_000, 96_000]

    def test_only_winning_quarter_collects_payout(self):
        ledger = simulate_stream(479, DEFAULTS)
        assert [r.payout_cents for r in ledger.quarters] == [0, 0, 0, 600_000]

    def test_extension_beyond_schedule(self):
        ledger = simulate_stream(1409, DEFAULTS)  # 1410-draw gap, day 704
        assert ledger.win_quarter == 12
        assert len(ledger.quarters) == 12
        assert [(r.players, r.spend_cents, r.net_cents) for r in ledger.quarters[:4]] == [
            (1, 12_000, 38_000), (2, 24_000, 64_000), (5, 60_000, 154_000), (12, 144_000, 360_000),
        ]
        # Min-recover keeps every later quarter's would-be net at least the
        # previous one's.
        nets = [r.net_cents for r in ledger.quarters]
        assert all(b >= a for a, b in zip(nets[3:], nets[4:]))
        assert ledger.drawdown_cents == ledger.quarters[-1].cumulative_loss_cents

    def test_negative_offset_rejected(self):
        with pytest.raises(ValueError):
            simulate_stream(-1, DEFAULTS)

    def test_exact_day_charges_elapsed_days_only(self):
        exact = StrategyConfig(accounting=AccountingMode.EXACT_DAY)
        ledger = simulate_stream(44, exact)  # day 22 of quarter 1
        assert ledger.total_spend_cents == 23 * 2 * 100
        assert ledger.profit_cents == 50_000 - 4_600

    def test_exact_day_equals_full_quarter_on_the_last_day(self):
        exact = StrategyConfig(accounting=AccountingMode.EXACT_DAY)
        last_day_offset = 60 * 2 * 2 - 1  # final draw of quarter 2
        assert (
            simulate_stream(last_day_offset, exact).total_spend_cents
            == simulate_stream(last_day_offset, DEFAULTS).total_spend_cents
        )

    @given(st.integers(0, 3000))
    def test_exact_day_never_spends_more(self, offset):
        exact = StrategyConfig(accounting=AccountingMode.EXACT_DAY)
        spend_exact = simulate_stream(offset, exact).total_spend_cents
        spend_full = simulate_stream(offset, DEFAULTS).total_spend_cents
        assert spend_exact <= spend_full
        day = offset // DEFAULTS.draws_per_day
        if (day + 1) % DEFAULTS.quarter_days == 0:
            assert spend_exact == spend_full
        else:
            assert spend_exact < spend_full

    @given(st.integers(0, 5000))
    def test_accounting_identity(self, offset):
        for mode in AccountingMode:
            ledger = simulate_stream(offset, StrategyConfig(accounting=mode))
            assert ledger.profit_cents == ledger.total_payout_cents - ledger.total_spend_cents
            assert ledger.total_spend_cents == sum(r.spend_cents for r in ledger.quarters)
            assert ledger.total_payout_cents == sum(r.payout_cents for r in ledger.quarters)


class TestSimulateStreams:
    def test_reference_gap_sequence(self):
        summary = simulate_streams(REFERENCE_GAPS, DEFAULTS)
        assert len(summary.streams) == 9
        first = summary.streams[0]  # gap 44 -> day 21 -> quarter 1
        assert first.win_quarter == 1 and first.profit_cents == 38_000
        assert summary.profit_cents == summary.total_payout_cents - summary.total_spend_cents
        longest = summary.streams[6]  # gap 1410
        assert summary.max_drawdown_cents == longest.drawdown_cents

    def test_empty_gaps_empty_aggregate(self):
        summary = simulate_streams([], DEFAULTS)
        assert summary.streams == ()
        assert summary.total_spend_cents == 0 and summary.max_drawdown_cents == 0

    def test_nonpositive_gap_rejected(self):
        with pytest.raises(ValueError):
            simulate_streams([44, 0], DEFAULTS)

    def test_cap_error_names_the_stream(self):
        config = StrategyConfig(player_cap=10)
        with pytest.raises(CapExceededError, match="stream 1"):
            simulate_streams([44, 100_000], config)


class TestRequiredBudget:
    def test_four_quarter_gap(self):
        assert required_budget(480, DEFAULTS) == 240_000

    def test_single_quarter_gap(self):
        assert required_budget(120, DEFAULTS) == 12_000

    def test_longest_reference_gap_is_reported_not_asserted(self):
        budget = required_budget(1410, DEFAULTS)
        assert budget == simulate_stream(1409, DEFAULTS).total_spend_cents
        assert budget > 240_000

    def test_uses_full_quarters_even_in_exact_mode(self):
        exact = StrategyConfig(accounting=AccountingMode.EXACT_DAY)
        assert required_budget(130, exact) == required_budget(130, DEFAULTS)

    @given(st.integers(1, 2000), st.integers(0, 500))
    def test_nondecreasing_in_the_gap(self, gap, extra):
        assert required_budget(gap + extra, DEFAULTS) >= required_budget(gap, DEFAULTS)


class TestConfigValidation:
    def test_schedule_must_be_nondecreasing(self):
        with pytest.raises(ValueError):
            StrategyConfig(schedule=(2, 1))

    def test_schedule_must_be_nonempty(self):
        with pytest.raises(ValueError):
            StrategyConfig(schedule=())

    def test_positive_money_fields(self):
        with pytest.raises(ValueError):
            StrategyConfig(ticket_price_cents=0)
        with pytest.raises(ValueError):
            StrategyConfig(quarter_days=-1)

    def test_ratio_rule_needs_a_ratio(self):
        with pytest.raises(ValueError):
            ExtensionRule(kind=ExtensionRule.fixed_ratio(2).kind)


class TestLedgerRendering:
    def test_dict_field_names(self):
        ledger = simulate_stream(479, DEFAULTS)
        document = ledger_to_dict(ledger)
        assert set(document["quarters"][0]) == {
            "quarter", "players", "spend_cents", "payout_cents", "net_cents", "cumulative_loss_cents",
        }
        assert document["outcome"] == "win"
        assert document["profit_cents"] == 360_000

    def test_text_table_carries_the_totals(self):
        lines = render_ledger(simulate_stream(479, DEFAULTS), title="stream")
        text = "\n".join(lines)
        assert "$2400.00" in text and "$6000.00" in text and "$3600.00" in text
