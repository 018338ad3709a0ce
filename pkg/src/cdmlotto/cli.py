"""Command-line front end: synthesize histories, predict, backtest, simulate.

Subcommands:

    synth      write a uniform-random draw history as CSV
    predict    fit each requested estimator on a history, print the next combination
    backtest   walk a history, score predictions, report hits, gaps and stretches
    simulate   replay the quarterly staking plan over hit gaps

Flag values may also come from a ``key=value`` config file (``--config``);
explicit flags win over file values, file values win over defaults, and
the effective configuration is echoed in JSON output.  Exit codes:
0 success, 1 model or runtime failure, 2 usage or validation problems.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .backtest import (
    ALTERNATION_NOTE,
    BacktestConfig,
    BacktestError,
    BacktestResult,
    classify_stretches,
    extrapolate_gaps,
    gap_stats,
    render_comparison,
    run_backtest,
    select_combination,
)
from .distributions import predictive_expectation
from .estimators import EstimationError, EstimatorConfig, EstimatorKind, estimate_alpha
from .ingest import (
    SYNTH_GENERATOR,
    DrawHistory,
    GameKind,
    GameSpec,
    HistoryParseError,
    HistoryValidationError,
    build_count_matrices,
    parse_history,
    serialize_history,
    slice_window,
    synthetic_history,
)
from .strategy import (
    AccountingMode,
    CapExceededError,
    ExtensionRule,
    StrategyConfig,
    StreamLedger,
    format_cents,
    ledger_to_dict,
    render_ledger,
    required_budget,
    simulate_stream,
    simulate_streams,
)

__all__ = ["main", "build_parser"]

_ESTIMATOR_TOKENS = {kind.value: kind for kind in EstimatorKind}  # mle, mm, md


class CliError(Exception):
    """Usage or validation problem surfaced with exit code 2."""


def _parse_window(text: str):
    if text.lower() == "all":
        return "all"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("window must be a positive integer or 'all'") from None
    if value < 1:
        raise argparse.ArgumentTypeError("window must be a positive integer or 'all'")
    return value


def _parse_game(text: str) -> str:
    if text not in ("set", "pick"):
        raise argparse.ArgumentTypeError("game must be 'set' or 'pick'")
    return text


def _parse_format(text: str) -> str:
    if text not in ("text", "json"):
        raise argparse.ArgumentTypeError("format must be 'text' or 'json'")
    return text


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _parse_extension(text: str) -> ExtensionRule:
    if text == "min-recover":
        return ExtensionRule.min_recover()
    if text.startswith("ratio:"):
        try:
            return ExtensionRule.fixed_ratio(text.partition(":")[2])
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"bad ratio in {text!r}") from None
    raise argparse.ArgumentTypeError("extension must be 'min-recover' or 'ratio:R'")


def _parse_accounting(text: str) -> AccountingMode:
    for mode in AccountingMode:
        if mode.value == text:
            return mode
    raise argparse.ArgumentTypeError("accounting must be 'paper' or 'exact'")


def _parse_money(text: str) -> int:
    try:
        cents = round(float(text) * 100)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a dollar amount, got {text!r}") from None
    if cents <= 0:
        raise argparse.ArgumentTypeError("dollar amounts must be positive")
    return int(cents)


# Same converters serve config-file values so both sources parse identically.
_FILE_PARSERS = {
    "game": _parse_game,
    "pool": int,
    "picks": int,
    "draws": int,
    "seed": int,
    "estimator": str,
    "smoothing": float,
    "window": _parse_window,
    "warmup": int,
    "threshold": int,
    "format": _parse_format,
    "input": str,
    "output": str,
    "gaps": _parse_int_list,
    "gaps_file": str,
    "hits": _parse_int_list,
    "hits_file": str,
    "no_win_horizon": int,
    "ticket_price": _parse_money,
    "payout": _parse_money,
    "quarter_days": int,
    "schedule": _parse_int_list,
    "extension": _parse_extension,
    "accounting": _parse_accounting,
}


def _load_config_file(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise CliError(f"config file not found: {path}") from None
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise CliError(f"{path}:{lineno}: expected key=value")
        out[key.strip().lower().replace("-", "_")] = value.strip()
    return out


def _effective(args: argparse.Namespace, defaults: dict) -> dict:
    """Merge CLI flags over config-file values over defaults.

    Keys in the file that this subcommand does not use are ignored so one
    file can serve several subcommands.
    """
    file_cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}
    merged = {}
    for key, default in defaults.items():
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            merged[key] = cli_value
        elif key in file_cfg:
            try:
                merged[key] = _FILE_PARSERS[key](file_cfg[key])
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise CliError(f"config value for {key!r}: {exc}") from None
        else:
            merged[key] = default
    return merged


def _game_spec(cfg: dict) -> GameSpec:
    game = cfg.get("game") or "set"
    if game == "set":
        if cfg.get("pool") is None or cfg.get("picks") is None:
            raise CliError("set games need --pool and --picks")
        return GameSpec(GameKind.SET_DRAW, cfg["pool"], cfg["picks"])
    if cfg.get("picks") is None:
        raise CliError("pick games need --picks")
    if cfg.get("pool") not in (None, 10):
        raise CliError("pick games draw from the 10 digits; --pool must be 10 or omitted")
    return GameSpec(GameKind.POSITIONAL_DIGITS, 10, cfg["picks"])


def _estimator_kinds(value, default: str) -> list[EstimatorKind]:
    if value is None:
        tokens = default.split(",")
    elif isinstance(value, str):
        tokens = value.replace(",", " ").split()
    else:  # appended list of flag values
        tokens = []
        for item in value:
            tokens.extend(item.replace(",", " ").split())
    kinds = []
    for token in tokens:
        if token not in _ESTIMATOR_TOKENS:
            raise CliError(f"unknown estimator {token!r}; choose from md, mm, mle")
        kinds.append(_ESTIMATOR_TOKENS[token])
    if not kinds:
        raise CliError("no estimator given")
    return kinds


def _window_arg(value) -> int | None:
    return None if value in (None, "all") else value


def _load_history(cfg: dict, spec: GameSpec) -> DrawHistory:
    if cfg.get("input") is not None:
        path = Path(cfg["input"])
        if not path.exists():
            raise CliError(f"input file not found: {path}")
        with open(path, encoding="utf-8") as handle:
            return parse_history(handle, spec)
    if cfg.get("draws") is not None:
        return synthetic_history(spec, cfg["draws"], cfg.get("seed") or 0)
    raise CliError("provide --input PATH, or --draws N with --seed for a synthetic history")


def _emit(text: str, cfg: dict) -> None:
    if cfg.get("output"):
        Path(cfg["output"]).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_dumps(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def _config_echo(cfg: dict, spec: GameSpec | None = None) -> dict:
    echo = {}
    for key, value in cfg.items():
        if isinstance(value, (ExtensionRule, AccountingMode)):
            continue  # re-added below in string form
        echo[key] = list(value) if isinstance(value, tuple) else value
    if "extension" in cfg:
        rule = cfg["extension"]
        echo["extension"] = rule.kind.value if rule.ratio is None else f"ratio:{rule.ratio}"
    if "accounting" in cfg:
        echo["accounting"] = cfg["accounting"].value
    if spec is not None:
        echo["game"] = spec.kind.value
        echo["pool"] = spec.categories
        echo["picks"] = spec.picks
    return echo


# ---------------------------------------------------------------------------
# synth


def cmd_synth(args: argparse.Namespace) -> int:
    cfg = _effective(args, {
        "game": None, "pool": None, "picks": None,
        "draws": None, "seed": 0, "format": "text", "output": None,
    })
    if cfg["draws"] is None:
        raise CliError("synth needs --draws")
    spec = _game_spec(cfg)
    history = synthetic_history(spec, cfg["draws"], cfg["seed"])
    csv_text = serialize_history(history)
    if not cfg["output"]:
        sys.stdout.write(csv_text)
        return 0
    Path(cfg["output"]).write_text(csv_text, encoding="utf-8")
    if cfg["format"] == "json":
        document = {
            "config": _config_echo(cfg, spec),
            "generator": SYNTH_GENERATOR,
            "rows": len(history.records),
        }
        sys.stdout.write(_json_dumps(document))
    else:
        print(
            f"wrote {len(history.records)} draws to {cfg['output']}"
            f" (generator={SYNTH_GENERATOR}, seed={cfg['seed']})"
        )
    return 0


# ---------------------------------------------------------------------------
# predict


def cmd_predict(args: argparse.Namespace) -> int:
    cfg = _effective(args, {
        "game": None, "pool": None, "picks": None, "input": None,
        "estimator": None, "smoothing": 0.0, "window": None,
        "format": "text", "output": None,
    })
    spec = _game_spec(cfg)
    history = _load_history(cfg, spec)
    if not history.records:
        raise CliError("history is empty")
    matrices = build_count_matrices(history)
    window = _window_arg(cfg["window"])
    n = len(history.records)
    if window is not None and window > n:
        raise CliError(f"window {window} exceeds the {n} available draws")
    windows = [slice_window(m, n, window) for m in matrices]
    per_matrix_picks = spec.picks if spec.kind is GameKind.SET_DRAW else 1

    kinds = _estimator_kinds(cfg["estimator"], default="md,mm")
    cfg["estimator"] = ",".join(kind.value for kind in kinds)
    predictions = []
    for kind in kinds:
        est = EstimatorConfig(kind, mle_smoothing=cfg["smoothing"])
        vectors = [
            predictive_expectation(estimate_alpha(w, est), w.col_sums, per_matrix_picks)
            for w in windows
        ]
        combo = select_combination(vectors[0] if spec.kind is GameKind.SET_DRAW else vectors, spec)
        predictions.append((kind, combo))

    if cfg["format"] == "json":
        document = {
            "config": _config_echo(cfg, spec),
            "predictions": [
                {
                    "estimator": kind.value,
                    "numbers": list(combo.numbers),
                    "scores": [[float(x) for x in vec] for vec in combo.scores],
                }
                for kind, combo in predictions
            ],
        }
        _emit(_json_dumps(document), cfg)
    else:
        lines = render_comparison([(kind.value, combo.numbers) for kind, combo in predictions])
        _emit("\n".join(lines) + "\n", cfg)
    return 0


# ---------------------------------------------------------------------------
# backtest


def _tier_gap_report(result: BacktestResult, picks: int) -> tuple[dict[int, float], dict[int, float]]:
    """Average gap per minimum match count, plus log-linear projections for
    the counts with too few hits to measure."""
    observed: dict[int, float] = {}
    missing: list[int] = []
    for tier in range(1, picks + 1):
        indices = [r.draw_index for r in result.records if r.match_count >= tier]
        stats = gap_stats(indices)
        if stats.average is not None:
            observed[tier] = stats.average
        else:
            missing.append(tier)
    projections: dict[int, float] = {}
    if len(observed) >= 2 and missing:
        projections = extrapolate_gaps(observed, missing)
    return observed, projections


def _backtest_text(result: BacktestResult, spec: GameSpec, cfg: dict) -> str:
    lines = []
    window = _window_arg(cfg["window"])
    lines.append(
        f"game: {spec.kind.value} (pool {spec.categories}, picks {spec.picks});"
        f" estimator {cfg['estimator']}; window {'all' if window is None else window};"
        f" warmup {result.warmup}; threshold {result.hit_threshold}"
    )
    lines.append(f"predicted draws: {len(result.records)}; hits: {result.hit_count}")
    for r in result.records:
        if r.match_count >= result.hit_threshold:
            lines.append(f"draw {r.draw_index} (matched {r.match_count}):")
            comparison = render_comparison([(cfg["estimator"], r.prediction)], r.actual)
            lines.extend("  " + line for line in comparison)
    lines.append("hit indices: " + (", ".join(str(i) for i in result.hit_indices) or "none"))
    lines.append("gaps: " + (", ".join(str(g) for g in result.gaps) or "none"))
    if result.average_gap is not None:
        lines.append(f"average gap: {result.average_gap:.3f} (rounded {round(result.average_gap)})")
        lines.append(f"max gap: {result.max_gap}")
    tiers = ", ".join(f"{k}: {v}" for k, v in sorted(result.tier_counts.items()))
    lines.append(f"match-count histogram: {tiers}")
    stretch = classify_stretches(result.gaps)
    if stretch.labels:
        lines.append(f"stretches (cutoff {stretch.cutoff}): {' '.join(stretch.labels)}")
    if stretch.alternation_fraction is not None:
        lines.append(f"alternation fraction: {stretch.alternation_fraction:.4f}")
        lines.append(f"note: {ALTERNATION_NOTE}")
    observed, projections = _tier_gap_report(result, spec.picks)
    if observed:
        lines.append("average gap by minimum match count:")
        for tier, gap in sorted(observed.items()):
            lines.append(f"  >={tier}: {gap:.1f} draws")
        for tier, gap in sorted(projections.items()):
            lines.append(f"  >={tier}: {gap:.1f} draws [PROJECTION]")
    return "\n".join(lines) + "\n"


def _hits_replay(cfg: dict) -> int:
    """Gap statistics for a precomputed hit-index list, no model walk."""
    if cfg.get("hits") is not None:
        indices = list(cfg["hits"])
    else:
        path = Path(cfg["hits_file"])
        if not path.exists():
            raise CliError(f"hits file not found: {path}")
        indices = _read_int_series(path)
    stats = gap_stats(indices)
    stretch = classify_stretches(stats.gaps)
    if cfg["format"] == "json":
        document = {
            "config": _config_echo(cfg),
            "hit_indices": indices,
            "gaps": list(stats.gaps),
            "average_gap": stats.average,
            "max_gap": stats.max_gap,
            "stretch": {
                "cutoff": stretch.cutoff,
                "labels": list(stretch.labels),
                "alternation_fraction": stretch.alternation_fraction,
                "note": ALTERNATION_NOTE,
            },
        }
        _emit(_json_dumps(document), cfg)
        return 0
    lines = ["hit indices: " + ", ".join(str(i) for i in indices)]
    lines.append("gaps: " + (", ".join(str(g) for g in stats.gaps) or "none"))
    if stats.average is not None:
        lines.append(f"average gap: {stats.average:.3f} (rounded {round(stats.average)})")
        lines.append(f"max gap: {stats.max_gap}")
    if stretch.labels:
        lines.append(f"stretches (cutoff {stretch.cutoff}): {' '.join(stretch.labels)}")
    if stretch.alternation_fraction is not None:
        lines.append(f"alternation fraction: {stretch.alternation_fraction:.4f}")
        lines.append(f"note: {ALTERNATION_NOTE}")
    _emit("\n".join(lines) + "\n", cfg)
    return 0


def cmd_backtest(args: argparse.Namespace) -> int:
    cfg = _effective(args, {
        "game": None, "pool": None, "picks": None, "input": None,
        "draws": None, "seed": 0, "estimator": None, "smoothing": 0.0,
        "window": None, "warmup": None, "threshold": None,
        "hits": None, "hits_file": None, "format": "text", "output": None,
    })
    if cfg["hits"] is not None or cfg["hits_file"] is not None:
        return _hits_replay(cfg)

    spec = _game_spec(cfg)
    history = _load_history(cfg, spec)
    kinds = _estimator_kinds(cfg["estimator"], default="mm")
    if len(kinds) != 1:
        raise CliError("backtest runs one estimator at a time; repeat the command per estimator")
    cfg["estimator"] = kinds[0].value
    config = BacktestConfig(
        estimator=EstimatorConfig(kinds[0], mle_smoothing=cfg["smoothing"]),
        window=_window_arg(cfg["window"]),
        warmup=cfg["warmup"],
        hit_threshold=cfg["threshold"],
    )
    result = run_backtest(history, config)

    if cfg["format"] == "json":
        stretch = classify_stretches(result.gaps)
        observed, projections = _tier_gap_report(result, spec.picks)
        document = {
            "config": _config_echo(cfg, spec),
            **result.to_dict(),
            "stretch": {
                "cutoff": stretch.cutoff,
                "labels": list(stretch.labels),
                "alternation_fraction": stretch.alternation_fraction,
                "note": ALTERNATION_NOTE,
            },
            "tier_average_gaps": {str(k): v for k, v in sorted(observed.items())},
            "projected_gaps": {str(k): v for k, v in sorted(projections.items())},
        }
        _emit(_json_dumps(document), cfg)
    else:
        _emit(_backtest_text(result, spec, cfg), cfg)
    return 0


# ---------------------------------------------------------------------------
# simulate


def _read_int_series(path: Path) -> list[int]:
    """Integers from a JSON document ({"gaps": [...]}, a bare list) or
    whitespace/comma-separated text."""
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        try:
            return [int(tok) for tok in text.replace(",", " ").split()]
        except ValueError:
            raise CliError(f"{path}: expected JSON or an integer list") from None
    if isinstance(data, dict):
        if "gaps" not in data:
            raise CliError(f"{path}: JSON document has no 'gaps' field")
        data = data["gaps"]
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise CliError(f"{path}: expected a list of integers")
    return data


def _strategy_config(cfg: dict) -> StrategyConfig:
    return StrategyConfig(
        ticket_price_cents=cfg["ticket_price"],
        payout_per_ticket_cents=cfg["payout"],
        quarter_days=cfg["quarter_days"],
        schedule=cfg["schedule"],
        extension=cfg["extension"],
        accounting=cfg["accounting"],
    )


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _effective(args, {
        "gaps": None, "gaps_file": None, "no_win_horizon": None,
        "ticket_price": 100, "payout": 50_000, "quarter_days": 60,
        "schedule": (1, 2, 5, 12), "extension": ExtensionRule.min_recover(),
        "accounting": AccountingMode.FULL_QUARTER,
        "format": "text", "output": None,
    })
    sources = [cfg["gaps"] is not None, cfg["gaps_file"] is not None, cfg["no_win_horizon"] is not None]
    if sum(sources) != 1:
        raise CliError("provide exactly one of --gaps, --gaps-file, --no-win-horizon")
    config = _strategy_config(cfg)

    if cfg["no_win_horizon"] is not None:
        ledger = simulate_stream(None, config, horizon_days=cfg["no_win_horizon"])
        streams: list[StreamLedger] = [ledger]
        gaps: list[int] = []
        totals = {
            "total_spend_cents": ledger.total_spend_cents,
            "total_payout_cents": ledger.total_payout_cents,
            "profit_cents": ledger.profit_cents,
            "max_drawdown_cents": ledger.drawdown_cents,
        }
    else:
        gaps = list(cfg["gaps"] if cfg["gaps"] is not None else _read_int_series(Path(cfg["gaps_file"])))
        summary = simulate_streams(gaps, config)
        streams = list(summary.streams)
        totals = {
            "total_spend_cents": summary.total_spend_cents,
            "total_payout_cents": summary.total_payout_cents,
            "profit_cents": summary.profit_cents,
            "max_drawdown_cents": summary.max_drawdown_cents,
        }

    budget = required_budget(max(gaps), config) if gaps else None

    if cfg["format"] == "json":
        document = {
            "config": _config_echo(cfg),
            "streams": [
                {**({"gap_draws": g} if g is not None else {}), **ledger_to_dict(ledger)}
                for g, ledger in zip(gaps or [None] * len(streams), streams)
            ],
            "aggregate": {**totals, "required_budget_cents": budget},
        }
        _emit(_json_dumps(document), cfg)
        return 0

    lines: list[str] = []
    for i, ledger in enumerate(streams):
        title = f"stream {i + 1}" + (f": gap {gaps[i]} draws" if gaps else ": no win")
        lines.extend(render_ledger(ledger, title))
        lines.append("")
    lines.append(
        f"aggregate: streams {len(streams)},"
        f" spend {format_cents(totals['total_spend_cents'])},"
        f" payout {format_cents(totals['total_payout_cents'])},"
        f" profit {format_cents(totals['profit_cents'])},"
        f" max drawdown {format_cents(totals['max_drawdown_cents'])}"
    )
    if budget is not None:
        lines.append(f"required budget for the longest gap ({max(gaps)} draws): {format_cents(budget)}")
    lines.append("note: each player plays one combination per draw; the 21-combination per-player cap is not binding")
    _emit("\n".join(lines) + "\n", cfg)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdmlotto",
        description="Dirichlet-multinomial draw prediction, backtesting, and staking simulation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key=value file supplying defaults for any flag")
        p.add_argument("--format", type=_parse_format, help="text or json (default text)")
        p.add_argument("--output", help="write the report to this path instead of stdout")

    def add_game(p: argparse.ArgumentParser) -> None:
        p.add_argument("--game", type=_parse_game, help="set or pick (default set)")
        p.add_argument("--pool", type=int, help="pool size for set games (pick games use the 10 digits)")
        p.add_argument("--picks", type=int, help="numbers per draw (set) or digit positions (pick)")

    p = sub.add_parser("synth", help="write a uniform-random history as CSV")
    add_common(p)
    add_game(p)
    p.add_argument("--draws", type=int, help="number of draws to generate")
    p.add_argument("--seed", type=int, help="generator seed (default 0)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("predict", help="print the next combination per estimator")
    add_common(p)
    add_game(p)
    p.add_argument("--input", help="draw-history CSV path")
    p.add_argument("--estimator", action="append",
                   help="md, mm or mle; repeat or comma-separate (default md,mm)")
    p.add_argument("--smoothing", type=float, help="additive smoothing for the mle estimator")
    p.add_argument("--window", type=_parse_window, help="fit on the last N draws, or 'all'")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("backtest", help="walk a history and report hits, gaps and stretches")
    add_common(p)
    add_game(p)
    p.add_argument("--input", help="draw-history CSV path")
    p.add_argument("--draws", type=int, help="generate a synthetic history of this many draws instead")
    p.add_argument("--seed", type=int, help="seed for the synthetic history (default 0)")
    p.add_argument("--estimator", action="append", help="md, mm or mle (default mm)")
    p.add_argument("--smoothing", type=float, help="additive smoothing for the mle estimator")
    p.add_argument("--window", type=_parse_window, help="fit on the last N draws, or 'all'")
    p.add_argument("--warmup", type=int, help="draws to observe before the first prediction")
    p.add_argument("--threshold", type=int, help="minimum match count that counts as a hit")
    p.add_argument("--hits", type=_parse_int_list,
                   help="skip the model walk and report gap statistics for these hit indices")
    p.add_argument("--hits-file", dest="hits_file", help="like --hits, read from a file")
    p.set_defaults(func=cmd_backtest)

    p = sub.add_parser("simulate", help="replay the quarterly staking plan over hit gaps")
    add_common(p)
    p.add_argument("--gaps", type=_parse_int_list, help="comma-separated draw gaps between hits")
    p.add_argument("--gaps-file", dest="gaps_file",
                   help="backtest JSON document (its 'gaps' field) or an integer list file")
    p.add_argument("--no-win-horizon", dest="no_win_horizon", type=int,
                   help="simulate a single stream that never wins for this many days")
    p.add_argument("--ticket-price", dest="ticket_price", type=_parse_money, help="dollars per ticket (default 1)")
    p.add_argument("--payout", type=_parse_money, help="dollars per winning ticket (default 500)")
    p.add_argument("--quarter-days", dest="quarter_days", type=int, help="days per quarter (default 60)")
    p.add_argument("--schedule", type=_parse_int_list, help="players per quarter (default 1,2,5,12)")
    p.add_argument("--extension", type=_parse_extension, help="min-recover or ratio:R (default min-recover)")
    p.add_argument("--accounting", type=_parse_accounting, help="paper or exact (default paper)")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EstimationError, BacktestError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (HistoryParseError, HistoryValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
