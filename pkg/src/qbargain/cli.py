"""Command-line surface for the bargaining library.

Numerical subcommands are thin adapters over the library calls and print
exactly the values the library returns.  Exit codes: 0 success, 2 argument
or input-format error, 1 runtime failure.  File output is atomic (written
to a temporary sibling, renamed on success), so failures leave no partial
files behind.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import entangle, mcsim, pricing, rwgame, thermo


class UsageError(Exception):
    """Bad arguments or malformed input payloads; maps to exit code 2."""


def _fmt(x: float) -> str:
    # shortest representation that round-trips the double exactly
    return repr(float(x))


def _csv_text(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj) + "\n"


def _write_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    tmp = f"{out}.tmp{os.getpid()}"
    try:
        with open(tmp, "w") as handle:
            handle.write(text)
        os.replace(tmp, out)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_json_arg(flag: str, payload: str):
    try:
        return json.loads(payload)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON at position {exc.pos}: {exc.msg}") from None


def _parse_distribution(flag: str, payload: str) -> pricing.LogPriceDistribution:
    obj = _parse_json_arg(flag, payload)
    try:
        return pricing.distribution_from_spec(obj)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _check_p10(p10: float) -> float:
    if not 0.0 <= p10 <= 1.0:
        raise UsageError(f"--p10 must lie in [0, 1], got {p10!r}")
    return p10


# --- surface ---------------------------------------------------------------

def cmd_surface(args) -> int:
    if args.a_steps < 2 or args.p01_steps < 2:
        raise UsageError("--a-steps and --p01-steps must be at least 2")
    if not args.a_min < args.a_max:
        raise UsageError("--a-min must be below --a-max")
    rows = rwgame.profit_surface(args.a_min, args.a_max, args.a_steps, args.p01_steps)
    if args.format == "csv":
        text = _csv_text("a,p01,rho", rows)
    else:
        text = _json_text([[float(a), float(p), float(r)] for a, p, r in rows])
    _write_text(text, args.out)
    return 0


# --- optimize / fixed-point -------------------------------------------------

def cmd_optimize(args) -> int:
    a_star, rho_star = rwgame.maximize_profit(_check_p10(args.p10))
    _write_text(_json_text({"a_star": a_star, "rho_star": rho_star}), args.out)
    return 0


def cmd_fixed_point(args) -> int:
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    a_fix, iterations = rwgame.fixed_point(_check_p10(args.p10), tol=args.tol)
    _write_text(_json_text({"a_fix": a_fix, "iterations": iterations}), args.out)
    return 0


# --- simulate ----------------------------------------------------------------

def cmd_simulate(args) -> int:
    alice = _parse_distribution("--alice", args.alice)
    bob = _parse_distribution("--bob", args.bob)
    if args.rounds < 1:
        raise UsageError("--rounds must be at least 1")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    if args.theta <= 0:
        raise UsageError("--theta must be positive")
    if args.seed < 0 or args.seed >= 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    cfg = mcsim.SimConfig(pair=pricing.PricingPair(alice, bob), p10=_check_p10(args.p10),
                          rounds=args.rounds, seed=args.seed, theta=args.theta)
    report = mcsim.run_simulation(cfg, workers=args.workers)
    payload = mcsim.report_to_dict(report)

    analytic = isinstance(alice, pricing.Dirac) and isinstance(bob, pricing.Gaussian) \
        and bob.mean == 0.0 and bob.sigma == 1.0
    if analytic:
        params = rwgame.RWGameParams(a=alice.location, p10=cfg.p10, theta=cfg.theta)
        table = mcsim.compare_with_analytic(report, params)
        payload["analytic_comparison"] = mcsim.deviation_table_to_dict(table)
    _write_text(_json_text(payload), args.out)
    return 0


# --- dominance ----------------------------------------------------------------

def _parse_state(obj) -> np.ndarray:
    arr = np.asarray(obj, dtype=float)
    if arr.shape != (2, 2):
        raise UsageError("each state must be [[re0, im0], [re1, im1]]")
    return arr[:, 0] + 1j * arr[:, 1]


def _parse_basis(obj) -> entangle.Basis:
    if not (isinstance(obj, list) and len(obj) == 2):
        raise UsageError("each basis must be a [state, state] pair")
    try:
        return entangle.Basis(_parse_state(obj[0]), _parse_state(obj[1]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cycle_payload(states, report: entangle.CycleReport) -> dict:
    n = len(states)
    matrix = [[0] * n for _ in range(n)]
    outcomes = []
    for (i, j), result in sorted(report.outcomes.items()):
        outcomes.append([i, j, result.value])
        if result is entangle.Dominance.ALICE:
            matrix[i][j], matrix[j][i] = 1, -1
        elif result is entangle.Dominance.BOB:
            matrix[i][j], matrix[j][i] = -1, 1
    return {
        "n": n,
        "outcomes": outcomes,
        "matrix": matrix,
        "has_cycle": report.has_cycle,
        "cycle": list(report.cycle) if report.cycle is not None else None,
    }


def cmd_dominance(args) -> int:
    states_obj = _parse_json_arg("--states", args.states)
    bases_obj = _parse_json_arg("--bases", args.bases)
    if not isinstance(states_obj, list) or len(states_obj) < 3:
        raise UsageError("--states must be a JSON array of at least 3 states")
    states = [_parse_state(s) for s in states_obj]

    if np.asarray(bases_obj, dtype=object).ndim == 3:
        # a single [state, state] basis shared by every pair
        report = entangle.dominance_cycle(states, _parse_basis(bases_obj))
    else:
        if not isinstance(bases_obj, list):
            raise UsageError("--bases must be a basis or a JSON array of bases")
        bases = [_parse_basis(b) for b in bases_obj]
        pairs = [(i, j) for i in range(len(states)) for j in range(i + 1, len(states))]
        if len(bases) != len(pairs):
            raise UsageError(
                f"--bases needs one basis per unordered pair ({len(pairs)}), got {len(bases)}"
            )
        report = entangle.dominance_cycle(states, dict(zip(pairs, bases)))
    _write_text(_json_text(_cycle_payload(states, report)), args.out)
    return 0


def cmd_rps_demo(args) -> int:
    states, pair_bases = entangle.rps_witness()
    report = entangle.dominance_cycle(states, pair_bases)
    payload = _cycle_payload(states, report)
    payload["states"] = [[[s[0].real, s[0].imag], [s[1].real, s[1].imag]] for s in states]
    _write_text(_json_text(payload), args.out)
    return 0


# --- thermodynamics ------------------------------------------------------------

def cmd_entropy(args) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if not args.beta_min < args.beta_max:
        raise UsageError("--beta-min must be below --beta-max")
    betas = np.linspace(args.beta_min, args.beta_max, args.steps)
    rows = []
    for beta in betas:
        w_plus, w_minus = thermo.convex_weights(float(beta))
        rows.append((float(beta), thermo.shannon_entropy(float(beta)), w_plus, w_minus))
    _write_text(_csv_text("beta_s,entropy,w_plus,w_minus", rows), args.out)
    return 0


def _risk_params(args) -> thermo.RiskTempParams:
    try:
        return thermo.RiskTempParams(h_e=args.h_e, theta=args.theta, const=args.const)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_sigma_to_beta(args) -> int:
    params = _risk_params(args)
    if args.sigma <= 0:
        raise UsageError("--sigma must be positive")
    if params.const >= args.sigma**2:
        raise UsageError(
            "tanh-range violation: need const < sigma^2, got "
            f"const={params.const!r}, sigma^2={args.sigma**2!r}"
        )
    beta = thermo.risk_beta_from_sigma(args.sigma, params)
    _write_text(_json_text({"beta": beta}), args.out)
    return 0


def cmd_beta_to_sigma(args) -> int:
    params = _risk_params(args)
    if args.beta <= 0:
        raise UsageError("--beta must be positive")
    sigma = thermo.sigma_from_risk_beta(args.beta, params)
    _write_text(_json_text({"sigma": sigma}), args.out)
    return 0


# --- report (figures + delimited output) ---------------------------------------

def cmd_report(args) -> int:
    if args.a_steps < 2 or args.p01_steps < 2 or args.beta_steps < 2:
        raise UsageError("all step counts must be at least 2")
    os.makedirs(args.out_dir, exist_ok=True)

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # profit-intensity surface: CSV plus heat map
    rows = rwgame.profit_surface(args.a_min, args.a_max, args.a_steps, args.p01_steps)
    _write_text(_csv_text("a,p01,rho", rows),
                os.path.join(args.out_dir, "surface.csv"))
    a_vals = np.linspace(args.a_min, args.a_max, args.a_steps)
    p01_vals = np.linspace(0.0, 1.0, args.p01_steps)
    rho = rows[:, 2].reshape(args.a_steps, args.p01_steps)

    fig, ax = plt.subplots(figsize=(6.5, 5.0))
    mesh = ax.pcolormesh(a_vals, p01_vals, rho.T, shading="auto", cmap="RdBu_r",
                         vmin=-np.max(np.abs(rho)), vmax=np.max(np.abs(rho)))
    ax.contour(a_vals, p01_vals, rho.T, levels=[0.0], colors="k", linewidths=0.8)
    fig.colorbar(mesh, ax=ax, label="profit intensity rho (units of 1/theta)")
    ax.set_xlabel("withdrawal log-price a")
    ax.set_ylabel("probability p01 (market proposes)")
    ax.set_title("Alice profit intensity against the market")
    fig.savefig(os.path.join(args.out_dir, "surface.png"), dpi=args.dpi)
    plt.close(fig)

    # the two boundary strategies with their optima
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    a_fine = np.linspace(args.a_min, args.a_max, 801)
    for p10, label in ((1.0, "Alice proposes (p01 = 0)"), (0.0, "market proposes (p01 = 1)")):
        ax.plot(a_fine, rwgame.profit_intensity(a_fine, p10), label=label)
        a_star, rho_star = rwgame.maximize_profit(p10)
        ax.plot([a_star], [rho_star], "o", ms=4, color="k")
        ax.annotate(f"({a_star:.5f}, {rho_star:.5f})", (a_star, rho_star),
                    textcoords="offset points", xytext=(6, 4), fontsize=8)
    ax.axhline(0.0, color="0.6", lw=0.6)
    ax.set_xlabel("withdrawal log-price a")
    ax.set_ylabel("profit intensity rho")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(args.out_dir, "profit_intensity.png"), dpi=args.dpi)
    plt.close(fig)

    # entropy and convex weights: CSV plus curve
    betas = np.linspace(args.beta_min, args.beta_max, args.beta_steps)
    ent_rows = []
    for beta in betas:
        w_plus, w_minus = thermo.convex_weights(float(beta))
        ent_rows.append((float(beta), thermo.shannon_entropy(float(beta)), w_plus, w_minus))
    _write_text(_csv_text("beta_s,entropy,w_plus,w_minus", ent_rows),
                os.path.join(args.out_dir, "entropy.csv"))

    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    ent = np.array(ent_rows)
    ax.plot(ent[:, 0], ent[:, 1], label="Shannon entropy")
    ax.plot(ent[:, 0], ent[:, 2], "--", label="weight of P_r")
    ax.plot(ent[:, 0], ent[:, 3], "--", label="weight of P_-r")
    ax.axhline(math.log(2.0), color="0.6", lw=0.6)
    ax.set_xlabel("inverse spin temperature beta_s")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(args.out_dir, "entropy.png"), dpi=args.dpi)
    plt.close(fig)

    return 0


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbargain",
        description="Quantum bargaining analytics, simulation and reporting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")

    p = sub.add_parser("surface", help="profit-intensity grid over (a, p01)")
    p.add_argument("--a-min", type=float, default=-2.5)
    p.add_argument("--a-max", type=float, default=2.5)
    p.add_argument("--a-steps", type=int, default=101)
    p.add_argument("--p01-steps", type=int, default=51)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_out(p)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("optimize", help="maximize profit intensity over a")
    p.add_argument("--p10", type=float, required=True)
    add_out(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("fixed-point", help="iterate a <- rho(a, p10) to convergence")
    p.add_argument("--p10", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    add_out(p)
    p.set_defaults(func=cmd_fixed_point)

    p = sub.add_parser("simulate", help="Monte Carlo bargaining rounds")
    p.add_argument("--alice", required=True, help='distribution spec JSON, e.g. {"type":"dirac","a":0.85}')
    p.add_argument("--bob", required=True, help='distribution spec JSON, e.g. {"type":"gaussian","mean":0,"sigma":1}')
    p.add_argument("--p10", type=float, default=0.5)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)
    add_out(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("dominance", help="pairwise dominance and cycle detection")
    p.add_argument("--states", required=True, help="JSON array of states [[re0,im0],[re1,im1]]")
    p.add_argument("--bases", required=True,
                   help="one basis [state,state] or one per pair in (i,j) lexicographic order")
    add_out(p)
    p.set_defaults(func=cmd_dominance)

    p = sub.add_parser("rps-demo", help="built-in 120-degree non-transitivity witness")
    add_out(p)
    p.set_defaults(func=cmd_rps_demo)

    p = sub.add_parser("entropy", help="entropy and convex weights over a beta_s range")
    p.add_argument("--beta-min", type=float, required=True)
    p.add_argument("--beta-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    add_out(p)
    p.set_defaults(func=cmd_entropy)

    for name, func, extra in (
        ("sigma-to-beta", cmd_sigma_to_beta, ("--sigma",)),
        ("beta-to-sigma", cmd_beta_to_sigma, ("--beta",)),
    ):
        p = sub.add_parser(name, help="risk-temperature conversion")
        for flag in extra:
            p.add_argument(flag, type=float, required=True)
        p.add_argument("--h-e", type=float, required=True, dest="h_e")
        p.add_argument("--theta", type=float, required=True)
        p.add_argument("--const", type=float, required=True)
        add_out(p)
        p.set_defaults(func=func)

    p = sub.add_parser("report", help="render figures next to the delimited outputs")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--a-min", type=float, default=-2.5)
    p.add_argument("--a-max", type=float, default=2.5)
    p.add_argument("--a-steps", type=int, default=101)
    p.add_argument("--p01-steps", type=int, default=51)
    p.add_argument("--beta-min", type=float, default=-6.0)
    p.add_argument("--beta-max", type=float, default=6.0)
    p.add_argument("--beta-steps", type=int, default=241)
    p.add_argument("--dpi", type=int, default=150)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
