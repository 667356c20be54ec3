"""Command line entry point.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 precision failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .ordinals import Ordinal

COMMANDS = ("build", "find-param", "analyze", "verify-claims", "feasibility", "section7")
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """'3', '1..5' or '1,2,4' -> list of ints."""
    text = str(text).strip()
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
            if hi < lo:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        if isinstance(e, UsageError):
            raise
        raise UsageError(f"cannot read range {text!r}") from None


def parse_ordinals(text: str) -> list[Ordinal]:
    if ".." in text or "," in text:
        return [Ordinal.of(k) for k in parse_range(text)]
    return [Ordinal.parse(text)]


@dataclass
class RunConfig:
    command: str
    alpha: list = field(default_factory=lambda: [Ordinal.of(1)])
    beta: list = field(default_factory=lambda: [Ordinal.of(1)])
    n: list = field(default_factory=lambda: [1])
    m: list = field(default_factory=lambda: [1])
    params: str | None = None
    prefix: str | None = None
    q: str | None = None
    length: int = 1_000_000
    D_max: int = 10
    cutoff_fraction: float = 0.5
    budget: int = 4
    iterations: int = 40
    out: str | None = None
    csv: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not 0 < self.cutoff_fraction < 1:
            raise UsageError("cutoff fraction must lie in (0, 1)")
        if self.command == "analyze" and self.length < 10_000 and self.prefix is None:
            raise UsageError("analyze needs length >= 10000")
        if self.D_max < 1 or self.budget < 1:
            raise UsageError("D_max and budget must be positive")


def _emit(cfg: RunConfig, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _params(cfg: RunConfig):
    from .forge import ConstructionParams
    if cfg.params:
        data = json.loads(Path(cfg.params).read_text())
        return ConstructionParams.from_dict(data)
    if len(cfg.alpha) != 1 or len(cfg.beta) != 1 or len(cfg.n) != 1 or len(cfg.m) != 1:
        raise UsageError("build needs a single (alpha, beta, n, m)")
    return ConstructionParams.for_tuple(cfg.alpha[0], cfg.beta[0], cfg.n[0], cfg.m[0],
                                        budget=cfg.budget)


def cmd_build(cfg: RunConfig) -> int:
    from .forge import build_prefix
    if not cfg.out:
        raise UsageError("build needs --out")
    p = _params(cfg)
    K = build_prefix(p, cfg.length)
    Path(cfg.out).write_text(K.prefix)
    Path(cfg.out + ".json").write_text(p.sidecar(cfg.length) + "\n")
    return EXIT_OK


def _read_prefix(path: str):
    from .words import SymbolStream
    return SymbolStream(Path(path).read_text().strip())


def cmd_find_param(cfg: RunConfig) -> int:
    from .tent import TentParam, find_parameter, kneading_prefix
    if cfg.prefix:
        K = _read_prefix(cfg.prefix)
    elif cfg.q:
        K = kneading_prefix(TentParam.parse(cfg.q), min(cfg.length, 64))
    else:
        raise UsageError("find-param needs --prefix or --q")
    br = find_parameter(K, cfg.iterations)
    rec = br.record()
    rec["prefix"] = K.prefix[:80]
    _emit(cfg, rec)
    return EXIT_OK


def _growth(K, cutoff, lo, hi, fn):
    from .language import cantor_growth_test
    counts = {d: len(fn(K, d, cutoff)) for d in range(lo, hi + 1)}
    if len(counts) < 6:
        return counts, "too_few_depths"
    return counts, cantor_growth_test(counts)


def cmd_analyze(cfg: RunConfig) -> int:
    from .analysis import counts_csv, cross_check_languages
    from .forge import ConstructionParams, build_prefix
    from .language import central_cylinders, omega_words
    if cfg.prefix:
        K = _read_prefix(cfg.prefix)
        side = Path(cfg.prefix + ".json")
        p = ConstructionParams.from_dict(json.loads(side.read_text())) if side.exists() else None
    else:
        p = _params(cfg)
        K = build_prefix(p, cfg.length)
    cutoff = int(len(K) * cfg.cutoff_fraction)
    hi = min(cfg.D_max, len(K) // 8)
    oc, ov = _growth(K, cutoff, 1, hi, omega_words)
    cc, cv = _growth(K, cutoff, 0, (hi - 1) // 2, central_cylinders)
    report = {"length": len(K), "cutoff": cutoff,
              "omega_counts": oc, "omega_growth": ov,
              "central_counts": cc, "central_growth": cv}
    ok = True
    if p is not None:
        rep = cross_check_languages(p, hi, K=K, cutoff=cutoff)
        report["cross_check"] = rep.to_dict()
        ok = rep.ok
    if cfg.csv:
        Path(cfg.csv).write_text(counts_csv(oc))
    _emit(cfg, report)
    return EXIT_OK if ok else EXIT_FAIL


def verify_tuple(alpha, beta, n, m, length, D_max, budget=4) -> dict:
    """All checks for one grid tuple; ``ok`` is their conjunction."""
    from .analysis import claimed_counts, cross_check_languages, projection_rank_check
    from .cb import space_signature
    from .forge import ConstructionParams, build_prefix, predicted_presentation
    from .words import is_admissible_kneading
    p = ConstructionParams.for_tuple(alpha, beta, n, m, budget=budget)
    K = build_prefix(p, length)
    om, ih = predicted_presentation(p)
    so, si = space_signature(om), space_signature(ih)
    adm = is_admissible_kneading(K, max_block=64)
    lang = cross_check_languages(p, D_max, K=K, presentations=(om, ih))
    proj = projection_rank_check(ih, om)
    counts = claimed_counts(p)
    a1, b1 = Ordinal.of(alpha).successor(), Ordinal.of(beta).successor()
    checks = {
        "admissible": bool(adm),
        "languages": lang.ok,
        "omega_signature": so.verdict == "countable" and so.gamma == a1 and so.count == n,
        "inhom_signature": si.verdict == "countable" and si.gamma == b1 and si.count == m,
        "claimed_counts": counts == (n, m),
        "projection": proj.ok,
    }
    return {"tuple": [str(alpha), str(beta), n, m],
            "words": {"U": p.U, "V": p.V, "W": p.W, "B": p.B, "A": p.A},
            "omega": str(so), "inhom": str(si), "checks": checks,
            "ok": all(checks.values())}


def cmd_verify_claims(cfg: RunConfig) -> int:
    from .forge import FeasibilityQuery, feasible
    rows, ok = [], True
    for a in cfg.alpha:
        for b in cfg.beta:
            for n in cfg.n:
                for m in cfg.m:
                    if a.is_zero or not feasible(FeasibilityQuery(a, b, n, m)):
                        rows.append({"tuple": [str(a), str(b), n, m], "status": "infeasible"})
                        continue
                    r = verify_tuple(a, b, n, m, cfg.length, cfg.D_max, cfg.budget)
                    r["status"] = "pass" if r["ok"] else "fail"
                    ok = ok and r["ok"]
                    rows.append(r)
    matrix = {}
    for r in rows:
        a, b, n, m = r["tuple"]
        matrix.setdefault(f"alpha={a},beta={b}", {}).setdefault(f"n={n}", {})[f"m={m}"] = r["status"]
    _emit(cfg, {"matrix": matrix, "rows": rows, "ok": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_feasibility(cfg: RunConfig) -> int:
    from .forge import FeasibilityQuery, infeasibility_reason
    rows = []
    for a in cfg.alpha:
        for b in cfg.beta:
            for n in cfg.n:
                for m in cfg.m:
                    why = infeasibility_reason(FeasibilityQuery(a, b, n, m))
                    rows.append({"alpha": str(a), "beta": str(b), "n": n, "m": m,
                                 "feasible": why is None, "reason": why})
    _emit(cfg, {"rows": rows})
    return EXIT_OK


def cmd_section7(cfg: RunConfig) -> int:
    from .analysis import counts_csv, cross_check_languages
    from .cb import space_signature
    from .forge import ConstructionParams, build_prefix, predicted_presentation
    from .language import central_cylinders, omega_words
    p = ConstructionParams.section7()
    K = build_prefix(p, cfg.length)
    cutoff = int(len(K) * cfg.cutoff_fraction)
    om, ih = predicted_presentation(p)
    so, si = space_signature(om), space_signature(ih)
    cc, cv = _growth(K, cutoff, 3, 12, central_cylinders)
    oc, ov = _growth(K, cutoff, 3, 12, omega_words)
    lang = cross_check_languages(p, cfg.D_max, K=K, cutoff=cutoff, presentations=(om, ih))
    checks = {"omega_signature": str(so) == "countable(2,1)",
              "inhom_cantor": si.verdict == "cantor_detected",
              "central_growth_exponential": cv == "exponential",
              "omega_growth_polynomial": ov == "polynomial",
              "languages": lang.ok}
    if cfg.csv:
        Path(cfg.csv).write_text(counts_csv(cc, "radius"))
    _emit(cfg, {"omega": str(so), "inhom": si.verdict, "central_growth": cv,
                "omega_growth": ov, "central_counts": cc, "omega_counts": oc,
                "checks": checks, "ok": all(checks.values()),
                "cross_check": lang.to_dict()})
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


HANDLERS = {"build": cmd_build, "find-param": cmd_find_param, "analyze": cmd_analyze,
            "verify-claims": cmd_verify_claims, "feasibility": cmd_feasibility,
            "section7": cmd_section7}


def run(cfg: RunConfig) -> int:
    from .tent import BracketFailure, PrecisionExhausted, RejectedInput
    from .forge import Infeasible
    try:
        return HANDLERS[cfg.command](cfg)
    except PrecisionExhausted as e:
        print(f"precision exhausted: {e}; raise --precision or shorten the prefix",
              file=sys.stderr)
        return EXIT_PRECISION
    except (UsageError, Infeasible, RejectedInput, BracketFailure) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: cannot read input: {e}", file=sys.stderr)
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kneading", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, length=1_000_000, grid="1", nm="1"):
        sp.add_argument("--alpha", default=grid)
        sp.add_argument("--beta", default=grid)
        sp.add_argument("--n", default=nm)
        sp.add_argument("--m", default=nm)
        sp.add_argument("--params", help="JSON sidecar with construction parameters")
        sp.add_argument("--length", type=int, default=length)
        sp.add_argument("--D-max", dest="D_max", type=int, default=10)
        sp.add_argument("--cutoff-fraction", type=float, default=0.5)
        sp.add_argument("--budget", type=int, default=4)
        sp.add_argument("--out")
        sp.add_argument("--csv")

    for name in COMMANDS:
        sp = sub.add_parser(name)
        if name == "verify-claims":
            common(sp, grid="1..3", nm="1..5")
        elif name == "feasibility":
            common(sp, grid="0..3", nm="1..6")
        elif name == "section7":
            common(sp, length=2_000_000)
        else:
            common(sp)
        if name in ("find-param", "analyze"):
            sp.add_argument("--prefix")
        if name == "find-param":
            sp.add_argument("--q")
            sp.add_argument("--iterations", type=int, default=40)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command, alpha=parse_ordinals(args.alpha),
            beta=parse_ordinals(args.beta), n=parse_range(args.n), m=parse_range(args.m),
            params=args.params, prefix=getattr(args, "prefix", None),
            q=getattr(args, "q", None), length=args.length, D_max=args.D_max,
            cutoff_fraction=args.cutoff_fraction, budget=args.budget,
            iterations=getattr(args, "iterations", 40), out=args.out, csv=args.csv)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
