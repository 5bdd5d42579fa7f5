"""Command line front end: ``sepdef pi|verify|scan|radical|group``.

Exit codes: 0 when every check passes, 1 on usage or I/O errors, 2 when a
verification check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .errors import ParseError
from .pipeline import ScanOptions, parse_range, pi_report, rows_to_csv, run_verify, scan

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with 2, which means "check failed" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Settings:
    """Resolved options: flags over config file over environment over defaults."""

    s: int | None = None
    s_range: str | None = None
    variant: str | None = None
    samples: int = 3
    ext: int = 12
    seed: int = 0
    json: str | None = None
    csv: str | None = None
    parallel: int = 1
    force_default_variant: bool = False
    m: int | None = None
    verify: bool = False
    verify_cap: int = 12


_INT_KEYS = {"s", "samples", "ext", "seed", "parallel", "m", "verify_cap"}
_BOOL_KEYS = {"force_default_variant", "verify"}


def read_config(path: str) -> dict:
    """key = value lines; '#' starts a comment; quotes around values are optional."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, val = (p.strip() for p in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in Settings.__dataclass_fields__:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            val = val.strip("\"'")
            try:
                if key in _INT_KEYS:
                    out[key] = int(val)
                elif key in _BOOL_KEYS:
                    if val.lower() not in ("true", "false", "1", "0", "yes", "no"):
                        raise ValueError(val)
                    out[key] = val.lower() in ("true", "1", "yes")
                else:
                    out[key] = val
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {val!r}") from None
    return out


def resolve_settings(ns: argparse.Namespace) -> Settings:
    st = Settings()
    env_seed = os.environ.get("SEPDEF_SEED")
    if env_seed is not None:
        try:
            st.seed = int(env_seed)
        except ValueError:
            raise UsageError(f"SEPDEF_SEED must be an integer, got {env_seed!r}") from None
    if getattr(ns, "config", None):
        for k, v in read_config(ns.config).items():
            setattr(st, k, v)
    for k in Settings.__dataclass_fields__:
        v = getattr(ns, k, None)
        if v is not None and v is not False:
            setattr(st, k, v)
    return st


def _add_common(p: argparse.ArgumentParser, range_ok: bool = False) -> None:
    p.add_argument("--s", type=int, help="the parameter s >= 2")
    if range_ok:
        p.add_argument("--s-range", dest="s_range", help="inclusive range A..B")
    p.add_argument("--variant", choices=["default", "s5fix"])
    p.add_argument("--force-default-variant", action="store_true", default=None,
                   help="keep the default h at s = 5")
    p.add_argument("--config", help="key = value file mirroring the flags")
    p.add_argument("--json", help="write a JSON report here ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sepdef", description="Separable deformations of modular group algebras kG_s.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("pi", help="build π_s and check separability and reduction")
    _add_common(p)

    v = sub.add_parser("verify", help="run the full pipeline for one s")
    _add_common(v)
    v.add_argument("--samples", type=int)
    v.add_argument("--ext", type=int, help="degree of the sampling extension over the base field")
    v.add_argument("--seed", type=int)
    v.add_argument("--m", type=int, help="raise the minimal m")

    sc = sub.add_parser("scan", help="π checks (and optional verification) over a range of s")
    _add_common(sc, range_ok=True)
    sc.add_argument("--csv", help="write the CSV table here ('-' for stdout)")
    sc.add_argument("--parallel", type=int)
    sc.add_argument("--verify", action="store_true", default=None, help="also run verify for s <= verify-cap")
    sc.add_argument("--verify-cap", dest="verify_cap", type=int)
    sc.add_argument("--samples", type=int)
    sc.add_argument("--ext", type=int)
    sc.add_argument("--seed", type=int)

    r = sub.add_parser("radical", help="radical of an algebra given as a JSON table")
    r.add_argument("file")
    r.add_argument("--json", help="write a JSON report here ('-' for stdout)")

    g = sub.add_parser("group", help="the group G_s and its group algebra")
    g.add_argument("--s", type=int, required=True)
    g.add_argument("--check-iso", action="store_true", help="compare F_2G_s with the undeformed crossed product")
    g.add_argument("--json", help="write the group algebra F_2G_s as an algebra file")
    return ap


def _emit(path: str | None, text: str) -> None:
    if not path:
        return
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _need_s(st: Settings) -> int:
    if st.s is None:
        raise UsageError("--s is required")
    if st.s < 2:
        raise UsageError("s must be at least 2")
    return st.s


def _variant_error(st: Settings, s: int) -> None:
    if st.variant == "s5fix" and s != 5:
        raise UsageError("variant s5fix exists only for s = 5")


def cmd_pi(st: Settings) -> int:
    s = _need_s(st)
    _variant_error(st, s)
    rep = pi_report(s, st.variant, st.force_default_variant, with_eta=False)
    print(f"s = {s}  variant = {rep['variant']}")
    print(f"pi = {rep['pi']}")
    print(f"pi_degree = {rep['pi_degree']}")
    print(f"pi_separable = {str(rep['pi_separable']).lower()} ({rep['separability_method']})")
    if "gcd" in rep:
        print(f"gcd(pi, pi') = {rep['gcd']}")
    print(f"reduction_ok = {str(rep['reduction_ok']).lower()}")
    print(f"hh_identity_ok = {str(rep['hh_identity_ok']).lower()}")
    _emit(st.json, json.dumps({"schema": 1, **rep}, indent=2) + "\n")
    ok = rep["pi_separable"] and rep["reduction_ok"] and rep["hh_identity_ok"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(st: Settings) -> int:
    s = _need_s(st)
    _variant_error(st, s)
    if st.samples < 1 or st.ext < 1:
        raise UsageError("--samples and --ext must be positive")
    rep = run_verify(s, st.samples, st.ext, st.seed, st.variant, st.force_default_variant, st.m)
    for k, v in rep.to_dict().items():
        if k == "t0_samples":
            for smp in v:
                print(f"sample ext={smp['ext_degree']} t0={smp['t0']} radical_dim={smp['radical_dim']}")
            continue
        print(f"{k} = {str(v).lower() if isinstance(v, bool) else v}")
    _emit(st.json, rep.to_json())
    return EXIT_OK if rep.verdict == "pass" else EXIT_FAIL


def cmd_scan(st: Settings) -> int:
    if st.s_range:
        values = parse_range(st.s_range)
    elif st.s is not None:
        values = [st.s]
    else:
        values = parse_range("2..20")
    if values[0] < 2:
        raise UsageError("s must be at least 2")
    opts = ScanOptions(st.variant, st.force_default_variant, st.verify, st.verify_cap, st.samples, st.ext, st.seed)
    rows = scan(values, opts, max(1, st.parallel))
    text = rows_to_csv(rows)
    if st.csv:
        _emit(st.csv, text)
    if st.csv != "-":
        sys.stdout.write(text)
    _emit(st.json, json.dumps({"schema": 1, "rows": rows}, indent=2) + "\n")
    return EXIT_OK if all(r["status"] == "ok" for r in rows) else EXIT_FAIL


def cmd_radical(ns: argparse.Namespace) -> int:
    from .fda import algebra_from_json
    from .radical import component_count, radical_ff
    from .scalars import FiniteField

    with open(ns.file, encoding="utf-8") as fh:
        text = fh.read()
    A = algebra_from_json(text)
    if not isinstance(A.field, FiniteField):
        raise UsageError("radical computation needs a finite base field")
    rad = radical_ff(A)
    center_dim, comps = component_count(A, rad)
    rep = {
        "schema": 1,
        "field": A.field.name,
        "dim": A.dim,
        "radical_dim": rad.dim,
        "nilpotency_exponent": rad.nilpotency_exponent,
        "semisimple": rad.dim == 0,
        "center_dim_of_quotient": center_dim,
        "components": comps,
    }
    for k, v in rep.items():
        if k != "schema":
            print(f"{k} = {str(v).lower() if isinstance(v, bool) else v}")
    _emit(ns.json, json.dumps(rep, indent=2) + "\n")
    return EXIT_OK


def cmd_group(ns: argparse.Namespace) -> int:
    from .fda import algebra_to_json, group_algebra, group_Gs, iso_check_crossed_vs_group
    from .scalars import GF

    if ns.s < 2:
        raise UsageError("s must be at least 2")
    G = group_Gs(ns.s)
    print(f"G_{ns.s}: order {len(G.labels)} = 2*{ns.s * ns.s - 1}")
    if ns.json:
        _emit(ns.json, algebra_to_json(group_algebra(G, GF(2))))
    if ns.check_iso:
        ok = iso_check_crossed_vs_group(ns.s)
        print(f"iso_ok = {str(ok).lower()}")
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        if ns.command == "radical":
            return cmd_radical(ns)
        if ns.command == "group":
            return cmd_group(ns)
        st = resolve_settings(ns)
        return {"pi": cmd_pi, "verify": cmd_verify, "scan": cmd_scan}[ns.command](st)
    except ParseError as e:
        print(f"sepdef: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, OSError, ValueError) as e:
        print(f"sepdef: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
