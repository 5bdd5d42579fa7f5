"""Acceptance criteria 1-9, each at its stated tolerance.

Every test appends one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line, shown in the pytest summary. Run ``python3 tests/test_acceptance.py`` to
print the lines without pytest.
"""

from __future__ import annotations

import itertools
import json
import random
import sys
import time

from oracles import bareiss_det, frobenius_kernel, rand_poly, row_space
from sepdef.cli import main as cli_main
from sepdef.deform_b import (
    build_eta,
    check_degree_and_reduction,
    check_eta_deforms,
    check_hh_identity,
    check_inverse_witness,
    check_pi_separable,
    make_spec,
    matrix_squares_to_identity,
)
from sepdef.engine_a import qt_valuations, synthesize_qt
from sepdef.fda import (
    AlgebraMap,
    crossed_product_C2,
    cyclic_group,
    dihedral_group,
    group_algebra,
    group_Gs,
    iso_check_crossed_vs_group,
    quaternion_group,
    random_commutative_algebra,
    specialize,
    symmetric_group_3,
)
from sepdef.pipeline import run_verify
from sepdef.radical import radical_ff
from sepdef.scalars import GF, rational_function_field
from sepdef.upoly import Poly, discriminant, gcd_monic, is_separable, resultant, sylvester_matrix

SCAN = range(2, 21)
F2 = GF(2)


def record(log, n: int, ok: bool, detail: str) -> None:
    log.append(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")


def test_criterion_1_separability_scan(acceptance_log):
    start = time.monotonic()
    bad = [s for s in SCAN if s != 5 and not check_pi_separable(s, "default")]
    five_default = check_pi_separable(5, "default")
    five_fix = check_pi_separable(5, "s5fix")
    elapsed = time.monotonic() - start
    ok = not bad and not five_default and five_fix and elapsed < 60
    record(acceptance_log, 1, ok, f"default separable for s=2..20 except 5 (failures {bad}), "
           f"s=5 default {five_default}, s=5 s5fix {five_fix}, {elapsed:.1f}s < 60s")
    assert ok


def test_criterion_2_degree_and_reduction(acceptance_log):
    bad = [s for s in SCAN if not check_degree_and_reduction(make_spec(s))]
    degs_ok = all(make_spec(s).pi.degree == s * s - 1 for s in SCAN)
    ok = not bad and degs_ok
    record(acceptance_log, 2, ok, f"deg pi = s^2-1 and pi mod t = x^(s^2-1)+1 for s=2..20 (failures {bad})")
    assert ok


def test_criterion_3_automorphism_suite(acceptance_log):
    failures = {}
    for s in SCAN:
        spec = make_spec(s)
        eta = build_eta(spec)
        checks = {
            "hh": check_hh_identity(spec),
            "M^2=I": eta.order2 and matrix_squares_to_identity(eta.map),
            "multiplicative": eta.well_defined,
            "deforms": check_eta_deforms(spec, eta),
            "inverse": check_inverse_witness(spec),
        }
        missing = [k for k, v in checks.items() if not v]
        if missing:
            failures[s] = missing
    ok = not failures
    record(acceptance_log, 3, ok, f"h(h(x)) identity, eta^2 = 1, multiplicativity, eta(x)-x^s = t x^2, "
           f"inverse witness for s=2..20 (failures {failures})")
    assert ok


def test_criterion_4_qt_contract(acceptance_log):
    details, ok = [], True
    for s in (2, 3, 4, 6, 7):
        spec = make_spec(s)
        B = spec.algebra()
        r = synthesize_qt(B, build_eta(spec))
        vals = qt_valuations(B, r)
        m_ok = r.m == 1 + max([c.n_e for c in r.components], default=0)
        good = r.qt_degree <= 1 and all(v >= 1 for v in vals) and m_ok
        ok = ok and good
        details.append(f"s={s} m={r.m}{'' if good else ' FAILED'}")
    record(acceptance_log, 4, ok, "q_t has y-degree <= 1, t-valuation >= 1, m = 1 + max n_e; " + ", ".join(details))
    assert ok


def test_criterion_5_end_to_end(acceptance_log):
    start = time.monotonic()
    details, ok = [], True
    for s in range(2, 7):
        rep = run_verify(s, samples=3, ext=12, seed=0)
        rads = [smp["radical_dim"] for smp in rep.t0_samples]
        nonzero_t0 = all(smp["t0"] not in ("0", "[0]") for smp in rep.t0_samples)
        good = (rep.crossed_dim == 2 * (s * s - 1) and len(rads) == 3 and rads == [0, 0, 0]
                and all(smp["ext_degree"] == 12 for smp in rep.t0_samples) and nonzero_t0
                and rep.t0_zero_radical_dim >= 1)
        ok = ok and good
        details.append(f"s={s} dim={rep.crossed_dim} rad@t0={rads} rad@0={rep.t0_zero_radical_dim}")
    elapsed = time.monotonic() - start
    ok = ok and elapsed < 300
    record(acceptance_log, 5, ok, "; ".join(details) + f"; {elapsed:.1f}s < 300s")
    assert ok


def _undeformed_crossed_product(n: int, s: int):
    B0 = group_algebra(cyclic_group(n), F2)
    eta0 = AlgebraMap(B0, B0, [B0.basis((s * i) % n) for i in range(n)])
    return crossed_product_C2(B0, eta0, B0.one, B0.zero())


def test_criterion_6_special_fiber(acceptance_log):
    details, ok = [], True
    for s in (2, 3):
        spec = make_spec(s)
        B = spec.algebra()
        eta = build_eta(spec)
        r = synthesize_qt(B, eta)
        X0 = specialize(crossed_product_C2(B, eta.map, r.c0, r.c1), 0, F2)
        same = X0.table == _undeformed_crossed_product(B.dim, s).table
        iso = iso_check_crossed_vs_group(s)
        ok = ok and same and iso
        details.append(f"s={s} constants equal {same}, iso to F_2G_s {iso}")
    record(acceptance_log, 6, ok, "; ".join(details))
    assert ok


MASCHKE_GROUPS = [cyclic_group(n) for n in range(1, 9)] + [
    symmetric_group_3(), dihedral_group(4), quaternion_group(), group_Gs(2), group_Gs(3)]


def test_criterion_7_radical_oracles(acceptance_log):
    problems = []
    for F in (GF(2), GF(2, 2)):
        rng = random.Random(7)
        for i in range(50):
            A = random_commutative_algebra(F, 8, rng)
            assert A.dim <= 8
            if row_space(F, radical_ff(A).vectors()) != row_space(F, frobenius_kernel(A)):
                problems.append(f"random {F} #{i}")
    for G in MASCHKE_GROUPS:
        for p in (2, 3, 5):
            semisimple = radical_ff(group_algebra(G, GF(p))).dim == 0
            if semisimple != (len(G.labels) % p != 0):
                problems.append(f"Maschke {G.name} p={p}")
    if radical_ff(group_algebra(symmetric_group_3(), F2)).dim != 1:
        problems.append("F2S3")
    for p in (2, 3, 5, 7):
        if radical_ff(group_algebra(cyclic_group(p), GF(p))).dim != p - 1:
            problems.append(f"F{p}C{p}")
    ok = not problems
    record(acceptance_log, 7, ok, f"Frobenius kernel on 2x50 random algebras, Maschke on "
           f"{len(MASCHKE_GROUPS)}x3 group algebras, rad F2S3 = 1, rad FpCp = p-1 (problems {problems})")
    assert ok


def _field_axioms(K, rng) -> bool:
    a, b, c = (K.random_element(rng) for _ in range(3))
    add, mul = K.add, K.mul
    ok = add(a, b) == add(b, a) and mul(a, b) == mul(b, a)
    ok = ok and add(add(a, b), c) == add(a, add(b, c)) and mul(mul(a, b), c) == mul(a, mul(b, c))
    ok = ok and mul(a, add(b, c)) == add(mul(a, b), mul(a, c)) and add(a, K.neg(a)) == K.zero
    ok = ok and mul(a, K.one) == a and add(a, K.zero) == a
    return ok and (K.is_zero(a) or mul(a, K.inv(a)) == K.one)


def _poly_contracts(K, rng) -> bool:
    f, g, h = rand_poly(K, rng, 6), rand_poly(K, rng, 5), rand_poly(K, rng, 3)
    ok = True
    if not g.is_zero():
        q, r = f.divrem(g)
        ok = ok and q * g + r == f and r.degree < g.degree
    d = gcd_monic(f, g)
    if d.is_zero():
        ok = ok and f.is_zero() and g.is_zero()
    else:
        ok = ok and d.lc == K.one and (f % d).is_zero() and (g % d).is_zero()
    ok = ok and f.compose(g).compose(h) == f.compose(g.compose(h))
    a = K.random_element(rng)
    return ok and f.compose(g)(a) == f(g(a))


def test_criterion_8_property_suites(acceptance_log):
    start = time.monotonic()
    fields = [GF(2), GF(3), GF(5), GF(2, 2), GF(2, 3), GF(3, 2), rational_function_field(F2)]
    problems = []
    for K in fields:
        rng = random.Random(8)
        if not all(_field_axioms(K, rng) for _ in range(200)):
            problems.append(f"axioms {K}")
    for K in (GF(2), GF(3), rational_function_field(F2)):
        rng = random.Random(88)
        if not all(_poly_contracts(K, rng) for _ in range(200)):
            problems.append(f"poly {K}")
    for K in (GF(2), GF(5), GF(2, 3)):
        rng = random.Random(888)
        for _ in range(100):
            f, g = rand_poly(K, rng, 6), rand_poly(K, rng, 6)
            if f.degree >= 1 and g.degree >= 1 and resultant(f, g) != bareiss_det(K, sylvester_matrix(f, g)):
                problems.append(f"sylvester {K}")
                break
    for d in range(1, 5):
        for low in itertools.product([0, 1], repeat=d):
            f = Poly(F2, list(low) + [1])
            if (discriminant(f) == 0) != (not is_separable(f)):
                problems.append(f"disc {f}")
    elapsed = time.monotonic() - start
    ok = not problems and elapsed < 30
    record(acceptance_log, 8, ok, f"field axioms 200/field on {len(fields)} fields, 200 divrem/gcd/compose "
           f"pairs on 3 domains, resultant = Sylvester det (deg <= 6), disc over F_2 deg <= 4 "
           f"(problems {problems}), {elapsed:.1f}s < 30s")
    assert ok


def test_criterion_9_determinism(acceptance_log, tmp_path, capsys):
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.json"
        assert cli_main(["verify", "--s", "4", "--seed", "7", "--json", str(path)]) == 0
        outs.append(path.read_bytes())
    capsys.readouterr()
    same = outs[0] == outs[1]
    ok = same and json.loads(outs[0])["seed"] == 7
    record(acceptance_log, 9, ok, f"two runs of verify --s 4 --seed 7 give byte-identical JSON ({len(outs[0])} bytes)")
    assert ok


if __name__ == "__main__":
    import contextlib
    import io
    import tempfile
    from pathlib import Path

    class _Capsys:
        def readouterr(self):
            return None

    lines: list[str] = []
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    with tempfile.TemporaryDirectory() as tmp:
        for fn in sorted(tests, key=lambda f: int(f.__name__.split("_")[2])):
            try:
                if fn is test_criterion_9_determinism:
                    with contextlib.redirect_stdout(io.StringIO()):
                        fn(lines, Path(tmp), _Capsys())
                else:
                    fn(lines)
            except AssertionError:
                pass
            print(lines[-1], flush=True)
    sys.exit(0 if all(line.startswith("PASS") for line in lines) else 1)
