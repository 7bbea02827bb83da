"""qsurg command-line interface.

Subcommands map onto the library modules: code construction and metrics,
deformed-code builds with verification reports, preparation-circuit lemma
sweeps, teleported-measurement and surgery lemma checks, Monte Carlo
memory runs, logical-circuit scheduling/cost, and the full desk-scale
`ledger` that runs every check and emits one stable pass/fail row each.

All stochastic subcommands require an explicit seed, and a fixed
(config, seed) pair produces byte-identical artifacts.  The environment
variable QSURG_THREADS caps worker parallelism; this implementation is
sequential (one worker), which always satisfies the cap.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import numpy as np

from . import codes, frame, gf2, ltsp, protocol, sim, surgery, tableau
from . import compile as qcompile

_CODE_BUILDERS = {
    "rep3": lambda: codes.repetition(3),
    "rep5": lambda: codes.repetition(5),
    "hamming": codes.hamming_743,
    "steane": codes.steane,
    "surface3": lambda: codes.surface_code_via_hgp(3),
    "surface5": lambda: codes.surface_code_via_hgp(5),
}


def _write(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)


# ── individual subcommands ──────────────────────────────────────────────


def cmd_codes_build(args) -> int:
    builder = _CODE_BUILDERS.get(args.name)
    if builder is None:
        print(f"unknown code {args.name!r}; choose from "
              f"{sorted(_CODE_BUILDERS)}", file=sys.stderr)
        return 2
    code = builder()
    if isinstance(code, codes.ClassicalCode):
        path = codes.save_classical(code, args.out, name=args.name)
    else:
        path = codes.save_css(code, args.out, name=args.name)
    print(path)
    return 0


def cmd_distance(args) -> int:
    code = codes.load_manifest(args.manifest)
    res = codes.distance(code, budget=args.budget)
    if res.exact:
        print(f"d={res.d} exact")
    else:
        print(f"d>{res.floor} certified")
    return 0


def cmd_soundness(args) -> int:
    code = codes.load_manifest(args.manifest)
    s = codes.soundness(code)
    print("undefined" if s is None else f"{s.numerator}/{s.denominator}")
    return 0


def cmd_surgery_build(args) -> int:
    target = codes.load_manifest(args.target)
    r_code = codes.load_manifest(args.rcode)
    alpha = gf2.load_matrix(args.alpha)
    glue = surgery.build_glue(target, alpha)
    report = surgery.verify_glue(target, glue)
    dc = surgery.build_deformed(target, alpha, r_code, glue)
    lifted = surgery.verify_lifted_conditions(dc)
    surgery.measured_extraction(dc)
    os.makedirs(args.out, exist_ok=True)
    for name, m in (("hdx", dc.css.h_x), ("hdz", dc.css.h_z),
                    ("jdx", dc.css.j_x), ("jdz", dc.css.j_z),
                    ("h_g", glue.h_g), ("s", glue.s), ("t", glue.t),
                    ("r", glue.r), ("beta", glue.beta), ("alpha", glue.alpha)):
        gf2.save_matrix(os.path.join(args.out, f"{name}.txt"), m)
    codes.save_css(target, args.out, name="target")
    codes.save_classical(r_code, args.out, name="rcode")
    lines = [f"glue_report={';'.join(report) or 'ok'}",
             f"lifted_report={';'.join(lifted) or 'ok'}",
             f"n={dc.css.n}", f"k={dc.css.k}", f"d_floor={dc.css.d}"]
    _write(os.path.join(args.out, "report.txt"), "\n".join(lines) + "\n")
    print("\n".join(lines))
    return 0 if not report and not lifted else 1


def cmd_ltsp_verify(args) -> int:
    source = codes.load_manifest(args.source)
    f = codes.load_manifest(args.fcode)
    rows = []
    ok = True
    prep = ltsp.build_prep_circuit(source, f)
    res = tableau.run_tableau(prep.circuit, force_zero=True)
    noiseless = not res.outcomes.any()
    ok &= noiseless
    rows.append(("ltsp.noiseless", noiseless, "all-zero reference"))
    for j in range(f.k):
        spp = ltsp.sp_matrices(source, f, j)
        rz = ltsp.sweep_z_lemma(spp, max_weight=min(args.max_weight, 2))
        rows.append((f"lemma.ltsp.spX.copy{j}", rz.clean,
                     f"checked={rz.checked}"))
        rx = ltsp.sweep_x_lemma(spp, max_weight=min(args.max_weight, 1),
                                samples=args.samples, seed=args.seed + j)
        rows.append((f"lemma.ltsp.spZ.copy{j}", rx.clean,
                     f"checked={rx.checked} detected={rx.detected}"))
        ok &= rz.clean and rx.clean
    for key, good, detail in rows:
        print(f"{key}\t{'pass' if good else 'FAIL'}\t{detail}")
    return 0 if ok else 1


def cmd_protocol_check(args) -> int:
    target = codes.load_manifest(os.path.join(args.deformed, "target.manifest"))
    r_code = codes.load_manifest(os.path.join(args.deformed, "rcode.manifest"))
    alpha = gf2.load_matrix(os.path.join(args.deformed, "alpha.txt"))
    dc = surgery.build_deformed(target, alpha, r_code)
    rows, ok = _protocol_ledger(dc, target, args.max_weight, args.samples,
                                args.seed)
    for key, good, detail in rows:
        print(f"{key}\t{'pass' if good else 'FAIL'}\t{detail}")
        ok &= good
    return 0 if ok else 1


def _load_sim_spec(path: str) -> dict:
    spec = {}
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line and "=" in line:
                key, val = line.split("=", 1)
                spec[key] = val
    return spec


def cmd_sim_run(args) -> int:
    spec = _load_sim_spec(args.circuit)
    if spec.get("kind") != "surface_memory":
        print("circuit spec must set kind=surface_memory", file=sys.stderr)
        return 2
    d = int(spec["d"])
    exp = sim.build_memory_experiment(codes.surface_code_via_hgp(d))
    est = sim.logical_error_rate(exp, args.p, args.trials, args.seed)
    line = (f"{args.p:.10g}\t{est.trials}\t{est.failures}\t{est.rate:.10g}"
            f"\t{est.ci_low:.10g}\t{est.ci_high:.10g}")
    header = "p\ttrials\tfailures\testimate\tci_low\tci_high"
    text = header + "\n" + line + "\n"
    if args.out:
        _write(args.out, text)
    print(text, end="")
    return 0


def cmd_compile(args) -> int:
    with open(args.circuit, encoding="ascii") as fh:
        ops = qcompile.parse_circuit(fh.read())
    sched = qcompile.serialize(ops, args.k)
    bad = sched.validate(ops)
    sched_path, cost_path = args.out.split(",")
    lines = ["class\tkind\tblocks\tqubits"]
    for i, cls in enumerate(sched.classes):
        for op in cls:
            lines.append(f"{i}\t{op.kind}\t{','.join(op.blocks)}"
                         f"\t{','.join(map(str, op.qubits))}")
    _write(sched_path, "\n".join(lines) + "\n")
    cost_lines = ["class\tfamily\tnum\tbatches\tsum_bound"]
    for i, cls in enumerate(sched.classes):
        rep = qcompile.sublayer_cost(cls, k_r=args.k_r, k_f=args.k_f,
                                     d_s=args.d_s)
        for fam, n in sorted(rep.num.items()):
            cost_lines.append(f"{i}\t{fam}\t{n}\t{rep.batches[fam]}"
                              f"\t{float(rep.sum_bound):.10g}")
    _write(cost_path, "\n".join(cost_lines) + "\n")
    print(f"classes={sched.colors} valid={not bad}")
    return 0 if not bad else 1


# ── desk ledger ─────────────────────────────────────────────────────────


def _protocol_ledger(dc, target, max_weight, samples, seed):
    rows = []
    run = protocol.build_surgery_circuit(dc)
    rng = np.random.default_rng(seed)
    res = tableau.run_tableau(run.expanded.circuit, rng=rng)
    zero_ok = (not run.measured_bits(run.expanded, res.outcomes).any()
               and not run.detector_bits(run.expanded, res.outcomes).any())
    jx = target.j_x
    view = run.expanded
    locs = []
    n = target.n
    for copy in range(dc.k_r):
        locs += [view.col_locs["M1"][copy * n + i]
                 for i in np.nonzero(jx[0])[0]]
    res1 = tableau.run_tableau(view.circuit, rng=rng, x_errors=locs)
    ones_ok = bool(run.measured_bits(view, res1.outcomes).all())
    rows.append(("surgery.noiseless", zero_ok and ones_ok,
                 "outcomes +1 on |0>, -1 on |1>"))
    lay = run.layout
    czm = _sweep_residual_z(run, lay, max_weight, samples, seed)
    rows.append(("lemma.cs.residualZ", czm[0], czm[1]))
    cxm = _sweep_outcome_x(run, lay, max_weight, samples, seed + 1)
    rows.append(("lemma.cs.outcomeX", cxm[0], cxm[1]))
    return rows, zero_ok and ones_ok and czm[0] and cxm[0]


def _sweep_residual_z(run, lay, max_weight, samples, seed):
    mea = run.h_ls_x.shape[1] - lay.total
    checked = 0
    ok = True
    before_names = ("M1", "M2", "M3", "A1", "A2")
    if max_weight >= 1:
        for name in before_names:
            off = lay.offsets[name]
            for i in range(dict(lay.groups)[name]):
                e = lay.vector()
                e[off + i] = 1
                full = np.concatenate([e, np.zeros(mea, np.uint8)])
                if gf2.mul(run.h_ls_x, full).any():
                    continue
                res = protocol.surgery_residual_z(
                    run, e, np.zeros(run.n_mem, np.uint8))
                checked += 1
                ok &= res.status == "ok" and bool(res.bound_ok)
    rng = np.random.default_rng(seed)
    idx = [lay.offsets[nm] + i for nm in before_names
           for i in range(dict(lay.groups)[nm])]
    for _ in range(samples):
        e = lay.vector()
        for p in rng.choice(len(idx), size=2, replace=False):
            e[idx[p]] = 1
        full = np.concatenate([e, np.zeros(mea, np.uint8)])
        if gf2.mul(run.h_ls_x, full).any():
            continue
        res = protocol.surgery_residual_z(run, e, np.zeros(run.n_mem, np.uint8))
        checked += 1
        ok &= res.status == "ok" and bool(res.bound_ok)
    return ok, f"checked={checked}"


def _sweep_outcome_x(run, lay, max_weight, samples, seed):
    mea = run.h_ls_z.shape[1] - lay.total
    checked = 0
    correct = 0
    ok = True
    before_names = ("M1", "A1")
    if max_weight >= 1:
        for name in before_names:
            off = lay.offsets[name]
            for i in range(dict(lay.groups)[name]):
                e = lay.vector()
                e[off + i] = 1
                full = np.concatenate([e, np.zeros(mea, np.uint8)])
                if gf2.mul(run.h_ls_z, full).any():
                    continue
                res = protocol.surgery_outcome_x(run, e, lay.vector())
                checked += 1
                correct += res.outcome_correct
                ok &= res.outcome_correct and res.bound_ok
    rng = np.random.default_rng(seed)
    idx = [lay.offsets[nm] + i for nm in before_names
           for i in range(dict(lay.groups)[nm])]
    for _ in range(samples):
        e = lay.vector()
        for p in rng.choice(len(idx), size=2, replace=False):
            e[idx[p]] = 1
        full = np.concatenate([e, np.zeros(mea, np.uint8)])
        if gf2.mul(run.h_ls_z, full).any():
            continue
        res = protocol.surgery_outcome_x(run, e, lay.vector())
        checked += 1
        correct += res.outcome_correct
        ok &= res.outcome_correct and res.bound_ok
    rate = 1.0 if checked == 0 else correct / checked
    return ok and rate == 1.0, f"checked={checked} outcome_rate={rate:.6f}"


def run_desk_ledger(seed: int, out_dir: str, max_weight: int = 2,
                    samples: int = 10000, trials: int = 100000,
                    frames: int = 1000) -> list[tuple]:
    """Run every desk-scale check; returns (key, pass, detail) rows."""
    rows: list[tuple] = []

    def add(key, good, detail=""):
        rows.append((key, bool(good), detail))

    # 1. code suite
    suite = [codes.repetition(3), codes.repetition(5), codes.hamming_743(),
             codes.steane(), codes.surface_code_via_hgp(3)]
    want_d = (3, 5, 3, 3, 3)
    good = True
    for code, d in zip(suite, want_d):
        if isinstance(code, codes.ClassicalCode):
            good &= codes.validate_classical(code) == []
        else:
            good &= codes.validate_css(code) == []
        good &= codes.distance(code).d == d
    add("code.suite", good, "distances (3,5,3,3,3) exhaustively verified")

    # 2. soundness + preimage bound
    ham = codes.hamming_743()
    s = codes.soundness(ham)
    good = s == Fraction(7, 3)
    r, n = ham.h.shape
    for bits in range(1 << r):
        v = gf2._unpack(bits, r)
        u = gf2.solve_linear(ham.h, v, mode="min_weight")
        good &= u is not None and gf2.weight(u) <= Fraction(n, r) / s * gf2.weight(v)
    add("soundness.hamming", s == Fraction(7, 3), f"s={s}")
    add("lemma.ltc.preimage", good, "all 8 syndromes")

    # 3. deformed-code build
    target = codes.surface_code_via_hgp(3)
    r_code = codes.hamming_743()
    glue = surgery.build_glue(target, [[1]])
    add("lemma.pcs.glue", surgery.verify_glue(target, glue) == [])
    dc = surgery.build_deformed(target, [[1]], r_code, glue)
    add("lemma.pcs.lifted", surgery.verify_lifted_conditions(dc) == [])
    surgery.measured_extraction(dc)
    add("lemma.pcs.extraction", True, "identity bit-exact")
    budget = min(max_weight, min(target.d, r_code.d) - 1)
    cert = surgery.verify_distance_bound(dc, budget)
    add("lemma.pcs.distance", cert.ok, f"no logical error of weight<={budget}")

    # 4. preparation circuit
    f = codes.hamming_743()
    prep = ltsp.build_prep_circuit(target, f)
    res = tableau.run_tableau(prep.circuit, force_zero=True)
    noiseless = not res.outcomes.any()
    rs = ltsp.resource_state(target)
    rng = np.random.default_rng(seed)
    tres = tableau.run_tableau(prep.circuit, rng=rng)
    for j in range(prep.k_f):
        b, c = prep.copy_qubits(j)
        qubits = np.concatenate([b, c])
        for row in rs.h_rs_x:
            noiseless &= tableau.stabilizer_phase(
                tres.sim, qubits, row, np.zeros(2 * target.n)) == 0
        for row in rs.h_rs_z:
            noiseless &= tableau.stabilizer_phase(
                tres.sim, qubits, np.zeros(2 * target.n), row) == 0
    add("ltsp.noiseless", noiseless, "all copies exactly stabilized")
    spx_ok = spz_ok = True
    spx_n = spz_n = 0
    for j in range(f.k):
        spp = ltsp.sp_matrices(target, f, j)
        rz = ltsp.sweep_z_lemma(spp, max_weight=min(max_weight, 2))
        spx_ok &= rz.clean
        spx_n += rz.checked
        rx = ltsp.sweep_x_lemma(spp, max_weight=min(max_weight, 1),
                                samples=samples // 4, seed=seed + j)
        spz_ok &= rx.clean
        spz_n += rx.checked
    add("lemma.ltsp.spX", spx_ok, f"checked={spx_n}")
    add("lemma.ltsp.spZ", spz_ok, f"checked={spz_n}")

    # 5. teleported measurement
    tm = protocol.build_tele_measurement(target)
    eff_ok = True
    n_tot = tm.layout.total
    if max_weight >= 1:
        for p in range(n_tot):
            e = np.zeros(n_tot, np.uint8)
            e[p] = 1
            eff_ok &= protocol.effective_z_error(tm, e)[1]
            eff_ok &= protocol.effective_x_error(tm, e)[1]
    rng = np.random.default_rng(seed + 100)
    for _ in range(samples):
        w = int(rng.integers(1, 5))
        e = np.zeros(n_tot, np.uint8)
        e[rng.choice(n_tot, size=w, replace=False)] = 1
        eff_ok &= protocol.effective_z_error(tm, e)[1]
        eff_ok &= protocol.effective_x_error(tm, e)[1]
    add("lemma.tele.effZ", eff_ok, "weight-1 exhaustive + sampled")
    add("lemma.tele.effX", eff_ok, "weight-1 exhaustive + sampled")
    mis = 0
    for _ in range(frames):
        x_in = rng.integers(0, 2, size=target.n).astype(np.uint8)
        z_in = rng.integers(0, 2, size=target.n).astype(np.uint8)
        locs = tm.col_locs["A1"]
        fr = frame.run_frames(
            tm.circuit,
            x_locs=[locs[i] for i in np.nonzero(x_in)[0]],
            z_locs=[locs[i] for i in np.nonzero(z_in)[0]])
        if not np.array_equal(tm.derived_outcome(fr.outcome_flips),
                              gf2.mul(target.h_z, x_in)):
            mis += 1
        if not (np.array_equal(fr.x_on(tm.c_ids), x_in)
                and np.array_equal(fr.z_on(tm.c_ids), z_in)):
            mis += 1
    add("tele.projective_equiv", mis == 0, f"frames={frames} mismatches={mis}")

    # 6. surgery end to end
    prows, pok = _protocol_ledger(dc, target, max_weight, samples, seed + 200)
    rows.extend((k, g, d) for k, g, d in prows)

    # 7. Monte Carlo trend
    est = {}
    sim_lines = ["d\tp\ttrials\tfailures\testimate\tci_low\tci_high"]
    for d in (3, 5):
        exp = sim.build_memory_experiment(codes.surface_code_via_hgp(d))
        zero = sim.logical_error_rate(exp, 0.0, min(trials, 1000), seed)
        est[d] = sim.logical_error_rate(exp, 1e-3, trials, seed)
        add(f"sim.memory.d{d}.p0", zero.failures == 0, "exact zero")
        e = est[d]
        sim_lines.append(f"{d}\t0.001\t{e.trials}\t{e.failures}"
                         f"\t{e.rate:.10g}\t{e.ci_low:.10g}\t{e.ci_high:.10g}")
    trend = (est[5].rate < est[3].rate
             and est[5].ci_high < est[3].ci_low)
    add("sim.trend", trend,
        f"d3={est[3].rate:.6g} ({est[3].ci_low:.6g},{est[3].ci_high:.6g}) "
        f"d5={est[5].rate:.6g} ({est[5].ci_low:.6g},{est[5].ci_high:.6g})")

    # 8. scheduler
    rng = np.random.default_rng(seed + 300)
    sched_ok = True
    for _ in range(200):
        k = int(rng.integers(1, 7))
        blocks = int(rng.integers(2, 33))
        ops = _random_layer(rng, blocks, k)
        sched = qcompile.serialize(ops, k)
        sched_ok &= sched.validate(ops) == [] and sched.colors <= 2 * k - 1
    add("compile.schedule", sched_ok, "200 random layers")

    # 9. cost arithmetic + static tables
    rng = np.random.default_rng(seed + 400)
    cost_ok = True
    for _ in range(1000):
        numv = int(rng.integers(0, 5000))
        k_r = int(rng.integers(1, 9))
        k_f = int(rng.integers(1, 9))
        d_s = int(rng.integers(1, 6))
        cost_ok &= qcompile.batch(numv, k_r, k_f, d_s) <= \
            qcompile.batch_bound(numv, k_r, k_f, d_s)
    add("compile.batch", cost_ok, "1000-point grid")
    table_ok = (qcompile.decompose("MEA").measurements == ("Zj",)
                and qcompile.decompose("CNOT").measurements
                == ("Za*Z1", "Xb*X1", "Z1")
                and qcompile.decompose("T").consumes_t_magic
                and qcompile.decompose("S").uses_s_magic
                and qcompile.decompose("INIT").extra_resources == ("HM_X",))
    add("compile.tableIV", table_ok, "decomposition rows verbatim")
    rows_t = qcompile.overhead_exponents(1.5)
    add("compile.tableI",
        rows_t["this scheme"] == ("0", "1.5")
        and rows_t["DS"] == ("1", "1") and rows_t["LS (surface code)"] == ("2", "1"),
        "overhead exponent rows")

    if out_dir:
        lines = ["key\tstatus\tdetail"]
        lines += [f"{k}\t{'pass' if g else 'FAIL'}\t{d}" for k, g, d in rows]
        _write(os.path.join(out_dir, "ledger.tsv"), "\n".join(lines) + "\n")
        _write(os.path.join(out_dir, "sim_memory.tsv"),
               "\n".join(sim_lines) + "\n")
        for name, m in (("hdx", dc.css.h_x), ("hdz", dc.css.h_z),
                        ("jdx", dc.css.j_x), ("jdz", dc.css.j_z)):
            gf2.save_matrix(os.path.join(out_dir, f"deformed_{name}.txt"), m)
    return rows


def _random_layer(rng, n_blocks, k):
    free = [(f"b{b}", j) for b in range(n_blocks) for j in range(k)]
    order = rng.permutation(len(free))
    ops = []
    i = 0
    n_ops = int(rng.integers(1, max(2, n_blocks * k // 2)))
    while len(ops) < n_ops and i < len(free):
        kind = ["MEA", "H", "S", "T", "CNOT"][int(rng.integers(0, 5))]
        if kind == "CNOT" and i + 1 < len(free):
            b1, q1 = free[order[i]]
            b2, q2 = free[order[i + 1]]
            ops.append(qcompile.LogicalOp("CNOT", (b1, b2), (q1, q2)))
            i += 2
        else:
            b, q = free[order[i]]
            kind = kind if kind != "CNOT" else "MEA"
            ops.append(qcompile.LogicalOp(kind, (b,), (q,)))
            i += 1
    return ops


def cmd_ledger(args) -> int:
    if args.preset != "desk":
        print("only --preset desk is available", file=sys.stderr)
        return 2
    rows = run_desk_ledger(seed=args.seed, out_dir=args.out,
                           max_weight=args.max_weight, samples=args.samples,
                           trials=args.trials)
    ok = True
    for key, good, detail in rows:
        print(f"{key}\t{'pass' if good else 'FAIL'}\t{detail}")
        ok &= good
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="qsurg")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("codes", help="build example code manifests")
    csub = p.add_subparsers(dest="codes_cmd", required=True)
    pb = csub.add_parser("build")
    pb.add_argument("--name", required=True)
    pb.add_argument("--out", required=True)
    pb.set_defaults(func=cmd_codes_build)

    p = sub.add_parser("distance", help="exact or certified code distance")
    p.add_argument("--manifest", required=True)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("soundness", help="exact local-testability constant")
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=cmd_soundness)

    p = sub.add_parser("surgery", help="deformed-code construction")
    ssub = p.add_subparsers(dest="surgery_cmd", required=True)
    pb = ssub.add_parser("build")
    pb.add_argument("--target", required=True)
    pb.add_argument("--alpha", required=True)
    pb.add_argument("--rcode", required=True)
    pb.add_argument("--out", required=True)
    pb.set_defaults(func=cmd_surgery_build)

    p = sub.add_parser("ltsp", help="preparation-circuit verification")
    lsub = p.add_subparsers(dest="ltsp_cmd", required=True)
    pb = lsub.add_parser("verify")
    pb.add_argument("--source", required=True)
    pb.add_argument("--fcode", required=True)
    pb.add_argument("--max-weight", type=int, default=2)
    pb.add_argument("--samples", type=int, default=1000)
    pb.add_argument("--seed", type=int, required=True)
    pb.set_defaults(func=cmd_ltsp_verify)

    p = sub.add_parser("protocol", help="surgery lemma checks")
    psub = p.add_subparsers(dest="protocol_cmd", required=True)
    pb = psub.add_parser("check")
    pb.add_argument("--deformed", required=True)
    pb.add_argument("--max-weight", type=int, default=1)
    pb.add_argument("--samples", type=int, default=1000)
    pb.add_argument("--seed", type=int, required=True)
    pb.set_defaults(func=cmd_protocol_check)

    p = sub.add_parser("sim", help="Monte Carlo memory runs")
    msub = p.add_subparsers(dest="sim_cmd", required=True)
    pb = msub.add_parser("run")
    pb.add_argument("--circuit", required=True)
    pb.add_argument("--p", type=float, required=True)
    pb.add_argument("--trials", type=int, required=True)
    pb.add_argument("--seed", type=int, required=True)
    pb.add_argument("--out", default=None)
    pb.set_defaults(func=cmd_sim_run)

    p = sub.add_parser("compile", help="schedule and cost a logical circuit")
    p.add_argument("--circuit", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--k-r", type=int, default=4)
    p.add_argument("--k-f", type=int, default=4)
    p.add_argument("--d-s", type=int, default=3)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("ledger", help="run the full desk-scale check suite")
    p.add_argument("--preset", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--max-weight", type=int, default=2)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--trials", type=int, default=100000)
    p.set_defaults(func=cmd_ledger)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
