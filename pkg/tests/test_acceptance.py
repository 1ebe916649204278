"""Acceptance criteria, each run at its stated size, case count and time limit.

Every test prints one ``ACCEPT`` line with its verdict and wall time, straight
to the terminal so the lines show up without ``-s``.
"""

import time
from pathlib import Path

from kleenewand import dsl
from kleenewand.lawlab import replay, run_law

GOLDEN = Path(__file__).parent / "golden"


def run_criterion(number, title, limit, checks, capsys):
    """Run ``checks`` (a callable returning failure strings) and print the verdict."""
    t0 = time.perf_counter()
    failures = list(checks())
    elapsed = time.perf_counter() - t0
    if elapsed >= limit:
        failures.append("took %.2fs, limit %ds" % (elapsed, limit))
    verdict = "PASS" if not failures else "FAIL"
    with capsys.disabled():
        print("\nACCEPT %2d %s  %-44s %6.2fs / %ds" % (number, verdict, title, elapsed, limit))
        for f in failures:
            print("    " + f)
    assert not failures, failures


def laws(ids, *, seed, cases, max_size=None, exhaustive=False, min_exhaustive=1):
    for law_id in ids:
        if exhaustive:
            rep = run_law(law_id, exhaustive=True)
            if not rep.passed:
                yield "%s exhaustive: %s" % (law_id, rep.counterexample["detail"])
            elif rep.cases < min_exhaustive:
                yield "%s exhaustive covered only %d cases" % (law_id, rep.cases)
        rep = run_law(law_id, seed=seed, cases=cases, max_size=max_size)
        if not rep.passed:
            yield "%s seeded: %s" % (law_id, rep.counterexample["detail"])
        elif rep.cases != cases:
            yield "%s ran %d of %d cases" % (law_id, rep.cases, cases)


def test_criterion_01_restriction(capsys):
    def checks():
        yield from laws(["R.1", "R.2", "R.3", "R.4"], seed=101, cases=1000, max_size=8,
                        exhaustive=True)
    run_criterion(1, "restriction axioms", 10, checks, capsys)


def test_criterion_02_interference(capsys):
    ids = ["⊥.0", "⊥.1", "⊥.2", "⊥.3", "⊥.4", "⊥.5", "𝒪⊥.validate"]

    def checks():
        yield from laws(ids, seed=102, cases=1000, max_size=6)
    run_criterion(2, "interference axioms, both relations", 10, checks, capsys)


def test_criterion_03_join(capsys):
    ids = ["⊔.1", "⊔.2", "⊔.3", "⊔.4", "⊔.member-restriction", "⊔.restriction",
           "⊔.composition", "⊔.member-perp"]

    def checks():
        yield from laws(ids, seed=103, cases=1000, max_size=6)
    run_criterion(3, "join laws and strongness", 10, checks, capsys)


def test_criterion_04_wand_oracle(capsys):
    # every disjoint pair at |X| = 3, |A| = 2 is (1 + 3 + 2)^3 = 216 pairs
    def checks():
        yield from laws(["⩚.oracle"], seed=104, cases=5000, max_size=6, exhaustive=True,
                        min_exhaustive=216)
    run_criterion(4, "wand agrees with step simulation", 30, checks, capsys)


def test_criterion_05_wand_axioms(capsys):
    ids = ["⩚.1", "⩚.2", "⩚.3", "⩚.4", "Alt.⩚.1", "Alt.⩚.2", "Alt.⩚.3",
           "⩚.guard-factor", "⩚.zero-body", "⩚.zero-guard", "⩚.guard-join",
           "⩚.total-body", "⩚.total-guard", "⩚.unroll", "⩚.uniform", "⩚.lax", "⩚.colax"]

    def checks():
        yield from laws(ids, seed=105, cases=1000, max_size=5)
    run_criterion(5, "wand axioms and derived identities", 60, checks, capsys)


def test_criterion_06_classical_and_star(capsys):
    ids = ["\\.1", "\\.2", "⋆.1", "⋆.2", "⋆.3", "⋆.roundtrip-wand", "⋆.roundtrip-star"]

    def checks():
        yield from laws(ids, seed=106, cases=1000, max_size=6, exhaustive=True)
    run_criterion(6, "relative complement, star, round trips", 20, checks, capsys)


def test_criterion_07_dj(capsys):
    ids = ["DJ.R.1", "DJ.R.2", "DJ.R.3", "DJ.R.4", "DJ.order",
           "DJ.⊥.0", "DJ.⊥.1", "DJ.⊥.2", "DJ.⊥.3", "DJ.⊥.4", "DJ.⊥.5",
           "DJ.⊔.1", "DJ.⊔.2", "DJ.⊔.3", "DJ.⊔.4", "DJ.embed", "DJ.canonical"]

    def checks():
        yield from laws(ids, seed=107, cases=300, max_size=4)
    run_criterion(7, "disjoint-join completion", 30, checks, capsys)


def test_criterion_08_mat(capsys):
    ids = ["MAT.R.1", "MAT.R.2", "MAT.R.3", "MAT.R.4", "D.1", "D.2", "d.1", "d.2",
           "dec.idempotent", "dec.inverse", "dec.separation-iso", "dec.nary-separation",
           "dec.unit", "MAT.perp-entrywise", "MAT.join-composite", "MAT.row-disjoint",
           "MAT.flat", "MAT.injections"]

    def checks():
        yield from laws(ids, seed=108, cases=300, max_size=4)
    run_criterion(8, "matrices and decisions", 60, checks, capsys)


def test_criterion_09_trace(capsys):
    ids = ["Trace.Tightening", "Trace.Sliding", "Trace.Vanishing", "Trace.Superposing",
           "Trace.Yanking", "Trace.Uniform", "Iter.Iteration", "Iter.Naturality",
           "Iter.Dinaturality", "Iter.Diagonal", "Iter.Uniform", "Trace.roundtrip-wand",
           "Trace.roundtrip-iter", "Trace.closed-form", "Trace.copairing", "Trace.feedback",
           "Trace.oracle"]

    def checks():
        yield from laws(ids, seed=109, cases=300, max_size=4)
    run_criterion(9, "trace and iteration", 120, checks, capsys)


def test_criterion_10_mutation_sensitivity(capsys):
    def checks():
        for law_id in ("⩚.1", "Trace.Yanking"):
            rep = run_law(law_id, seed=110, cases=1000, impl="guard-only")
            if rep.passed:
                yield "%s survived the guard-only wand" % law_id
                continue
            cex = rep.counterexample
            if law_id == "⩚.1" and not any(v is not None for v in cex["inputs"]["f"]["map"]["table"]):
                yield "⩚.1 counterexample has f = 0"
            if replay(rep) != cex["detail"]:
                yield "%s counterexample does not replay" % law_id
    run_criterion(10, "guard-only wand is caught", 10, checks, capsys)


def test_criterion_11_goldens(capsys):
    def checks():
        files = sorted(GOLDEN.glob("*.flow"))
        if len(files) < 6:
            yield "only %d golden programs" % len(files)
        for path in files:
            text = path.read_text(encoding="utf-8")
            got = "".join(r.output + "\n" for r in dsl.run_text(text))
            if got != path.with_suffix(".out").read_text(encoding="utf-8"):
                yield "%s: output differs" % path.name
            program = dsl.parse(text)
            if dsl.parse(dsl.print_program(program)) != program:
                yield "%s: print/parse round trip differs" % path.name
        first = {p.stem: p.with_suffix(".out").read_text().splitlines()[0] for p in files}
        if first.get("loop") != "done" or first.get("cycle") != "undefined":
            yield "the until examples do not give done / undefined"
    run_criterion(11, "flowchart golden programs", 5, checks, capsys)
