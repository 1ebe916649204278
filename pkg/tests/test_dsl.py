from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kleenewand import dsl
from kleenewand.finpar import FinObj, PartialMap
from kleenewand.lawlab.oracle import step_simulate
from strategies import disjoint_pair

GOLDEN = Path(__file__).parent / "golden"

WORKED = ("set X {s0 s1 s2}  set A {done}  map f : X->X {s0->s1 s1->s2}  "
          "map g : X->A {s2->done}  let loop = until g do f  eval loop at s0")


def outputs(text):
    return [r.output for r in dsl.run_text(text)]


def test_worked_program():
    p = dsl.parse(WORKED)
    assert (len(p.sets), len(p.maps), len(p.bindings), len(p.directives)) == (2, 2, 1, 1)
    assert outputs(WORKED) == ["done"]


def test_cyclic_variant_is_undefined():
    text = WORKED.replace("s1->s2}", "s1->s0}").replace("at s0", "at s1")
    assert outputs(text) == ["undefined"]


def test_restrict():
    assert outputs(WORKED + "\nlet r = restrict f\neval r at s0") == ["done", "s0"]


def test_whole_table_and_check():
    text = WORKED + "\neval loop\ncheck f disjoint g\ncheck f disjoint f"
    assert outputs(text) == ["done", "{ s0->done s1->done s2->done }", "disjoint",
                             "overlap at s0"]


def test_comments_and_layout_are_ignored():
    text = "# header\nset X {\n  a   # first\n  b\n}\nmap f : X -> X { a->b }\neval f at a\n"
    assert outputs(text) == ["b"]


def diag(text):
    with pytest.raises(dsl.FlowError) as exc:
        dsl.parse(text)
    return exc.value


def test_body_must_be_an_endomorphism():
    err = diag("set X {a}\nset Y {b}\nmap f : X -> Y {a->b}\nmap g : X -> Y {}\n"
               "let l = until g do f")
    assert isinstance(err, dsl.FlowTypeError)
    assert "body must be an endomorphism" in err.message
    assert (err.line, err.col) == (5, 20)
    assert err.format("p.flow").startswith("p.flow:5:20: type error:")


def test_unbalanced_braces():
    err = diag("set X {a b\nmap f : X -> X {a->b}")
    assert isinstance(err, dsl.FlowSyntaxError)
    assert (err.line, err.col) == (2, 7)
    assert "never closed" in err.message
    err = diag("set X {a}\nlet h = (id X")
    assert "')'" in err.message and err.line == 2


@pytest.mark.parametrize("text,kind,fragment", [
    ("eval f at a", dsl.FlowNameError, "undefined map 'f'"),
    ("set X {a}\neval X at a", dsl.FlowNameError, "is a set, not a map"),
    ("set X {a}\nset X {b}", dsl.FlowNameError, "declared twice"),
    ("set X {a a}", dsl.FlowNameError, "appears twice"),
    ("set X {a}\nmap f : X -> X {a->b}", dsl.FlowNameError, "'b' is not an element"),
    ("set X {a}\nmap f : X -> X {a->a a->a}", dsl.FlowTypeError, "two places"),
    ("set X {a}\nmap f : X -> Y {}", dsl.FlowNameError, "undefined set 'Y'"),
    ("set X {a}\nmap f : X -> X {}\neval f at z", dsl.FlowNameError, "not an element"),
    ("set until {a}", dsl.FlowSyntaxError, "keyword"),
    ("set X {a}\nlet h = ", dsl.FlowSyntaxError, "expected an expression"),
    ("set X {a} $", dsl.FlowSyntaxError, "unexpected character"),
    ("bogus", dsl.FlowSyntaxError, "expected 'set'"),
    ("set X {a}\nset Y {b}\nmap f : X -> Y {}\nlet s = star f", dsl.FlowTypeError,
     "star needs an endomorphism"),
    ("set X {a}\nset Y {b}\nmap f : X -> Y {}\nlet s = f ; f", dsl.FlowTypeError,
     "cannot compose"),
    ("set X {a}\nset Y {b}\nmap f : X -> Y {}\nlet s = f | id X", dsl.FlowTypeError,
     "parallel"),
    ("set X {a}\nset Y {b}\nmap f : X -> X {}\nmap g : Y -> Y {}\nlet s = until g do f",
     dsl.FlowTypeError, "one set"),
    ("set X {a}\nset Y {b}\nmap f : X -> X {}\nmap g : Y -> Y {}\ncheck f disjoint g",
     dsl.FlowTypeError, "one set"),
])
def test_static_diagnostics(text, kind, fragment):
    err = diag(text)
    assert isinstance(err, kind)
    assert fragment in err.message
    assert err.line >= 1 and err.col >= 1


def runtime_error(text):
    with pytest.raises(dsl.FlowRuntimeError) as exc:
        dsl.run_text(text)
    return exc.value


def test_join_overlap_names_the_element():
    err = runtime_error("set X {a b}\nmap f : X -> X {b->a}\nmap g : X -> X {b->b}\n"
                        "let h = f | g")
    assert "defined at b" in err.message and (err.line, err.col) == (4, 11)


def test_until_overlap_names_the_element():
    err = runtime_error(WORKED.replace("{s2->done}", "{s1->done}"))
    assert "both defined at s1" in err.message


def test_compl_needs_an_idempotent():
    err = runtime_error("set X {a b}\nmap f : X -> X {a->b}\nlet c = compl f")
    assert "sends a to b" in err.message
    assert outputs("set X {a b}\nmap f : X -> X {a->b}\nlet c = compl restrict f\neval c") \
        == ["{ b->b }"]


def test_precedence():
    e = dsl.parse_expr("until g do f ; h | star k ; id X")
    assert e == dsl.Join(dsl.Seq(dsl.Until(dsl.MapRef("f"), dsl.MapRef("g")), dsl.MapRef("h")),
                         dsl.Seq(dsl.Star(dsl.MapRef("k")), dsl.Id("X")))
    assert dsl.parse_expr("a ; b ; c") == dsl.Seq(dsl.Seq(dsl.MapRef("a"), dsl.MapRef("b")),
                                                  dsl.MapRef("c"))
    assert dsl.print_expr(dsl.parse_expr("a ; (b ; c)")) == "a ; (b ; c)"
    assert dsl.print_expr(dsl.parse_expr("((a))")) == "a"


GOLDEN_FILES = sorted(GOLDEN.glob("*.flow"))


def test_enough_golden_programs():
    names = {p.stem for p in GOLDEN_FILES}
    assert len(names) >= 6
    assert {"loop", "cycle", "star", "join"} <= names


@pytest.mark.parametrize("path", GOLDEN_FILES, ids=lambda p: p.stem)
def test_golden_output(path):
    expected = path.with_suffix(".out").read_text(encoding="utf-8")
    got = "".join(r.output + "\n" for r in dsl.run_text(path.read_text(encoding="utf-8")))
    assert got == expected


@pytest.mark.parametrize("path", GOLDEN_FILES, ids=lambda p: p.stem)
def test_golden_round_trip(path):
    program = dsl.parse(path.read_text(encoding="utf-8"))
    printed = dsl.print_program(program)
    assert dsl.parse(printed) == program
    assert dsl.print_program(dsl.parse(printed)) == printed


names = st.sampled_from(["f", "g", "h2", "x_y", "A'"])
sets = st.sampled_from(["X", "Y"])
exprs = st.recursive(
    names.map(dsl.MapRef) | st.builds(dsl.Zero, sets, sets) | sets.map(dsl.Id),
    lambda sub: st.one_of(
        st.builds(dsl.Seq, sub, sub),
        st.builds(dsl.Join, sub, sub),
        st.builds(dsl.Until, sub, names.map(dsl.MapRef)),
        st.builds(dsl.Star, sub),
        st.builds(dsl.Restrict, sub),
        st.builds(dsl.Complement, sub),
    ),
    max_leaves=12,
)


@given(exprs)
def test_expression_print_parse_round_trip(e):
    text = dsl.print_expr(e)
    assert dsl.parse_expr(text) == e
    assert dsl.print_expr(dsl.parse_expr(text)) == text


def program_for(f: PartialMap, g: PartialMap) -> str:
    xs = " ".join("x%d" % i for i in range(f.dom.size))
    as_ = " ".join("a%d" % i for i in range(g.cod.size))
    ft = " ".join("x%d->x%d" % kv for kv in f.pairs().items())
    gt = " ".join("x%d->a%d" % kv for kv in g.pairs().items())
    lines = ["set X { %s }" % xs, "set A { %s }" % as_,
             "map f : X -> X { %s }" % ft, "map g : X -> A { %s }" % gt,
             "let loop = until g do f"]
    lines += ["eval loop at x%d" % i for i in range(f.dom.size)]
    return "\n".join(lines)


@given(disjoint_pair(max_x=6, max_a=3))
def test_until_matches_step_simulation(fg):
    f, g = fg
    got = outputs(program_for(f, g))
    want = []
    for x in range(f.dom.size):
        v = step_simulate(f, g, x)
        want.append("undefined" if v is None else "a%d" % v)
    assert got == want


@given(st.lists(st.sampled_from(["set", "map", "let", "eval", "check", "X", "f", "{", "}",
                                 "->", ":", "=", ";", "|", "(", ")", "a", "until", "do",
                                 "star", "at", "disjoint", "zero", "id", "\n"]),
                max_size=30))
def test_every_input_yields_values_or_a_positioned_diagnostic(tokens):
    text = " ".join(tokens)
    try:
        results = dsl.run_text(text)
    except dsl.FlowError as err:
        assert err.line >= 1 and err.col >= 1
    else:
        assert all(isinstance(r.output, str) for r in results)


def test_labels_are_kept_on_objects():
    ev = dsl.Evaluator()
    list(ev.run(dsl.parse("set X {p q}\nmap f : X -> X {p->q}")))
    assert ev.maps["f"].dom == FinObj(2, ["p", "q"])
